#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"
#include "unirec/matrix.hpp"
#include "unirec/recursive.hpp"
#include "unirec/symmetric.hpp"

// JSON file formats. Keys are written in a fixed order and numbers in
// shortest round-trip form, so equal values always serialise to equal bytes.
// Indices inside reports are 1-based matrix-element labels.

namespace unirec::io {

using Json = nlohmann::ordered_json;

/// Malformed input document; the message names the offending field.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Parses text, reporting syntax errors with their position.
Json parse(std::string_view text);

// {"n": int, "entries": [[re, im], …]} row-major
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
/// One row per line, "re,im" pairs separated by commas.
std::string to_csv(const ComplexMatrix& m);

// {"n", "order", "factors": [{"k", "theta", "char"}], "alpha", "beta"}
Json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

// {"n", "thetas", "chars", "half_angle"}
Json to_json(const SymmetricParams& p);
SymmetricParams symmetric_params_from_json(const Json& j);

Json to_json(const PlaquetteTable& t);
Json to_json(const PanelLattice& p);
Json to_json(const std::vector<UnitarityPolygon>& polys);
Json to_json(const OmegaSet& w);
Json to_json(const BasisSolveResult& r);
Json to_json(const ZeroTextureReport& r);

}  // namespace unirec::io
