#include "unirec/json_io.hpp"

#include <cmath>
#include <sstream>

namespace unirec::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) {
        throw FormatError(where + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw FormatError(where + ": missing field \"" + key + "\"");
    }
    return *it;
}

double finite_number(const Json& j, const std::string& where) {
    if (!j.is_number()) {
        throw FormatError(where + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw FormatError(where + ": number is not finite");
    }
    return v;
}

std::size_t positive_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) {
        throw FormatError(where + ": expected a positive integer");
    }
    return j.get<std::size_t>();
}

Json complex_pair(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) {
        throw FormatError(where + ": expected [re, im]");
    }
    return {finite_number(j[0], where + "[0]"), finite_number(j[1], where + "[1]")};
}

std::vector<double> number_array(const Json& j, const std::string& where) {
    if (!j.is_array()) {
        throw FormatError(where + ": expected an array");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(finite_number(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json pair_label(IndexPair p) { return Json::array({p.first + 1, p.second + 1}); }

const char* order_name(FactorOrder o) {
    switch (o) {
        case FactorOrder::Ascending: return "ascending";
        case FactorOrder::Descending: return "descending";
        case FactorOrder::Custom: return "custom";
    }
    return "custom";
}

// Error types from the library carry their own message; rewrap as format errors.
template <typename F>
auto as_format_error(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(where + ": " + e.what());
    }
}

Json polygon_json(const UnitarityPolygon& p) {
    Json j;
    j["kind"] = p.kind == UnitarityPolygon::Kind::Row ? "row" : "column";
    j["pair"] = pair_label(p.pair);
    j["sides"] = p.sides;
    j["area"] = p.area;
    return j;
}

}  // namespace

Json parse(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

Json to_json(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw ShapeError("matrix JSON holds square matrices only");
    }
    Json j;
    j["n"] = m.rows();
    Json entries = Json::array();
    for (const auto& z : m.entries()) {
        entries.push_back(complex_pair(z));
    }
    j["entries"] = std::move(entries);
    return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
    const std::size_t n = positive_int(field(j, "n", "matrix"), "matrix.n");
    const Json& entries = field(j, "entries", "matrix");
    if (!entries.is_array() || entries.size() != n * n) {
        throw FormatError("matrix.entries: expected " + std::to_string(n * n) + " entries, got " +
                          (entries.is_array() ? std::to_string(entries.size()) : std::string("non-array")));
    }
    std::vector<Complex> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        values.push_back(complex_from(entries[i], "matrix.entries[" + std::to_string(i) + "]"));
    }
    return ComplexMatrix(n, n, std::move(values));
}

std::string to_csv(const ComplexMatrix& m) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t jj = 0; jj < m.cols(); ++jj) {
            os << (jj ? "," : "") << m(i, jj).real() << "," << m(i, jj).imag();
        }
        os << "\n";
    }
    return os.str();
}

Json to_json(const Decomposition& d) {
    d.validate();
    Json j;
    j["n"] = d.ambient_n;
    j["order"] = order_name(d.order());
    Json factors = Json::array();
    for (const auto& f : d.factors) {
        Json fj;
        fj["k"] = f.order;
        fj["theta"] = f.theta;
        Json chr = Json::array();
        for (const auto& z : f.chr.components()) {
            chr.push_back(complex_pair(z));
        }
        fj["char"] = std::move(chr);
        factors.push_back(std::move(fj));
    }
    j["factors"] = std::move(factors);
    j["alpha"] = d.left_phases.values();
    j["beta"] = d.right_phases.values();
    return j;
}

Decomposition decomposition_from_json(const Json& j) {
    Decomposition d;
    d.ambient_n = positive_int(field(j, "n", "decomposition"), "decomposition.n");
    const Json& order = field(j, "order", "decomposition");
    if (!order.is_string()) {
        throw FormatError("decomposition.order: expected a string");
    }
    const Json& factors = field(j, "factors", "decomposition");
    if (!factors.is_array()) {
        throw FormatError("decomposition.factors: expected an array");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::string where = "decomposition.factors[" + std::to_string(i) + "]";
        const Json& fj = factors[i];
        Factor f;
        f.ambient_n = d.ambient_n;
        f.order = positive_int(field(fj, "k", where), where + ".k");
        f.theta = finite_number(field(fj, "theta", where), where + ".theta");
        const Json& chr = field(fj, "char", where);
        if (!chr.is_array()) {
            throw FormatError(where + ".char: expected an array");
        }
        std::vector<Complex> comps;
        for (std::size_t c = 0; c < chr.size(); ++c) {
            comps.push_back(complex_from(chr[c], where + ".char[" + std::to_string(c) + "]"));
        }
        f.chr = as_format_error(where + ".char", [&] { return CharVector(std::move(comps)); });
        d.factors.push_back(std::move(f));
    }
    d.left_phases = PhaseVector(number_array(field(j, "alpha", "decomposition"), "decomposition.alpha"));
    d.right_phases = PhaseVector(number_array(field(j, "beta", "decomposition"), "decomposition.beta"));
    as_format_error("decomposition", [&] {
        d.validate();
        return 0;
    });

    const std::string declared = order.get<std::string>();
    if (declared != "ascending" && declared != "descending" && declared != "custom") {
        throw FormatError("decomposition.order: expected \"ascending\", \"descending\" or \"custom\"");
    }
    if (declared != order_name(d.order())) {
        throw FormatError("decomposition.order: declared \"" + declared + "\" but factors are " +
                          order_name(d.order()));
    }
    return d;
}

Json to_json(const SymmetricParams& p) {
    p.validate();
    Json j;
    j["n"] = p.n;
    j["thetas"] = p.thetas;
    j["chars"] = p.real_chars;
    j["half_angle"] = p.half_angle;
    return j;
}

SymmetricParams symmetric_params_from_json(const Json& j) {
    SymmetricParams p;
    p.n = positive_int(field(j, "n", "symmetric"), "symmetric.n");
    p.thetas = number_array(field(j, "thetas", "symmetric"), "symmetric.thetas");
    const Json& chars = field(j, "chars", "symmetric");
    if (!chars.is_array()) {
        throw FormatError("symmetric.chars: expected an array");
    }
    for (std::size_t i = 0; i < chars.size(); ++i) {
        p.real_chars.push_back(number_array(chars[i], "symmetric.chars[" + std::to_string(i) + "]"));
    }
    if (auto it = j.find("half_angle"); it != j.end()) {
        if (!it->is_boolean()) {
            throw FormatError("symmetric.half_angle: expected a boolean");
        }
        p.half_angle = it->get<bool>();
    }
    as_format_error("symmetric", [&] {
        p.validate();
        return 0;
    });
    return p;
}

Json to_json(const PlaquetteTable& t) {
    Json arr = Json::array();
    for (const auto& p : t.entries()) {
        Json e;
        e["rows"] = pair_label(p.rows);
        e["cols"] = pair_label(p.cols);
        e["re"] = p.re();
        e["im"] = p.im();
        arr.push_back(std::move(e));
    }
    return arr;
}

Json to_json(const PanelLattice& p) {
    Json grid = Json::array();
    for (std::size_t a = 0; a < p.side(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < p.side(); ++b) {
            Json cell;
            cell["re"] = p.r(a, b);
            cell["im"] = p.j(a, b);
            row.push_back(std::move(cell));
        }
        grid.push_back(std::move(row));
    }
    return grid;
}

Json to_json(const std::vector<UnitarityPolygon>& polys) {
    Json arr = Json::array();
    for (const auto& p : polys) {
        arr.push_back(polygon_json(p));
    }
    return arr;
}

Json to_json(const OmegaSet& w) {
    Json j;
    j["n"] = w.n;
    j["omegas"] = w.omegas;
    return j;
}

Json to_json(const BasisSolveResult& r) {
    Json j;
    j["solvable"] = r.solvable;
    j["determinant"] = r.determinant;
    Json values = Json::array();
    for (const auto& v : r.values) {
        Json e;
        e["panel"] = Json::array({v.a + 1, v.b + 1});
        e["solved"] = v.solved;  // NaN (null) when unsolvable
        e["direct"] = v.direct;
        values.push_back(std::move(e));
    }
    j["values"] = std::move(values);
    j["relation_residuals"] = r.relation_residuals;
    if (r.solvable) {
        j["max_error"] = r.max_error();
    }
    return j;
}

Json to_json(const ZeroTextureReport& r) {
    Json j;
    j["zeros"] = Json::array({pair_label(r.zeros[0]), pair_label(r.zeros[1])});
    Json rows = Json::array();
    Json cols = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        rows.push_back(r.row_perm[i] + 1);
        cols.push_back(r.col_perm[i] + 1);
    }
    j["frame_rows"] = std::move(rows);
    j["frame_cols"] = std::move(cols);
    j["J"] = r.J;
    j["J_prime"] = r.J_prime;
    j["ratio"] = r.ratio;
    j["vanishing_count"] = r.vanishing_count;
    Json pattern = Json::array();
    for (const auto& e : r.sign_pattern) {
        Json pj;
        pj["rows"] = pair_label(e.rows);
        pj["cols"] = pair_label(e.cols);
        pj["im"] = e.value;
        pj["label"] = e.label;
        pattern.push_back(std::move(pj));
    }
    j["sign_pattern"] = std::move(pattern);
    j["chain_J"] = r.chain_j;
    j["chain_J_prime"] = r.chain_j_prime;
    j["p2323"] = r.p2323;
    j["modulus_ratios"] = r.modulus_ratios;
    j["triangle_areas"] = to_json(r.triangles);
    Json closed;
    closed["thetas"] = r.thetas;
    closed["J"] = r.J_closed;
    closed["J_prime"] = r.J_prime_closed;
    closed["ratio"] = r.ratio_closed;
    closed["y3_modulus"] = r.y3_modulus;
    closed["y1_minus_x2"] = r.y1_minus_x2;
    closed["y2_minus_x1"] = r.y2_minus_x1;
    j["closed_form"] = std::move(closed);
    return j;
}

}  // namespace unirec::io
