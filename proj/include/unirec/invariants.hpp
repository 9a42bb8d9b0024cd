#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "unirec/matrix.hpp"
#include "unirec/recursive.hpp"

// Rephasing-invariant phase algebra. All indices in this API are 0-based.

namespace unirec {

struct IndexPair {
    std::size_t first = 0;
    std::size_t second = 0;

    IndexPair swapped() const { return {second, first}; }
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// V_{αj} V_{βk} V*_{αk} V*_{βj} for rows (α, β) and columns (j, k).
struct Plaquette {
    IndexPair rows;
    IndexPair cols;
    Complex value;

    double re() const { return value.real(); }
    /// The invariant (αβ; jk).
    double im() const { return value.imag(); }
};

/// Throws DomainError for repeated or out-of-range indices.
Plaquette plaquette(const ComplexMatrix& x, IndexPair rows, IndexPair cols);

/// All α<β, j<k pairs of {0, …, n−1} in lexicographic order.
std::vector<IndexPair> ordered_pairs(std::size_t n);

/**
 * Every canonical plaquette (α<β, j<k) of a matrix, [n(n−1)/2]² of them.
 * `at` accepts any ordering and reconstructs the value: swapping the rows or
 * the columns conjugates it.
 */
class PlaquetteTable {
public:
    PlaquetteTable(std::size_t n, std::vector<Plaquette> entries);

    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<Plaquette>& entries() const noexcept { return entries_; }

    Complex at(IndexPair rows, IndexPair cols) const;
    double im(IndexPair rows, IndexPair cols) const { return at(rows, cols).imag(); }

    /// max |difference| over all entries; ShapeError for different n.
    double max_diff(const PlaquetteTable& other) const;

private:
    std::size_t index_of(IndexPair rows, IndexPair cols) const;

    std::size_t n_;
    std::vector<Plaquette> entries_;
};

PlaquetteTable plaquette_table(const ComplexMatrix& x);

struct SextetReduction {
    double lhs = 0.0;  ///< Im(V_αj V_βk V_γl V*_αk V*_βl V*_γj)
    double rhs = 0.0;  ///< [(αβ,jk)⟨βγ,jl⟩ + ⟨αβ,jk⟩(βγ,jl)] / |V_βj|²
    double residual() const { return lhs - rhs; }
};

/**
 * Both sides of the sextet-to-plaquette reduction. Needs α≠β, β≠γ, j≠k, j≠l;
 * throws PreconditionError when |V_βj| ≤ pivot_tol.
 */
SextetReduction reduce_sextet(const ComplexMatrix& x, std::array<std::size_t, 3> rows,
                              std::array<std::size_t, 3> cols, double pivot_tol = 1e-12);

/// (n−1)(n−2)/2.
std::size_t count_independent_phases(std::size_t n);

/// Closed polygon formed by the terms V_αj V*_βj (row pair) or V_jα V*_jβ (column pair).
struct UnitarityPolygon {
    enum class Kind { Row, Column };
    Kind kind = Kind::Row;
    IndexPair pair;
    std::size_t sides = 0;  ///< terms with modulus above the zero threshold
    double area = 0.0;

    bool is_triangle() const { return sides == 3; }
};

/// One polygon per row pair then per column pair; area by the shoelace formula.
std::vector<UnitarityPolygon> triangle_areas(const ComplexMatrix& x, double zero_tol = 1e-9);

// ---------------------------------------------------------------------------
// Invariant phases of the parameters

struct OmegaSet {
    std::size_t n = 0;
    std::vector<double> omegas;  ///< each in (−π, π]
};

/**
 * ω's built from the phases of the order-3, 4 (and 5) characteristic vectors.
 * Needs n ∈ {4, 5}, ascending order and an order-2 scalar equal to 1.
 */
OmegaSet omega_from_params(const Decomposition& d);

enum class Symmetry { S1, S2, S3 };

/**
 * Rephases the order-(k) vector by e^{iφ} and component k of every higher-order
 * vector by e^{−iφ}, with k = 3, 4, 5 for S1, S2, S3. The composed matrix
 * changes only by external phases. n = 4 admits S1, S2; n = 5 adds S3.
 */
Decomposition apply_symmetry(const Decomposition& d, Symmetry which, double phase);

/// c₂c₃s₂s₃² Im(x₁* x₂); equals (12;12) of compose(d). n = 3, ascending, |A⁽²⁾⟩ = 1.
double closed_form_j_n3(const Decomposition& d);

struct ClosedFormsN4 {
    double p3434 = 0.0;  ///< (34;34)
    double p3424 = 0.0;  ///< (34;24)
};

/// (34;34) and (34;24) from the moduli of x, y and the three ω's.
ClosedFormsN4 closed_forms_n4(const Decomposition& d);

// ---------------------------------------------------------------------------
// Panel lattice

/// (n−1)×(n−1) grid of nearest-neighbour plaquettes P_ab = R_ab + i J_ab.
class PanelLattice {
public:
    PanelLattice(std::size_t n, std::vector<Complex> panels);

    std::size_t n() const noexcept { return n_; }
    std::size_t side() const noexcept { return n_ - 1; }
    Complex at(std::size_t a, std::size_t b) const { return panels_[a * side() + b]; }
    double r(std::size_t a, std::size_t b) const { return at(a, b).real(); }
    double j(std::size_t a, std::size_t b) const { return at(a, b).imag(); }

private:
    std::size_t n_;
    std::vector<Complex> panels_;
};

PanelLattice panel_lattice(const ComplexMatrix& x);

/// Default modulus below which a matrix element counts as vanishing.
inline constexpr double kVanishing = 1e-9;

/**
 * LHS − RHS of the six unitarity relations linking the 4×4 panel J's.
 * Relations, with 1-based labels and q = the squared-modulus product shown:
 *   J13 − (1 + R11/q)J12 − (R12/q)J11,       q = |V12 V22|²
 *   J13 − (1 + R33/q)J23 − (R23/q)J33,       q = |V33 V34|²
 *   J31 − (1 + R11/q)J21 − (R21/q)J11,       q = |V21 V22|²
 *   J31 − (1 + R33/q)J32 − (R32/q)J33,       q = |V33 V43|²
 *   J12 − (R22/q)J32 − (1 + R32/q)J22,       q = |V32 V33|²
 *   J21 − (R22/q)J23 − (1 + R23/q)J22,       q = |V23 V33|²
 * Throws PreconditionError when any element entering a q is ≤ vanish_tol.
 */
std::array<double, 6> panel_relation_residuals(const ComplexMatrix& x, double vanish_tol = kVanishing);

struct PanelSolution {
    std::size_t a = 0;  ///< 0-based panel row
    std::size_t b = 0;  ///< 0-based panel column
    double solved = 0.0;
    double direct = 0.0;
};

struct BasisSolveResult {
    bool solvable = false;
    double determinant = 0.0;
    /// J12, J13, J21, J23, J31, J32 (1-based labels) in that order.
    std::array<PanelSolution, 6> values{};
    std::array<double, 6> relation_residuals{};

    double max_error() const;
};

/**
 * Recovers the six off-diagonal panel J's from J11, J22, J33 and the R's.
 * The relations reduce to a 2×2 system in (J32, J23); the rest follow by
 * substitution. `solvable` is false when that system is singular.
 */
BasisSolveResult basis_solve_n4(const ComplexMatrix& x, double vanish_tol = kVanishing);

// ---------------------------------------------------------------------------
// Two-zero texture of a 4×4 unitary

struct LabelledInvariant {
    IndexPair rows;
    IndexPair cols;
    double value = 0.0;
    std::string label;  ///< "+J", "-J", "+J'", "-J'", "J+J'", "0" or "?"
};

struct ZeroTextureReport {
    std::array<IndexPair, 2> zeros{};  ///< (row, col) of the vanishing entries, caller's frame
    /// Report frame: frame(i, j) = x(row_perm[i], col_perm[j]), zeros at (0,3) and (3,0).
    std::array<std::size_t, 4> row_perm{};
    std::array<std::size_t, 4> col_perm{};

    double J = 0.0;        ///< (12;12) in the report frame
    double J_prime = 0.0;  ///< (34;34) in the report frame
    double ratio = 0.0;    ///< J'/J
    std::size_t vanishing_count = 0;
    std::vector<LabelledInvariant> sign_pattern;

    /// −(12,13), (12,23), −(13,12), (13,13), −(13,23), (23,12), −(23,13): each equals J.
    std::array<double, 7> chain_j{};
    /// −(23,24), (23,34), −(24,23), (24,24), −(24,34), (34,23), −(34,24): each equals J'.
    std::array<double, 7> chain_j_prime{};
    double p2323 = 0.0;  ///< (23,23), equals J + J'

    /// (J'/J)², |V24V34/V21V31|², |V42V43/V12V13|², ((|V24|²+|V34|²)/(|V12|²+|V13|²))²,
    /// ((|V42|²+|V43|²)/(|V21|²+|V31|²))², all in the report frame.
    std::array<double, 5> modulus_ratios{};

    std::vector<UnitarityPolygon> triangles;  ///< the eight three-sided polygons

    /// From the decomposition of the frame with zeros at (2,3), (3,2).
    std::array<double, 3> thetas{};  ///< θ₂, θ₃, θ₄
    double J_closed = 0.0;           ///< c₂c₃c₄s₂s₃² Im(x₁*x₂)
    double J_prime_closed = 0.0;     ///< −c₂c₃c₄s₂s₄² Im(x₁*x₂)
    double ratio_closed = 0.0;       ///< −s₄²/s₃²
    double y3_modulus = 0.0;
    double y1_minus_x2 = 0.0;  ///< |y₁| − |x₂|
    double y2_minus_x1 = 0.0;  ///< |y₂| − |x₁|
};

/**
 * Analyses a 4×4 unitary with exactly two vanishing entries on distinct rows
 * and columns. Entries with modulus ≤ tol count as zero; invariants with
 * |value| ≤ vanish_tol count as vanishing. DomainError if the texture is wrong.
 */
ZeroTextureReport zero_texture_analysis(const ComplexMatrix& x, double tol = kVanishing,
                                        double vanish_tol = 1e-10);

}  // namespace unirec
