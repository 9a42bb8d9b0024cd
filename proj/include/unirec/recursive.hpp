#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "unirec/matrix.hpp"

namespace unirec {

/**
 * Unit complex vector of length k−1 characterising an order-k factor.
 *
 * For k = 2 it is a single unit-modulus scalar. Construction checks the
 * norm against `norm_tol`; `normalized` rescales instead.
 */
class CharVector {
public:
    static constexpr double kNormTolerance = 1e-12;

    CharVector() = default;
    explicit CharVector(std::vector<Complex> components, double norm_tol = kNormTolerance);
    CharVector(std::initializer_list<Complex> components)
        : CharVector(std::vector<Complex>(components)) {}

    static CharVector normalized(std::vector<Complex> components);
    /// Unit basis vector e_{len−1} (last component 1).
    static CharVector last_unit(std::size_t len);

    std::size_t size() const noexcept { return c_.size(); }
    const Complex& operator[](std::size_t i) const { return c_[i]; }
    std::span<const Complex> components() const noexcept { return c_; }
    const Complex& back() const { return c_.back(); }

    friend bool operator==(const CharVector&, const CharVector&) = default;

private:
    std::vector<Complex> c_;
};

/// One factor A_{n,k}: the order-k block embedded in an n×n identity.
struct Factor {
    std::size_t ambient_n = 2;
    std::size_t order = 2;
    double theta = 0.0;
    CharVector chr;

    /// Throws DomainError unless 2 ≤ order ≤ ambient_n and chr.size() == order − 1.
    void validate() const;
};

/**
 * The k×k block
 *
 *     [ I − (1−c)|a⟩⟨a|   s|a⟩ ]
 *     [   −s⟨a|            c  ]
 *
 * with c = cos θ, s = sin θ and k = a.size() + 1.
 */
ComplexMatrix block(double theta, const CharVector& a);

/// diag(block(θ_k, a), I_{n−k}).
ComplexMatrix embed(const Factor& f);

/// Hermitian generator with 𝔾³ = 𝔾, tr 𝔾 = 0, tr 𝔾² = 2.
class Generator {
public:
    static constexpr double kTolerance = 1e-12;

    /// Validates hermiticity, 𝔾³ = 𝔾 and the two traces; DomainError otherwise.
    explicit Generator(ComplexMatrix g, double tol = kTolerance);

    const ComplexMatrix& matrix() const noexcept { return g_; }
    std::size_t dim() const noexcept { return g_.rows(); }

private:
    ComplexMatrix g_;
};

/// n×n generator with [[0, −i|a⟩], [i⟨a|, 0]] in the leading k×k corner.
Generator generator(const Factor& f);

/// Closed form I + i sin θ 𝔾 − (1 − cos θ) 𝔾².
ComplexMatrix exp_generator(double theta, const Generator& g);

enum class FactorOrder { Ascending, Descending, Custom };

/**
 * X = Φ(α) · F_1 · F_2 ⋯ F_m · Φ(β), factors multiplied in stored order.
 *
 * DESCENDING (k = n … 2) is what `decompose` emits; ASCENDING (k = 2 … n)
 * is the A_{n,2} A_{n,3} ⋯ A_{n,n} chain. Anything else comes from
 * `reorder_chain` and is tagged Custom.
 */
struct Decomposition {
    std::size_t ambient_n = 0;
    std::vector<Factor> factors;
    PhaseVector left_phases;
    PhaseVector right_phases;

    FactorOrder order() const;
    /// Sequence of factor orders in product order.
    std::vector<std::size_t> order_sequence() const;
    /// Factor of order k; StructureError when absent.
    const Factor& factor_of_order(std::size_t k) const;

    /// Exactly one factor per order 2…n, matching ambient sizes, phase lengths n.
    void validate() const;
};

/// Real parameters carried by d: Σ_k (2k−2) from the factors plus the external phases.
std::size_t real_parameter_count(const Decomposition& d);

/// Phases left in characteristic vectors after fixing every last component real.
std::size_t unremovable_phase_count(const Decomposition& d);

ComplexMatrix compose(const Decomposition& d);

/**
 * Peels x into DESCENDING factors A_n ⋯ A_2 with right phases β and zero α.
 *
 * θ_k ∈ [0, π/2]. Throws NotUnitaryError when x is not unitary at `tol`,
 * ConsistencyError when a peeled row/column deviates from a phase times a
 * unit vector by more than 10·tol.
 */
Decomposition decompose(const ComplexMatrix& x, double tol = tolerance::kUnitarity);

/**
 * Exchanges two adjacent factors in a product `left · right`.
 *
 * Returns (left′, right′) with left′·right′ = left·right, where left′ has
 * right's order and right′ has left's order. The lower-order factor is
 * unchanged; the higher-order factor's characteristic vector is rotated.
 * Angles are preserved.
 */
std::pair<Factor, Factor> reorder_swap(const Factor& left, const Factor& right);

/// Rearranges the chain into `target` (a permutation of 2…n) by adjacent swaps.
Decomposition reorder_chain(const Decomposition& d, std::span<const std::size_t> target);

/// Target sequences for the two canonical orderings.
std::vector<std::size_t> ascending_orders(std::size_t n);
std::vector<std::size_t> descending_orders(std::size_t n);

/**
 * Moves the phase of each characteristic vector's last component into the
 * external phases. Afterwards every last component is real and ≥ 0 and the
 * order-2 scalar is exactly 1; compose is unchanged.
 */
Decomposition gauge_fix(const Decomposition& d);

}  // namespace unirec
