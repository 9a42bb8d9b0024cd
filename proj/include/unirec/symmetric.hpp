#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "unirec/matrix.hpp"

namespace unirec {

/**
 * Parameters of a manifestly symmetric unitary built as the palindrome
 *
 *     A₂ A₃ ⋯ A_{n−1} A_n A_{n−1} ⋯ A₃ A₂
 *
 * where every factor has a purely imaginary characteristic vector i·x with
 * x real and unit. With `half_angle` set, the factors that occur twice use
 * θ_k/2 and A_n uses θ_n.
 */
struct SymmetricParams {
    std::size_t n = 2;
    std::vector<double> thetas;                  ///< θ₂ … θ_n
    std::vector<std::vector<double>> real_chars;  ///< entry k−2 has length k−1
    bool half_angle = true;

    /// DomainError on wrong lengths, non-finite values or non-unit vectors.
    void validate() const;
};

/// n(n−1)/2.
std::size_t sym_param_count(std::size_t n);
/// Real parameters carried by p: the angles plus (k−2) per unit vector.
std::size_t real_parameter_count(const SymmetricParams& p);

/// Embedded order-k factor with characteristic vector i·xs; symmetric and unitary.
ComplexMatrix sym_factor(std::size_t k, double theta, const std::vector<double>& xs, std::size_t n);

ComplexMatrix compose_symmetric(const SymmetricParams& p);

/**
 * Closed form of A₂(θ₂/2) A₃(θ₃, x) A₂(θ₂/2) for n = 3, expressed through
 * u₁ = c′x₁ + i s′x₂, u₂ = c′x₂ + i s′x₁ with c′, s′ = cos, sin of θ₂/2.
 */
ComplexMatrix v3sym_closed(double theta2, double theta3, std::array<double, 2> xs);

/**
 * Closed form of A₂(θ₂/2)⁻¹ A₄(θ₄, y) A₂(θ₂/2)⁻¹, expressed through
 * v₁ = c′y₁ − i s′y₂, v₂ = c′y₂ − i s′y₁, v₃ = y₃.
 */
ComplexMatrix a4prime(double theta2, double theta4, std::array<double, 3> ys);

/// c₂c₃s₂s₃² x₁x₂, the (12;12) invariant of v3sym_closed.
double j_sym_n3(double theta2, double theta3, std::array<double, 2> xs);

}  // namespace unirec
