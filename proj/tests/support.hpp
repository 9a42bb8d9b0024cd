#pragma once

// Oracles and random generators shared by the test binaries. Everything here
// is written independently of the library code it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "unirec/invariants.hpp"
#include "unirec/matrix.hpp"
#include "unirec/recursive.hpp"

namespace testing {

using unirec::Complex;
using unirec::ComplexMatrix;

inline constexpr double kPi = std::numbers::pi;

// Triple-loop product.
inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

// Σ_{m<terms} (iθG)^m / m!
inline ComplexMatrix series_exp(double theta, const ComplexMatrix& g, int terms = 60) {
    const std::size_t n = g.rows();
    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int m = 1; m < terms; ++m) {
        term = naive_matmul(term, g) * Complex(0.0, theta / m);
        sum += term;
    }
    return sum;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<Complex> random_unit(std::size_t len, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> v(len);
    double norm = 0.0;
    for (auto& z : v) {
        z = {g(rng), g(rng)};
        norm += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(norm);
    return v;
}

inline std::vector<double> random_real_unit(std::size_t len, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(len);
    double norm = 0.0;
    for (auto& x : v) {
        x = g(rng);
        norm += x * x;
    }
    for (auto& x : v) x /= std::sqrt(norm);
    return v;
}

inline unirec::Factor random_factor(std::size_t n, std::size_t k, std::mt19937_64& rng, double theta_hi = kPi / 2) {
    return {n, k, uniform(rng, 0.0, theta_hi), unirec::CharVector::normalized(random_unit(k - 1, rng))};
}

inline unirec::PhaseVector random_phases(std::size_t n, std::mt19937_64& rng) {
    unirec::PhaseVector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = uniform(rng, -kPi, kPi);
    return p;
}

// Random chain with factors in the given order sequence.
inline unirec::Decomposition random_chain(std::size_t n, const std::vector<std::size_t>& seq, std::mt19937_64& rng,
                                          bool with_phases = true) {
    unirec::Decomposition d;
    d.ambient_n = n;
    for (auto k : seq) d.factors.push_back(random_factor(n, k, rng));
    d.left_phases = with_phases ? random_phases(n, rng) : unirec::PhaseVector(n);
    d.right_phases = with_phases ? random_phases(n, rng) : unirec::PhaseVector(n);
    return d;
}

// Product of embedded factors with external phases, all via the naive product.
inline ComplexMatrix chain_product(const unirec::Decomposition& d) {
    ComplexMatrix m = unirec::phase_matrix(d.left_phases);
    for (const auto& f : d.factors) m = naive_matmul(m, unirec::embed(f));
    return naive_matmul(m, unirec::phase_matrix(d.right_phases));
}

// Direct plaquette formula, 0-based indices.
inline Complex plaquette_oracle(const ComplexMatrix& v, std::size_t a, std::size_t b, std::size_t j, std::size_t k) {
    return v(a, j) * v(b, k) * std::conj(v(a, k)) * std::conj(v(b, j));
}

// Ascending chain A₂A₃A₄ whose product has zeros at (2,3) and (3,2), 0-based.
// y = e^{iχ}(−x₂*, x₁*, 0) kills y₃ and makes ⟨x|y⟩ vanish on the first two slots.
struct Texture {
    double t2, t3, t4;
    std::vector<Complex> x;
    std::vector<Complex> y;
    unirec::Decomposition chain;
    ComplexMatrix v;
};

inline Texture make_texture(std::mt19937_64& rng) {
    Texture t;
    t.t2 = uniform(rng, 0.2, 1.3);
    t.t3 = uniform(rng, 0.2, 1.3);
    t.t4 = uniform(rng, 0.2, 1.3);
    t.x = random_unit(2, rng);
    const Complex chi = std::polar(1.0, uniform(rng, -kPi, kPi));
    t.y = {-chi * std::conj(t.x[1]), chi * std::conj(t.x[0]), 0.0};
    t.chain.ambient_n = 4;
    t.chain.factors = {
        {4, 2, t.t2, unirec::CharVector{Complex(1.0)}},
        {4, 3, t.t3, unirec::CharVector::normalized(t.x)},
        {4, 4, t.t4, unirec::CharVector::normalized(t.y)},
    };
    t.chain.left_phases = unirec::PhaseVector(4);
    t.chain.right_phases = unirec::PhaseVector(4);
    t.v = chain_product(t.chain);
    return t;
}

}  // namespace testing
