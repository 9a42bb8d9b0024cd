#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"
#include "unirec/symmetric.hpp"

using namespace unirec;
using testing::kPi;

namespace {

// Real orthogonal 4×4 from six Givens rotations.
ComplexMatrix random_orthogonal(std::mt19937_64& rng) {
    ComplexMatrix q = ComplexMatrix::identity(4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
            const double t = testing::uniform(rng, -kPi, kPi);
            ComplexMatrix g = ComplexMatrix::identity(4);
            g(a, a) = g(b, b) = std::cos(t);
            g(a, b) = std::sin(t);
            g(b, a) = -std::sin(t);
            q = testing::naive_matmul(q, g);
        }
    return q;
}

// Panel J_ab (1-based) straight from the matrix.
double panel_j(const ComplexMatrix& v, int a, int b) {
    return testing::plaquette_oracle(v, a - 1, a, b - 1, b).imag();
}
double panel_r(const ComplexMatrix& v, int a, int b) {
    return testing::plaquette_oracle(v, a - 1, a, b - 1, b).real();
}

}  // namespace

TEST_CASE("panel_lattice") {
    const auto v = haar_random(4, 3);
    const auto p = panel_lattice(v);
    CHECK(p.side() == 3);
    const Complex p11 = v(0, 0) * v(1, 1) * std::conj(v(0, 1)) * std::conj(v(1, 0));
    CHECK(std::abs(p.at(0, 0) - p11) < 1e-16);
    const auto t = plaquette_table(v);
    CHECK(p.j(0, 1) == t.im({0, 1}, {1, 2}));
    CHECK(p.j(1, 1) == t.im({1, 2}, {1, 2}));
    CHECK(p.j(2, 1) == t.im({2, 3}, {1, 2}));

    const auto id = panel_lattice(ComplexMatrix::identity(4));
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) CHECK(id.at(a, b) == Complex(0.0));

    CHECK(panel_lattice(haar_random(6, 1)).side() == 5);
    CHECK_THROWS_AS(panel_lattice(ComplexMatrix::identity(1)), ShapeError);
}

TEST_CASE("panel_relation_residuals") {
    SUBCASE("Haar") {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            for (double r : panel_relation_residuals(haar_random(4, seed))) worst = std::max(worst, std::abs(r));
        }
        CHECK(worst < 1e-12);
    }
    SUBCASE("first relation against the z identity") {
        // Row pair (1,2): z_t = V_1t V*_2t sums to zero. With a = col 1, b = col 2,
        // c = col 3 the identity |z_b|² Im(z_a z_c*) = Re(z_a z_b*) Im(z_b z_c*) + Im(z_a z_b*) Re(z_b z_c*)
        // turns into the first relation once z_c is eliminated.
        const auto v = haar_random(4, 77);
        Complex z[4];
        for (int t = 0; t < 4; ++t) z[t] = v(0, t) * std::conj(v(1, t));
        const Complex za = z[0], zb = z[1], zc = z[2];
        const double lhs = std::norm(zb) * (za * std::conj(zc)).imag();
        const double rhs = (za * std::conj(zb)).real() * (zb * std::conj(zc)).imag() +
                           (za * std::conj(zb)).imag() * (zb * std::conj(zc)).real();
        CHECK(std::abs(lhs - rhs) < 1e-15);

        const double q = std::norm(v(0, 1) * v(1, 1));
        const double direct = panel_j(v, 1, 3) - (1 + panel_r(v, 1, 1) / q) * panel_j(v, 1, 2) -
                              (panel_r(v, 1, 2) / q) * panel_j(v, 1, 1);
        CHECK(std::abs(direct) < 1e-14);
        CHECK(std::abs(panel_relation_residuals(v)[0] - direct) < 1e-15);
    }
    SUBCASE("orthogonal") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 10; ++trial) {
            for (double r : panel_relation_residuals(random_orthogonal(rng))) CHECK(r == 0.0);
        }
    }
    SUBCASE("vanishing divisor") {
        auto v = ComplexMatrix::identity(4);
        CHECK_THROWS_AS(panel_relation_residuals(v), PreconditionError);
        CHECK_THROWS_AS(panel_relation_residuals(haar_random(3, 1)), DomainError);
    }
}

TEST_CASE("basis_solve_n4") {
    SUBCASE("Haar") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto v = haar_random(4, 300 + seed);
            const auto r = basis_solve_n4(v);
            REQUIRE(r.solvable);
            CHECK(r.max_error() < 1e-10);
            for (const auto& s : r.values) {
                CHECK(s.direct == panel_j(v, int(s.a) + 1, int(s.b) + 1));
            }
        }
    }
    SUBCASE("orthogonal") {
        std::mt19937_64 rng(5);
        const auto r = basis_solve_n4(random_orthogonal(rng));
        REQUIRE(r.solvable);
        for (const auto& s : r.values) CHECK(std::abs(s.solved) < 1e-15);
    }
    SUBCASE("symmetric input") {
        std::mt19937_64 rng(6);
        for (int trial = 0; trial < 20; ++trial) {
            SymmetricParams p;
            p.n = 4;
            for (std::size_t k = 2; k <= 4; ++k) {
                p.thetas.push_back(testing::uniform(rng, 0.2, 1.4));
                p.real_chars.push_back(testing::random_real_unit(k - 1, rng));
            }
            const auto v = compose_symmetric(p);
            const auto r = basis_solve_n4(v);
            REQUIRE(r.solvable);
            // values: J12, J13, J21, J23, J31, J32
            CHECK(std::abs(r.values[0].solved - r.values[2].solved) < 1e-10);
            CHECK(std::abs(r.values[1].solved - r.values[4].solved) < 1e-10);
            CHECK(std::abs(r.values[3].solved - r.values[5].solved) < 1e-10);
            CHECK(r.max_error() < 1e-10);
        }
    }
    SUBCASE("vanishing divisor") {
        // Move a texture zero to V22 (1-based).
        std::mt19937_64 rng(9);
        const std::vector<std::size_t> rows{0, 2, 1, 3};
        const std::vector<std::size_t> cols{0, 3, 2, 1};
        const auto vz = permute(testing::make_texture(rng).v, rows, cols);
        REQUIRE(std::abs(vz(1, 1)) < 1e-15);
        CHECK_THROWS_AS(panel_relation_residuals(vz), PreconditionError);
        CHECK_THROWS_AS(basis_solve_n4(vz), PreconditionError);
    }
}
