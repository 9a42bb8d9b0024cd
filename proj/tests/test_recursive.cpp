#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "unirec/errors.hpp"
#include "unirec/recursive.hpp"

using namespace unirec;
using testing::kPi;

namespace {

const Complex I(0.0, 1.0);

// The three factors of the n = 4 chain written out entry by entry.
ComplexMatrix explicit_v4(double t2, double t3, double t4, const std::vector<Complex>& x,
                          const std::vector<Complex>& y) {
    const double c2 = std::cos(t2), s2 = std::sin(t2);
    const double c3 = std::cos(t3), s3 = std::sin(t3);
    const double c4 = std::cos(t4), s4 = std::sin(t4);
    auto cj = [](Complex z) { return std::conj(z); };
    const ComplexMatrix a2{{c2, s2, 0, 0}, {-s2, c2, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    const ComplexMatrix a3{
        {1.0 - (1 - c3) * x[0] * cj(x[0]), -(1 - c3) * x[0] * cj(x[1]), s3 * x[0], 0},
        {-(1 - c3) * x[1] * cj(x[0]), 1.0 - (1 - c3) * x[1] * cj(x[1]), s3 * x[1], 0},
        {-s3 * cj(x[0]), -s3 * cj(x[1]), c3, 0},
        {0, 0, 0, 1},
    };
    const ComplexMatrix a4{
        {1.0 - (1 - c4) * y[0] * cj(y[0]), -(1 - c4) * y[0] * cj(y[1]), -(1 - c4) * y[0] * cj(y[2]), s4 * y[0]},
        {-(1 - c4) * y[1] * cj(y[0]), 1.0 - (1 - c4) * y[1] * cj(y[1]), -(1 - c4) * y[1] * cj(y[2]), s4 * y[1]},
        {-(1 - c4) * y[2] * cj(y[0]), -(1 - c4) * y[2] * cj(y[1]), 1.0 - (1 - c4) * y[2] * cj(y[2]), s4 * y[2]},
        {-s4 * cj(y[0]), -s4 * cj(y[1]), -s4 * cj(y[2]), c4},
    };
    return testing::naive_matmul(testing::naive_matmul(a2, a3), a4);
}

std::vector<double> sorted_thetas(const Decomposition& d) {
    std::vector<double> t;
    for (const auto& f : d.factors) t.push_back(f.theta);
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

TEST_CASE("CharVector") {
    CHECK_NOTHROW(CharVector{Complex(0.6), Complex(0.0, 0.8)});
    CHECK_THROWS_AS((CharVector{Complex(0.6), Complex(0.8001)}), DomainError);
    CHECK_THROWS_AS(CharVector(std::vector<Complex>{}), DomainError);
    CHECK_THROWS_AS(CharVector::normalized({0.0, 0.0}), DomainError);
    const auto n = CharVector::normalized({3.0, Complex(0.0, 4.0)});
    CHECK(std::abs(n[1] - Complex(0.0, 0.8)) < 1e-15);
    CHECK(CharVector::last_unit(3).back() == Complex(1.0));
}

TEST_CASE("Factor validation") {
    CHECK_THROWS_AS((Factor{3, 4, 0.1, CharVector::last_unit(3)}.validate()), DomainError);
    CHECK_THROWS_AS((Factor{3, 3, 0.1, CharVector::last_unit(1)}.validate()), DomainError);
    CHECK_THROWS_AS((Factor{3, 1, 0.1, CharVector::last_unit(1)}.validate()), DomainError);
    CHECK_NOTHROW((Factor{3, 3, 0.1, CharVector::last_unit(2)}.validate()));
}

TEST_CASE("block") {
    std::mt19937_64 rng(1);
    const auto a = CharVector::normalized(testing::random_unit(4, rng));
    CHECK(max_norm_diff(block(0.0, a), ComplexMatrix::identity(5)) == 0.0);

    const double t = 0.37;
    const auto b2 = block(t, CharVector{Complex(1.0)});
    CHECK(max_norm_diff(b2, ComplexMatrix{{std::cos(t), std::sin(t)}, {-std::sin(t), std::cos(t)}}) < 1e-15);

    const std::vector<Complex> x{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const auto b3 = block(t, CharVector(x));
    const double c = std::cos(t), s = std::sin(t);
    CHECK(std::abs(b3(0, 0) - (1.0 - (1 - c) * x[0] * std::conj(x[0]))) < 1e-15);
    CHECK(std::abs(b3(0, 1) - (-(1 - c) * x[0] * std::conj(x[1]))) < 1e-15);
    CHECK(std::abs(b3(1, 0) - (-(1 - c) * x[1] * std::conj(x[0]))) < 1e-15);
    CHECK(std::abs(b3(1, 2) - s * x[1]) < 1e-15);
    CHECK(std::abs(b3(2, 0) + s * std::conj(x[0])) < 1e-15);
    CHECK(std::abs(b3(2, 2) - c) < 1e-15);
}

TEST_CASE("embed") {
    std::mt19937_64 rng(2);
    const auto full = testing::random_factor(4, 4, rng);
    CHECK(embed(full) == block(full.theta, full.chr));

    const double t = 0.9;
    const auto e = embed(Factor{4, 2, t, CharVector{Complex(1.0)}});
    const ComplexMatrix expect{
        {std::cos(t), std::sin(t), 0, 0}, {-std::sin(t), std::cos(t), 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    CHECK(max_norm_diff(e, expect) < 1e-15);

    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const std::size_t k = 2 + trial % (n - 1);
        const auto f = testing::random_factor(n, k, rng, 2 * kPi);
        const auto m = embed(f);
        CHECK(max_norm_diff(m * dagger(m), ComplexMatrix::identity(n)) < 1e-13);
        CHECK(std::abs(determinant(m) - 1.0) < 1e-12);
    }
}

TEST_CASE("generator") {
    const auto g = generator(Factor{2, 2, 0.3, CharVector{Complex(1.0)}});
    CHECK(g.matrix() == (ComplexMatrix{{0.0, -I}, {I, 0.0}}));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const std::size_t k = 2 + trial % (n - 1);
        const auto gm = generator(testing::random_factor(n, k, rng)).matrix();
        CHECK(std::abs(trace(gm)) < 1e-12);
        CHECK(std::abs(trace(gm * gm) - 2.0) < 1e-12);
        CHECK(max_norm_diff(gm * gm * gm, gm) < 1e-12);
    }

    CHECK_THROWS_AS(Generator(ComplexMatrix::identity(2)), DomainError);
    CHECK_THROWS_AS(Generator(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), DomainError);
}

TEST_CASE("exp_generator") {
    std::mt19937_64 rng(4);
    const auto g0 = generator(testing::random_factor(4, 3, rng));
    CHECK(max_norm_diff(exp_generator(0.0, g0), ComplexMatrix::identity(4)) == 0.0);

    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const std::size_t k = 2 + trial % (n - 1);
        const auto f = testing::random_factor(n, k, rng);
        const auto g = generator(f);
        const double t = testing::uniform(rng, -kPi, kPi);
        CHECK(max_norm_diff(exp_generator(t, g), testing::series_exp(t, g.matrix())) < 1e-12);

        // One-parameter subgroup.
        const double u = testing::uniform(rng, -kPi, kPi);
        CHECK(max_norm_diff(exp_generator(t, g) * exp_generator(u, g), exp_generator(t + u, g)) < 1e-12);
        // The factor is the exponential at θ.
        CHECK(max_norm_diff(exp_generator(f.theta, g), embed(f)) < 1e-13);
    }
}

TEST_CASE("compose") {
    Decomposition id;
    id.ambient_n = 4;
    for (std::size_t k = 4; k >= 2; --k) id.factors.push_back({4, k, 0.0, CharVector::last_unit(k - 1)});
    id.left_phases = PhaseVector(4);
    id.right_phases = PhaseVector(4);
    CHECK(max_norm_diff(compose(id), ComplexMatrix::identity(4)) < 1e-15);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = testing::random_chain(4, {2, 3, 4}, rng, false);
        d.factors[0].chr = CharVector{Complex(1.0)};
        const auto& x = d.factors[1].chr;
        const auto& y = d.factors[2].chr;
        const auto v = explicit_v4(d.factors[0].theta, d.factors[1].theta, d.factors[2].theta,
                                   {x[0], x[1]}, {y[0], y[1], y[2]});
        CHECK(max_norm_diff(compose(d), v) < 1e-14);
    }

    // θ₄ = 0 reduces the n = 4 chain to the n = 3 one in the leading block.
    auto d4 = testing::random_chain(4, {2, 3, 4}, rng, false);
    d4.factors[2].theta = 0.0;
    Decomposition d3;
    d3.ambient_n = 3;
    d3.factors = {{3, 2, d4.factors[0].theta, d4.factors[0].chr}, {3, 3, d4.factors[1].theta, d4.factors[1].chr}};
    d3.left_phases = PhaseVector(3);
    d3.right_phases = PhaseVector(3);
    CHECK(max_norm_diff(compose(d4).block(0, 0, 3, 3), compose(d3)) < 1e-15);

    // External phases.
    const auto dp = testing::random_chain(5, {5, 3, 2, 4}, rng);
    CHECK(max_norm_diff(compose(dp), testing::chain_product(dp)) < 1e-14);
}

TEST_CASE("Decomposition::validate") {
    std::mt19937_64 rng(6);
    auto d = testing::random_chain(4, {4, 3, 2}, rng);
    CHECK_NOTHROW(d.validate());
    CHECK(d.order() == FactorOrder::Descending);
    CHECK(testing::random_chain(4, {2, 3, 4}, rng).order() == FactorOrder::Ascending);
    CHECK(testing::random_chain(4, {3, 2, 4}, rng).order() == FactorOrder::Custom);

    auto dup = d;
    dup.factors[1] = testing::random_factor(4, 4, rng);
    CHECK_THROWS_AS(dup.validate(), StructureError);
    auto missing = d;
    missing.factors.pop_back();
    CHECK_THROWS_AS(missing.validate(), StructureError);
    auto short_phase = d;
    short_phase.left_phases = PhaseVector(3);
    CHECK_THROWS_AS(short_phase.validate(), StructureError);
    CHECK_THROWS_AS(d.factor_of_order(5), StructureError);
}

TEST_CASE("decompose") {
    SUBCASE("identity") {
        const auto d = decompose(ComplexMatrix::identity(5));
        CHECK(d.order() == FactorOrder::Descending);
        for (const auto& f : d.factors) {
            CHECK(f.theta == 0.0);
            CHECK(f.chr == CharVector::last_unit(f.order - 1));
        }
        CHECK(d.right_phases.all_zero());
        CHECK(d.left_phases.all_zero());
    }
    SUBCASE("phase matrix") {
        const PhaseVector beta{0.3, -2.0, 3.1, 1.0};
        const auto d = decompose(phase_matrix(beta));
        for (const auto& f : d.factors) CHECK(f.theta == 0.0);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(canonical_angle(d.right_phases[i] - beta[i])) < 1e-14);
        }
    }
    SUBCASE("Haar round trip") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const std::size_t n = 2 + seed % 7;
            const auto x = haar_random(n, seed);
            const auto d = decompose(x);
            CHECK(max_norm_diff(compose(d), x) < 1e-10);
            CHECK(real_parameter_count(d) == n * n);
            for (const auto& f : d.factors) {
                CHECK(f.theta >= 0.0);
                CHECK(f.theta <= kPi / 2);
            }
        }
    }
    SUBCASE("chain with vanishing columns") {
        // θ_k = 0 in the middle of the chain exercises the degenerate branch.
        std::mt19937_64 rng(7);
        auto d = testing::random_chain(5, {5, 4, 3, 2}, rng);
        d.factors[1].theta = 0.0;
        d.factors[3].theta = kPi / 2;
        const auto x = compose(d);
        CHECK(max_norm_diff(compose(decompose(x)), x) < 1e-12);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(decompose(ComplexMatrix(2, 3)), ShapeError);
        const std::vector<Complex> diag{1.0, 1.001};
        CHECK_THROWS_AS(decompose(ComplexMatrix::diagonal(diag)), NotUnitaryError);
        try {
            decompose(ComplexMatrix::diagonal(diag));
        } catch (const NotUnitaryError& e) {
            CHECK(e.defect() == doctest::Approx(0.002001).epsilon(1e-6));
        }
    }
    SUBCASE("n = 1") {
        const auto d = decompose(ComplexMatrix{{std::polar(1.0, 0.4)}});
        CHECK(d.factors.empty());
        CHECK(d.right_phases[0] == doctest::Approx(0.4));
    }
}

TEST_CASE("reorder_swap") {
    std::mt19937_64 rng(8);
    SUBCASE("zero angle on the lower order") {
        auto r = testing::random_factor(5, 2, rng);
        r.theta = 0.0;
        const auto s = testing::random_factor(5, 4, rng);
        const auto [l2, r2] = reorder_swap(r, s);
        CHECK(l2.order == 4);
        CHECK(r2.order == 2);
        CHECK(l2.chr == s.chr);
        CHECK(r2.chr == r.chr);
    }
    SUBCASE("product is preserved") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto r = testing::random_factor(5, 2, rng);
            const auto s = testing::random_factor(5, 4, rng);
            const auto [s2, r2] = reorder_swap(r, s);
            CHECK(max_norm_diff(embed(r) * embed(s), embed(s2) * embed(r2)) < 1e-12);
            CHECK(s2.theta == s.theta);
            CHECK(r2.theta == r.theta);
            CHECK(r2.chr == r.chr);

            const auto [r3, s3] = reorder_swap(s, r);
            CHECK(max_norm_diff(embed(s) * embed(r), embed(r3) * embed(s3)) < 1e-12);
        }
    }
    SUBCASE("double swap is the identity") {
        const auto r = testing::random_factor(5, 3, rng);
        const auto s = testing::random_factor(5, 5, rng);
        const auto [a, b] = reorder_swap(r, s);
        const auto [c, e] = reorder_swap(a, b);
        CHECK(c.order == r.order);
        for (std::size_t i = 0; i < s.chr.size(); ++i) {
            CHECK(std::abs(e.chr[i] - s.chr[i]) < 1e-12);
        }
        CHECK(c.chr == r.chr);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(reorder_swap(testing::random_factor(5, 3, rng), testing::random_factor(5, 3, rng)),
                        DomainError);
        CHECK_THROWS_AS(reorder_swap(testing::random_factor(4, 3, rng), testing::random_factor(5, 2, rng)),
                        DomainError);
    }
}

TEST_CASE("reorder_chain") {
    std::mt19937_64 rng(9);
    const auto d = decompose(haar_random(5, 99));

    const auto same = reorder_chain(d, d.order_sequence());
    CHECK(max_norm_diff(compose(same), compose(d)) == 0.0);
    for (std::size_t i = 0; i < d.factors.size(); ++i) CHECK(same.factors[i].chr == d.factors[i].chr);

    const auto asc = reorder_chain(d, ascending_orders(5));
    CHECK(asc.order() == FactorOrder::Ascending);
    CHECK(max_norm_diff(compose(asc), compose(d)) < 1e-11);
    CHECK(sorted_thetas(asc) == sorted_thetas(d));

    std::vector<std::size_t> perm{2, 3, 4, 5};
    do {
        const auto moved = reorder_chain(d, perm);
        CHECK(moved.order_sequence() == perm);
        CHECK(max_norm_diff(compose(moved), compose(d)) < 1e-11);
        CHECK(sorted_thetas(moved) == sorted_thetas(d));
    } while (std::next_permutation(perm.begin(), perm.end()));

    const std::vector<std::size_t> bad{2, 3, 3, 5};
    CHECK_THROWS_AS(reorder_chain(d, bad), DomainError);
    const std::vector<std::size_t> short_seq{2, 3, 4};
    CHECK_THROWS_AS(reorder_chain(d, short_seq), DomainError);
}

TEST_CASE("gauge_fix") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = testing::random_chain(4, trial % 2 ? std::vector<std::size_t>{2, 3, 4}
                                                          : std::vector<std::size_t>{4, 2, 3},
                                             rng);
        const auto g = gauge_fix(d);
        CHECK(max_norm_diff(compose(g), compose(d)) < 1e-11);
        CHECK(g.order_sequence() == d.order_sequence());
        for (const auto& f : g.factors) {
            CHECK(f.chr.back().imag() == 0.0);
            CHECK(f.chr.back().real() >= 0.0);
        }
        CHECK(g.factor_of_order(2).chr[0] == Complex(1.0));

        // Idempotent.
        const auto gg = gauge_fix(g);
        CHECK(max_norm_diff(compose(gg), compose(g)) < 1e-14);
        for (std::size_t i = 0; i < g.factors.size(); ++i) {
            for (std::size_t c = 0; c < g.factors[i].chr.size(); ++c) {
                CHECK(std::abs(gg.factors[i].chr[c] - g.factors[i].chr[c]) < 1e-14);
            }
        }
    }

    for (std::size_t n = 2; n <= 7; ++n) {
        CHECK(unremovable_phase_count(gauge_fix(decompose(haar_random(n, n)))) == (n - 1) * (n - 2) / 2);
    }
}

TEST_CASE("real_parameter_count") {
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(real_parameter_count(decompose(haar_random(n, 17 * n))) == n * n);
    }
}
