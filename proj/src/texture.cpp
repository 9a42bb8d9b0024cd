#include <algorithm>
#include <cmath>
#include <string>

#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"

namespace unirec {

namespace {

std::string element_label(std::size_t r, std::size_t c) {
    return "V" + std::to_string(r + 1) + std::to_string(c + 1);
}

std::string label_for(double v, double j, double jp, double tol) {
    if (std::abs(v) <= tol) return "0";
    if (std::abs(v - j) <= tol) return "+J";
    if (std::abs(v + j) <= tol) return "-J";
    if (std::abs(v - jp) <= tol) return "+J'";
    if (std::abs(v + jp) <= tol) return "-J'";
    if (std::abs(v - (j + jp)) <= tol) return "J+J'";
    return "?";
}

}  // namespace

ZeroTextureReport zero_texture_analysis(const ComplexMatrix& x, double tol, double vanish_tol) {
    if (!x.is_square() || x.rows() != 4) {
        throw DomainError("zero_texture_analysis: needs a 4x4 matrix");
    }

    std::vector<IndexPair> zeros;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (std::abs(x(r, c)) <= tol) {
                zeros.push_back({r, c});
            }
        }
    }
    auto listing = [&] {
        std::string s;
        for (const auto& z : zeros) {
            s += (s.empty() ? "" : ", ") + element_label(z.first, z.second);
        }
        return s.empty() ? std::string("none") : s;
    };
    if (zeros.size() != 2) {
        throw DomainError("zero texture needs exactly two vanishing entries, found " + std::to_string(zeros.size()) +
                          ": " + listing());
    }
    if (zeros[0].first == zeros[1].first || zeros[0].second == zeros[1].second) {
        throw DomainError("vanishing entries share a row or column: " + listing());
    }

    ZeroTextureReport rep;
    rep.zeros = {zeros[0], zeros[1]};

    // Report frame: first zero row to the top, its column to the right;
    // second zero row to the bottom, its column to the left.
    const auto [ra, ca] = zeros[0];
    const auto [rb, cb] = zeros[1];
    std::size_t ri = 1;
    std::size_t ci = 1;
    rep.row_perm = {ra, 0, 0, rb};
    rep.col_perm = {cb, 0, 0, ca};
    for (std::size_t t = 0; t < 4; ++t) {
        if (t != ra && t != rb) rep.row_perm[ri++] = t;
        if (t != ca && t != cb) rep.col_perm[ci++] = t;
    }
    const auto frame = permute(x, rep.row_perm, rep.col_perm);

    const auto table = plaquette_table(frame);
    auto im = [&](int r1, int r2, int c1, int c2) {
        return table.im({std::size_t(r1 - 1), std::size_t(r2 - 1)}, {std::size_t(c1 - 1), std::size_t(c2 - 1)});
    };
    rep.J = im(1, 2, 1, 2);
    rep.J_prime = im(3, 4, 3, 4);
    rep.ratio = rep.J_prime / rep.J;
    rep.p2323 = im(2, 3, 2, 3);

    for (const auto& p : table.entries()) {
        if (std::abs(p.im()) <= vanish_tol) {
            ++rep.vanishing_count;
        }
        rep.sign_pattern.push_back({p.rows, p.cols, p.im(), label_for(p.im(), rep.J, rep.J_prime, vanish_tol)});
    }

    rep.chain_j = {-im(1, 2, 1, 3), im(1, 2, 2, 3), -im(1, 3, 1, 2), im(1, 3, 1, 3),
                   -im(1, 3, 2, 3), im(2, 3, 1, 2), -im(2, 3, 1, 3)};
    rep.chain_j_prime = {-im(2, 3, 2, 4), im(2, 3, 3, 4), -im(2, 4, 2, 3), im(2, 4, 2, 4),
                         -im(2, 4, 3, 4), im(3, 4, 2, 3), -im(3, 4, 2, 4)};

    auto m2 = [&](int r, int c) { return std::norm(frame(r - 1, c - 1)); };
    auto sq = [](double v) { return v * v; };
    rep.modulus_ratios = {
        sq(rep.ratio),
        m2(2, 4) * m2(3, 4) / (m2(2, 1) * m2(3, 1)),
        m2(4, 2) * m2(4, 3) / (m2(1, 2) * m2(1, 3)),
        sq((m2(2, 4) + m2(3, 4)) / (m2(1, 2) + m2(1, 3))),
        sq((m2(4, 2) + m2(4, 3)) / (m2(2, 1) + m2(3, 1))),
    };

    for (const auto& poly : triangle_areas(frame, tol)) {
        if (poly.is_triangle()) {
            rep.triangles.push_back(poly);
        }
    }

    // Swapping rows 1↔3 and columns 1↔3 moves the zeros to (3,4), (4,3), where
    // the recursive chain forces y₃ = 0 and x₁y₁* + x₂y₂* = 0.
    constexpr std::array<std::size_t, 4> swap13{2, 1, 0, 3};
    const auto recursive_frame = permute(frame, swap13, swap13);
    const auto d = gauge_fix(reorder_chain(decompose(recursive_frame), ascending_orders(4)));
    const double t2 = d.factor_of_order(2).theta;
    const double t3 = d.factor_of_order(3).theta;
    const double t4 = d.factor_of_order(4).theta;
    const auto& xv = d.factor_of_order(3).chr;
    const auto& yv = d.factor_of_order(4).chr;
    rep.thetas = {t2, t3, t4};

    const double common = std::cos(t2) * std::cos(t3) * std::cos(t4) * std::sin(t2) * (std::conj(xv[0]) * xv[1]).imag();
    rep.J_closed = common * sq(std::sin(t3));
    rep.J_prime_closed = -common * sq(std::sin(t4));
    rep.ratio_closed = -sq(std::sin(t4)) / sq(std::sin(t3));
    rep.y3_modulus = std::abs(yv[2]);
    rep.y1_minus_x2 = std::abs(yv[0]) - std::abs(xv[1]);
    rep.y2_minus_x1 = std::abs(yv[1]) - std::abs(xv[0]);
    return rep;
}

}  // namespace unirec
