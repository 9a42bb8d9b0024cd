#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"

namespace unirec {

PanelLattice::PanelLattice(std::size_t n, std::vector<Complex> panels) : n_(n), panels_(std::move(panels)) {
    if (n < 2 || panels_.size() != (n - 1) * (n - 1)) {
        throw ShapeError("panel lattice needs (n-1)^2 panels");
    }
}

PanelLattice panel_lattice(const ComplexMatrix& x) {
    if (!x.is_square() || x.rows() < 2) {
        throw ShapeError("panel_lattice: needs a square matrix with n >= 2");
    }
    const std::size_t side = x.rows() - 1;
    std::vector<Complex> panels;
    panels.reserve(side * side);
    for (std::size_t a = 0; a < side; ++a) {
        for (std::size_t b = 0; b < side; ++b) {
            panels.push_back(plaquette(x, {a, a + 1}, {b, b + 1}).value);
        }
    }
    return PanelLattice(x.rows(), std::move(panels));
}

namespace {

// The six relations in coefficient form:  lhs_J − coef_mid·mid_J = coef_basis·basis_J.
// Panel labels are 1-based. q[r] is the squared-modulus product dividing relation r.
struct PanelRelations {
    const PanelLattice& p;
    double q[6];

    double J(int a, int b) const { return p.j(a - 1, b - 1); }
    double R(int a, int b) const { return p.r(a - 1, b - 1); }

    // Rows (1,2): J13 − a1·J12 = b1·J11
    double a1() const { return 1.0 + R(1, 1) / q[0]; }
    double b1() const { return R(1, 2) / q[0]; }
    // Columns (3,4): J13 − a2·J23 = b2·J33
    double a2() const { return 1.0 + R(3, 3) / q[1]; }
    double b2() const { return R(2, 3) / q[1]; }
    // Columns (1,2): J31 − a3·J21 = b3·J11
    double a3() const { return 1.0 + R(1, 1) / q[2]; }
    double b3() const { return R(2, 1) / q[2]; }
    // Rows (3,4): J31 − a4·J32 = b4·J33
    double a4() const { return 1.0 + R(3, 3) / q[3]; }
    double b4() const { return R(3, 2) / q[3]; }
    // Columns (2,3): J12 − d5·J32 = e5·J22
    double d5() const { return R(2, 2) / q[4]; }
    double e5() const { return 1.0 + R(3, 2) / q[4]; }
    // Rows (2,3): J21 − d6·J23 = e6·J22
    double d6() const { return R(2, 2) / q[5]; }
    double e6() const { return 1.0 + R(2, 3) / q[5]; }

    std::array<double, 6> residuals() const {
        return {
            J(1, 3) - a1() * J(1, 2) - b1() * J(1, 1),
            J(1, 3) - a2() * J(2, 3) - b2() * J(3, 3),
            J(3, 1) - a3() * J(2, 1) - b3() * J(1, 1),
            J(3, 1) - a4() * J(3, 2) - b4() * J(3, 3),
            J(1, 2) - d5() * J(3, 2) - e5() * J(2, 2),
            J(2, 1) - d6() * J(2, 3) - e6() * J(2, 2),
        };
    }
};

PanelRelations make_relations(const ComplexMatrix& x, const PanelLattice& lattice, double vanish_tol) {
    if (!x.is_square() || x.rows() != 4) {
        throw DomainError("panel relations are defined for 4x4 matrices only");
    }
    // 1-based element labels entering the denominators.
    static constexpr int kDenominators[6][2][2] = {
        {{1, 2}, {2, 2}}, {{3, 3}, {3, 4}}, {{2, 1}, {2, 2}},
        {{3, 3}, {4, 3}}, {{3, 2}, {3, 3}}, {{2, 3}, {3, 3}},
    };
    PanelRelations rel{lattice, {}};
    for (int r = 0; r < 6; ++r) {
        double q = 1.0;
        for (const auto& e : kDenominators[r]) {
            const double m = std::abs(x(e[0] - 1, e[1] - 1));
            if (!(m > vanish_tol)) {
                throw PreconditionError("panel relations divide by V" + std::to_string(e[0]) + std::to_string(e[1]) +
                                        " which vanishes (|V| = " + std::to_string(m) + ")");
            }
            q *= m * m;
        }
        rel.q[r] = q;
    }
    return rel;
}

}  // namespace

std::array<double, 6> panel_relation_residuals(const ComplexMatrix& x, double vanish_tol) {
    const auto lattice = panel_lattice(x);
    return make_relations(x, lattice, vanish_tol).residuals();
}

double BasisSolveResult::max_error() const {
    double m = 0.0;
    for (const auto& v : values) {
        m = std::max(m, std::abs(v.solved - v.direct));
    }
    return m;
}

BasisSolveResult basis_solve_n4(const ComplexMatrix& x, double vanish_tol) {
    const auto lattice = panel_lattice(x);
    const auto rel = make_relations(x, lattice, vanish_tol);

    const double j11 = rel.J(1, 1);
    const double j22 = rel.J(2, 2);
    const double j33 = rel.J(3, 3);

    // Substituting J12 (relation 5) and J21 (relation 6) into the two pairs
    // sharing J13 and J31 leaves a 2x2 system in (J32, J23):
    //   a1 d5 J32 − a2 J23      = b2 J33 − b1 J11 − a1 e5 J22
    //  −a4 J32    + a3 d6 J23   = b4 J33 − b3 J11 − a3 e6 J22
    const double m11 = rel.a1() * rel.d5();
    const double m12 = -rel.a2();
    const double m21 = -rel.a4();
    const double m22 = rel.a3() * rel.d6();
    const double rhs1 = rel.b2() * j33 - rel.b1() * j11 - rel.a1() * rel.e5() * j22;
    const double rhs2 = rel.b4() * j33 - rel.b3() * j11 - rel.a3() * rel.e6() * j22;

    BasisSolveResult out;
    out.determinant = m11 * m22 - m12 * m21;
    out.relation_residuals = rel.residuals();
    const double scale = std::abs(m11 * m22) + std::abs(m12 * m21);
    out.solvable = std::abs(out.determinant) > 1e-12 * scale && scale > 0.0;

    auto set = [&](std::size_t slot, int a, int b, double solved) {
        out.values[slot] = PanelSolution{static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1), solved,
                                         rel.J(a, b)};
    };
    if (!out.solvable) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        set(0, 1, 2, nan);
        set(1, 1, 3, nan);
        set(2, 2, 1, nan);
        set(3, 2, 3, nan);
        set(4, 3, 1, nan);
        set(5, 3, 2, nan);
        return out;
    }

    const double j32 = (rhs1 * m22 - m12 * rhs2) / out.determinant;
    const double j23 = (m11 * rhs2 - rhs1 * m21) / out.determinant;
    const double j12 = rel.d5() * j32 + rel.e5() * j22;
    const double j21 = rel.d6() * j23 + rel.e6() * j22;
    const double j13 = rel.a1() * j12 + rel.b1() * j11;
    const double j31 = rel.a3() * j21 + rel.b3() * j11;

    set(0, 1, 2, j12);
    set(1, 1, 3, j13);
    set(2, 2, 1, j21);
    set(3, 2, 3, j23);
    set(4, 3, 1, j31);
    set(5, 3, 2, j32);
    return out;
}

}  // namespace unirec
