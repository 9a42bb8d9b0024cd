#include <cmath>
#include <string>

#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"

namespace unirec {

namespace {

constexpr double kUnitScalarTolerance = 1e-12;

// Ascending chain of dimension n whose order-2 scalar is 1.
void require_reference_frame(const Decomposition& d, std::size_t n, const char* op) {
    d.validate();
    if (d.ambient_n != n) {
        throw DomainError(std::string(op) + ": needs n = " + std::to_string(n) + ", got " +
                          std::to_string(d.ambient_n));
    }
    if (d.order() != FactorOrder::Ascending) {
        throw PreconditionError(std::string(op) + ": factors must be in ascending order");
    }
    if (std::abs(d.factor_of_order(2).chr[0] - Complex{1.0}) > kUnitScalarTolerance) {
        throw PreconditionError(std::string(op) + ": order-2 characteristic scalar must be 1 (apply gauge_fix)");
    }
}

double phase_of(const Complex& z) { return std::arg(z); }

struct Trig {
    double c;
    double s;
    explicit Trig(double theta) : c(std::cos(theta)), s(std::sin(theta)) {}
};

}  // namespace

OmegaSet omega_from_params(const Decomposition& d) {
    d.validate();
    if (d.ambient_n != 4 && d.ambient_n != 5) {
        throw DomainError("omega_from_params: only n = 4 and n = 5 are supported");
    }
    require_reference_frame(d, d.ambient_n, "omega_from_params");

    const auto& x = d.factor_of_order(3).chr;
    const auto& y = d.factor_of_order(4).chr;
    OmegaSet out{d.ambient_n, {}};
    if (d.ambient_n == 4) {
        out.omegas = {
            phase_of(x[1]) - phase_of(x[0]),
            phase_of(y[1]) - phase_of(y[0]),
            phase_of(x[1]) + phase_of(y[2]) - phase_of(y[1]),
        };
    } else {
        const auto& z = d.factor_of_order(5).chr;
        out.omegas = {
            phase_of(x[1]) - phase_of(x[0]),
            phase_of(y[1]) - phase_of(y[0]),
            phase_of(z[1]) - phase_of(z[0]),
            phase_of(x[1]) + phase_of(y[2]) - phase_of(y[1]),
            phase_of(x[1]) + phase_of(z[2]) - phase_of(z[1]),
            phase_of(y[2]) + phase_of(z[3]) - phase_of(z[2]),
        };
    }
    for (auto& w : out.omegas) {
        w = canonical_angle(w);
    }
    return out;
}

Decomposition apply_symmetry(const Decomposition& d, Symmetry which, double phase) {
    d.validate();
    const std::size_t k = which == Symmetry::S1 ? 3 : which == Symmetry::S2 ? 4 : 5;
    const bool supported = (d.ambient_n == 4 && k <= 4) || (d.ambient_n == 5 && k <= 5);
    if (!supported) {
        throw DomainError("apply_symmetry: symmetry not defined for n = " + std::to_string(d.ambient_n));
    }
    if (d.order() != FactorOrder::Ascending) {
        throw PreconditionError("apply_symmetry: factors must be in ascending order");
    }

    Decomposition out = d;
    const Complex forward = std::polar(1.0, phase);
    const Complex backward = std::conj(forward);
    for (auto& f : out.factors) {
        std::vector<Complex> c(f.chr.components().begin(), f.chr.components().end());
        if (f.order == k) {
            for (auto& z : c) {
                z *= forward;
            }
        } else if (f.order > k) {
            c[k - 1] *= backward;
        } else {
            continue;
        }
        f.chr = CharVector(std::move(c));
    }
    return out;
}

double closed_form_j_n3(const Decomposition& d) {
    require_reference_frame(d, 3, "closed_form_j_n3");
    const Trig t2(d.factor_of_order(2).theta);
    const Trig t3(d.factor_of_order(3).theta);
    const auto& x = d.factor_of_order(3).chr;
    return t2.c * t3.c * t2.s * t3.s * t3.s * (std::conj(x[0]) * x[1]).imag();
}

ClosedFormsN4 closed_forms_n4(const Decomposition& d) {
    require_reference_frame(d, 4, "closed_forms_n4");
    const Trig t3(d.factor_of_order(3).theta);
    const Trig t4(d.factor_of_order(4).theta);
    const auto& x = d.factor_of_order(3).chr;
    const auto& y = d.factor_of_order(4).chr;
    const auto w = omega_from_params(d).omegas;

    const double x1y1 = std::abs(x[0]) * std::abs(y[0]);
    const double x2y2 = std::abs(x[1]) * std::abs(y[1]);
    const double y3 = std::abs(y[2]);

    ClosedFormsN4 out;
    out.p3434 = t3.c * t4.c * t3.s * t4.s * t4.s * y3 *
                (x2y2 * std::sin(w[2]) + x1y1 * std::sin(w[2] + w[1] - w[0]));
    out.p3424 = t4.c * t3.s * t4.s * t4.s * x2y2 * (t3.s * x1y1 * std::sin(w[0] - w[1]) - t3.c * y3 * std::sin(w[2]));
    return out;
}

}  // namespace unirec
