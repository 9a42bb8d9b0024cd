#include "unirec/symmetric.hpp"

#include <cmath>
#include <string>

#include "unirec/errors.hpp"
#include "unirec/recursive.hpp"

namespace unirec {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_unit(const std::vector<double>& xs, const char* what) {
    double s = 0.0;
    for (double v : xs) {
        if (!std::isfinite(v)) {
            throw DomainError(std::string(what) + ": component is not finite");
        }
        s += v * v;
    }
    if (std::abs(std::sqrt(s) - 1.0) > CharVector::kNormTolerance) {
        throw DomainError(std::string(what) + ": real characteristic vector is not normalised");
    }
}

}  // namespace

void SymmetricParams::validate() const {
    if (n < 2) {
        throw DomainError("symmetric construction needs n >= 2");
    }
    if (thetas.size() != n - 1 || real_chars.size() != n - 1) {
        throw DomainError("symmetric parameters need " + std::to_string(n - 1) + " angles and vectors");
    }
    for (std::size_t k = 2; k <= n; ++k) {
        if (!std::isfinite(thetas[k - 2])) {
            throw DomainError("symmetric angle is not finite");
        }
        if (real_chars[k - 2].size() != k - 1) {
            throw DomainError("order-" + std::to_string(k) + " real vector must have length " + std::to_string(k - 1));
        }
        require_unit(real_chars[k - 2], "SymmetricParams");
    }
}

std::size_t sym_param_count(std::size_t n) {
    if (n < 2) {
        throw DomainError("sym_param_count: n must be at least 2");
    }
    return n * (n - 1) / 2;
}

std::size_t real_parameter_count(const SymmetricParams& p) {
    p.validate();
    std::size_t count = p.thetas.size();
    for (const auto& x : p.real_chars) {
        count += x.size() - 1;
    }
    return count;
}

ComplexMatrix sym_factor(std::size_t k, double theta, const std::vector<double>& xs, std::size_t n) {
    if (xs.size() + 1 != k) {
        throw DomainError("sym_factor: order-" + std::to_string(k) + " factor needs " + std::to_string(k - 1) +
                          " components");
    }
    require_unit(xs, "sym_factor");
    // With a = i·x the leading block is I − (1−c)x xᵀ, so entry (i, j) and
    // (j, i) are both −(1−c)x_i x_j and the last row equals the last column.
    std::vector<Complex> chr(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        chr[i] = kI * xs[i];
    }
    return embed(Factor{n, k, theta, CharVector(std::move(chr))});
}

ComplexMatrix compose_symmetric(const SymmetricParams& p) {
    p.validate();
    const double scale = p.half_angle ? 0.5 : 1.0;
    std::vector<ComplexMatrix> outer;
    for (std::size_t k = 2; k < p.n; ++k) {
        outer.push_back(sym_factor(k, scale * p.thetas[k - 2], p.real_chars[k - 2], p.n));
    }
    auto v = ComplexMatrix::identity(p.n);
    for (const auto& f : outer) {
        v = v * f;
    }
    v = v * sym_factor(p.n, p.thetas.back(), p.real_chars.back(), p.n);
    for (auto it = outer.rbegin(); it != outer.rend(); ++it) {
        v = v * *it;
    }
    return v;
}

ComplexMatrix v3sym_closed(double theta2, double theta3, std::array<double, 2> xs) {
    require_unit({xs[0], xs[1]}, "v3sym_closed");
    const double c2 = std::cos(theta2);
    const double s2 = std::sin(theta2);
    const double c3 = std::cos(theta3);
    const double s3 = std::sin(theta3);
    const double ch = std::cos(theta2 / 2.0);
    const double sh = std::sin(theta2 / 2.0);
    const Complex u1 = ch * xs[0] + kI * sh * xs[1];
    const Complex u2 = ch * xs[1] + kI * sh * xs[0];
    const Complex off = kI * s2 - (1.0 - c3) * u1 * u2;
    return ComplexMatrix{
        {c2 - (1.0 - c3) * u1 * u1, off, kI * s3 * u1},
        {off, c2 - (1.0 - c3) * u2 * u2, kI * s3 * u2},
        {kI * s3 * u1, kI * s3 * u2, c3},
    };
}

ComplexMatrix a4prime(double theta2, double theta4, std::array<double, 3> ys) {
    require_unit({ys[0], ys[1], ys[2]}, "a4prime");
    const double c2 = std::cos(theta2);
    const double s2 = std::sin(theta2);
    const double c4 = std::cos(theta4);
    const double s4 = std::sin(theta4);
    const double ch = std::cos(theta2 / 2.0);
    const double sh = std::sin(theta2 / 2.0);
    const std::array<Complex, 3> v{ch * ys[0] - kI * sh * ys[1], ch * ys[1] - kI * sh * ys[0], ys[2]};

    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            m(i, j) = (i == j ? 1.0 : 0.0) - (1.0 - c4) * v[i] * v[j];
        }
        m(i, 3) = kI * s4 * v[i];
        m(3, i) = kI * s4 * v[i];
    }
    m(3, 3) = c4;
    // The leading 2x2 identity becomes the rotation [[c₂, −is₂], [−is₂, c₂]].
    m(0, 0) += c2 - 1.0;
    m(1, 1) += c2 - 1.0;
    m(0, 1) -= kI * s2;
    m(1, 0) -= kI * s2;
    return m;
}

double j_sym_n3(double theta2, double theta3, std::array<double, 2> xs) {
    require_unit({xs[0], xs[1]}, "j_sym_n3");
    const double s3 = std::sin(theta3);
    return std::cos(theta2) * std::cos(theta3) * std::sin(theta2) * s3 * s3 * xs[0] * xs[1];
}

}  // namespace unirec
