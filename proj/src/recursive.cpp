#include "unirec/recursive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "unirec/errors.hpp"

namespace unirec {

namespace {

// Below this a peeled column or diagonal is treated as exactly zero.
constexpr double kDegenerate = 64.0 * std::numeric_limits<double>::epsilon();

double euclidean_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

// First `r.rows()` components of v multiplied by r, the rest unchanged.
std::vector<Complex> rotate_leading(const ComplexMatrix& r, std::span<const Complex> v) {
    std::vector<Complex> out(v.begin(), v.end());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < r.cols(); ++j) {
            acc += r(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CharVector / Factor

CharVector::CharVector(std::vector<Complex> components, double norm_tol) : c_(std::move(components)) {
    if (c_.empty()) {
        throw DomainError("characteristic vector must have at least one component");
    }
    for (const auto& z : c_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw DomainError("characteristic vector component is not finite");
        }
    }
    const double norm = euclidean_norm(c_);
    if (std::abs(norm - 1.0) > norm_tol) {
        throw DomainError("characteristic vector is not normalised (norm " + std::to_string(norm) +
                          ")");
    }
}

CharVector CharVector::normalized(std::vector<Complex> components) {
    const double norm = euclidean_norm(components);
    if (!(norm > 0.0)) {
        throw DomainError("cannot normalise a zero characteristic vector");
    }
    for (auto& z : components) {
        z /= norm;
    }
    return CharVector(std::move(components));
}

CharVector CharVector::last_unit(std::size_t len) {
    std::vector<Complex> c(len, 0.0);
    c.back() = 1.0;
    return CharVector(std::move(c));
}

void Factor::validate() const {
    if (order < 2 || order > ambient_n) {
        throw DomainError("factor order " + std::to_string(order) + " outside [2, " +
                          std::to_string(ambient_n) + "]");
    }
    if (chr.size() != order - 1) {
        throw DomainError("order-" + std::to_string(order) + " factor needs a characteristic vector of length " +
                          std::to_string(order - 1) + ", got " + std::to_string(chr.size()));
    }
    if (!std::isfinite(theta)) {
        throw DomainError("factor angle is not finite");
    }
}

// ---------------------------------------------------------------------------
// Blocks and generators

ComplexMatrix block(double theta, const CharVector& a) {
    const std::size_t m = a.size();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix b(m + 1, m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            b(i, j) = (i == j ? 1.0 : 0.0) - (1.0 - c) * a[i] * std::conj(a[j]);
        }
        b(i, m) = s * a[i];
        b(m, i) = -s * std::conj(a[i]);
    }
    b(m, m) = c;
    return b;
}

ComplexMatrix embed(const Factor& f) {
    f.validate();
    auto m = ComplexMatrix::identity(f.ambient_n);
    m.set_block(0, 0, block(f.theta, f.chr));
    return m;
}

Generator::Generator(ComplexMatrix g, double tol) : g_(std::move(g)) {
    if (!g_.is_square()) {
        throw ShapeError("generator must be square");
    }
    if (!is_hermitian(g_, tol)) {
        throw DomainError("generator is not hermitian");
    }
    const auto g2 = g_ * g_;
    const double cube_defect = max_norm_diff(g2 * g_, g_);
    if (cube_defect > tol) {
        throw DomainError("generator violates G^3 = G (defect " + std::to_string(cube_defect) + ")");
    }
    if (std::abs(trace(g_)) > tol || std::abs(trace(g2) - 2.0) > tol) {
        throw DomainError("generator traces must be tr G = 0, tr G^2 = 2");
    }
}

Generator generator(const Factor& f) {
    f.validate();
    const std::size_t m = f.order - 1;
    const Complex i_unit{0.0, 1.0};
    ComplexMatrix g(f.ambient_n, f.ambient_n);
    for (std::size_t r = 0; r < m; ++r) {
        g(r, m) = -i_unit * f.chr[r];
        g(m, r) = i_unit * std::conj(f.chr[r]);
    }
    return Generator(std::move(g));
}

ComplexMatrix exp_generator(double theta, const Generator& g) {
    const auto& gm = g.matrix();
    return ComplexMatrix::identity(g.dim()) + Complex{0.0, std::sin(theta)} * gm -
           (1.0 - std::cos(theta)) * (gm * gm);
}

// ---------------------------------------------------------------------------
// Decomposition

std::vector<std::size_t> Decomposition::order_sequence() const {
    std::vector<std::size_t> seq;
    seq.reserve(factors.size());
    for (const auto& f : factors) {
        seq.push_back(f.order);
    }
    return seq;
}

FactorOrder Decomposition::order() const {
    const auto seq = order_sequence();
    if (std::ranges::is_sorted(seq)) {
        return FactorOrder::Ascending;
    }
    if (std::ranges::is_sorted(seq, std::greater<>{})) {
        return FactorOrder::Descending;
    }
    return FactorOrder::Custom;
}

const Factor& Decomposition::factor_of_order(std::size_t k) const {
    auto it = std::ranges::find(factors, k, &Factor::order);
    if (it == factors.end()) {
        throw StructureError("no factor of order " + std::to_string(k));
    }
    return *it;
}

void Decomposition::validate() const {
    if (ambient_n == 0) {
        throw StructureError("decomposition dimension must be positive");
    }
    if (left_phases.size() != ambient_n || right_phases.size() != ambient_n) {
        throw StructureError("phase vectors must have length n = " + std::to_string(ambient_n));
    }
    if (factors.size() != ambient_n - 1) {
        throw StructureError("expected " + std::to_string(ambient_n - 1) + " factors, got " +
                             std::to_string(factors.size()));
    }
    std::vector<bool> seen(ambient_n + 1, false);
    for (const auto& f : factors) {
        if (f.ambient_n != ambient_n) {
            throw StructureError("factor ambient dimension differs from decomposition dimension");
        }
        f.validate();
        if (seen[f.order]) {
            throw StructureError("duplicate factor of order " + std::to_string(f.order));
        }
        seen[f.order] = true;
    }
}

std::size_t real_parameter_count(const Decomposition& d) {
    d.validate();
    const std::size_t n = d.ambient_n;
    // Raw form: each factor carries θ plus a unit complex vector (2k−2 reals), α ≡ 0.
    // Gauge-fixed form: one phase per factor moved into α, and only α_i + β_j matter.
    std::size_t count = 0;
    if (d.left_phases.all_zero()) {
        for (const auto& f : d.factors) {
            count += 2 * f.order - 2;
        }
        return count + n;
    }
    for (const auto& f : d.factors) {
        count += 2 * f.order - 3;
    }
    return count + 2 * n - 1;
}

std::size_t unremovable_phase_count(const Decomposition& d) {
    std::size_t count = 0;
    for (const auto& f : d.factors) {
        count += f.chr.size() - 1;
    }
    return count;
}

ComplexMatrix compose(const Decomposition& d) {
    d.validate();
    auto x = phase_matrix(d.left_phases);
    for (const auto& f : d.factors) {
        x = x * embed(f);
    }
    return x * phase_matrix(d.right_phases);
}

Decomposition decompose(const ComplexMatrix& x, double tol) {
    if (!x.is_square() || x.rows() == 0) {
        throw ShapeError("decompose: input must be a non-empty square matrix");
    }
    const double defect = unitarity_defect(x);
    if (defect > tol) {
        throw NotUnitaryError("decompose: input is not unitary (defect " + std::to_string(defect) + ")",
                              defect);
    }

    const std::size_t n = x.rows();
    Decomposition d;
    d.ambient_n = n;
    d.left_phases = PhaseVector(n);
    std::vector<double> beta(n, 0.0);

    ComplexMatrix m = x;
    for (std::size_t k = n; k >= 2; --k) {
        const std::size_t last = k - 1;
        std::vector<Complex> column(last);
        for (std::size_t i = 0; i < last; ++i) {
            column[i] = m(i, last);
        }
        const Complex corner = m(last, last);
        const double s = euclidean_norm(column);
        const double c = std::abs(corner);
        const double theta = std::atan2(s, c);
        const double phase = c > kDegenerate ? std::arg(corner) : 0.0;

        CharVector u;
        if (s > kDegenerate) {
            const Complex unphase = std::polar(1.0, -phase);
            for (auto& z : column) {
                z *= unphase;
            }
            u = CharVector::normalized(std::move(column));
        } else {
            u = CharVector::last_unit(last);
        }

        const auto peeled = dagger(block(theta, u)) * m;
        const Complex expected = std::polar(1.0, phase);
        double residual = std::abs(peeled(last, last) - expected);
        for (std::size_t j = 0; j < last; ++j) {
            residual = std::max({residual, std::abs(peeled(last, j)), std::abs(peeled(j, last))});
        }
        if (residual > 10.0 * tol) {
            throw ConsistencyError("decompose: peel of order " + std::to_string(k) +
                                       " left residual " + std::to_string(residual),
                                   residual);
        }

        beta[last] = canonical_angle(phase);
        d.factors.push_back(Factor{n, k, theta, std::move(u)});
        m = peeled.block(0, 0, last, last);
    }
    beta[0] = canonical_angle(std::arg(m(0, 0)));
    d.right_phases = PhaseVector(std::move(beta));
    return d;
}

// ---------------------------------------------------------------------------
// Reordering

std::pair<Factor, Factor> reorder_swap(const Factor& left, const Factor& right) {
    left.validate();
    right.validate();
    if (left.ambient_n != right.ambient_n) {
        throw DomainError("reorder_swap: factors live in different dimensions");
    }
    if (left.order == right.order) {
        throw DomainError("reorder_swap: factors have the same order " + std::to_string(left.order));
    }
    if (left.order < right.order) {
        // A_r A_s = (A_r A_s A_r†) A_r
        Factor moved = right;
        moved.chr = CharVector::normalized(rotate_leading(block(left.theta, left.chr), right.chr.components()));
        return {std::move(moved), left};
    }
    // A_r A_s = A_s (A_s† A_r A_s)
    Factor moved = left;
    moved.chr = CharVector::normalized(
        rotate_leading(dagger(block(right.theta, right.chr)), left.chr.components()));
    return {right, std::move(moved)};
}

std::vector<std::size_t> ascending_orders(std::size_t n) {
    std::vector<std::size_t> v(n > 1 ? n - 1 : 0);
    std::iota(v.begin(), v.end(), std::size_t{2});
    return v;
}

std::vector<std::size_t> descending_orders(std::size_t n) {
    auto v = ascending_orders(n);
    std::ranges::reverse(v);
    return v;
}

Decomposition reorder_chain(const Decomposition& d, std::span<const std::size_t> target) {
    d.validate();
    auto sorted = std::vector<std::size_t>(target.begin(), target.end());
    std::ranges::sort(sorted);
    if (sorted != ascending_orders(d.ambient_n)) {
        throw DomainError("reorder_chain: target is not a permutation of 2.." + std::to_string(d.ambient_n));
    }

    Decomposition out = d;
    auto& seq = out.factors;
    for (std::size_t i = 0; i < target.size(); ++i) {
        std::size_t j = i;
        while (seq[j].order != target[i]) {
            ++j;
        }
        for (; j > i; --j) {
            auto [l, r] = reorder_swap(seq[j - 1], seq[j]);
            seq[j - 1] = std::move(l);
            seq[j] = std::move(r);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gauge fixing
//
// For D = diag(…, e^{iψ} at position k, …):  D·A_k(a)·D† = A_k(e^{−iψ} a).
// D commutes with every lower-order factor and, conjugating a higher-order
// factor, multiplies that factor's component k by e^{iψ}. Pushing D to the
// right end and D† to the left end therefore shifts β_k by +ψ, α_k by −ψ.
// Component k of the order-(k+1) vector is its last one, so orders are fixed
// in ascending sequence.

Decomposition gauge_fix(const Decomposition& d) {
    d.validate();
    Decomposition out = d;
    std::vector<double> alpha(d.left_phases.values().begin(), d.left_phases.values().end());
    std::vector<double> beta(d.right_phases.values().begin(), d.right_phases.values().end());

    for (std::size_t k = 2; k <= d.ambient_n; ++k) {
        auto it = std::ranges::find(out.factors, k, &Factor::order);
        const Complex last = it->chr.back();
        if (last.imag() == 0.0 && last.real() >= 0.0 && (k > 2 || last.real() == 1.0)) {
            continue;
        }
        const double psi = std::abs(last) == 0.0 ? 0.0 : std::arg(last);
        const Complex unphase = std::polar(1.0, -psi);
        const Complex shift = std::polar(1.0, psi);

        std::vector<Complex> comps(it->chr.components().begin(), it->chr.components().end());
        for (auto& z : comps) {
            z *= unphase;
        }
        comps.back() = k == 2 ? Complex{1.0} : Complex{std::abs(last)};
        it->chr = CharVector(std::move(comps));

        for (auto& f : out.factors) {
            if (f.order > k) {
                std::vector<Complex> c(f.chr.components().begin(), f.chr.components().end());
                c[k - 1] *= shift;
                f.chr = CharVector(std::move(c));
            }
        }
        alpha[k - 1] = canonical_angle(alpha[k - 1] - psi);
        beta[k - 1] = canonical_angle(beta[k - 1] + psi);
    }
    out.left_phases = PhaseVector(std::move(alpha));
    out.right_phases = PhaseVector(std::move(beta));
    return out;
}

}  // namespace unirec
