#include "unirec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "unirec/errors.hpp"

namespace unirec {

namespace {

void require_finite(const Complex& z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("matrix entry is not finite");
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

void require_square(const ComplexMatrix& a, const char* op) {
    if (!a.is_square()) {
        throw ShapeError(std::string(op) + ": matrix is not square");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    std::ranges::for_each(data_, require_finite);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw ShapeError("ragged initializer list");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    std::ranges::for_each(data_, require_finite);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t row, std::size_t col, std::size_t rows,
                                   std::size_t cols) const {
    if (row + rows > rows_ || col + cols > cols_) {
        throw ShapeError("block out of range");
    }
    ComplexMatrix b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            b(i, j) = (*this)(row + i, col + j);
        }
    }
    return b;
}

void ComplexMatrix::set_block(std::size_t row, std::size_t col, const ComplexMatrix& b) {
    if (row + b.rows() > rows_ || col + b.cols() > cols_) {
        throw ShapeError("block out of range");
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            (*this)(row + i, col + j) = b(i, j);
        }
    }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+");
    std::ranges::transform(data_, o.data_, data_.begin(), std::plus<>{});
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-");
    std::ranges::transform(data_, o.data_, data_.begin(), std::minus<>{});
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = std::conj(a(i, j));
        }
    }
    return t;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_norm_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double unitarity_defect(const ComplexMatrix& a) {
    require_square(a, "unitarity_defect");
    const auto id = ComplexMatrix::identity(a.rows());
    const auto ad = dagger(a);
    return std::max(max_norm_diff(a * ad, id), max_norm_diff(ad * a, id));
}

bool is_unitary(const ComplexMatrix& a, double tol) { return unitarity_defect(a) <= tol; }

bool is_hermitian(const ComplexMatrix& a, double tol) {
    require_square(a, "is_hermitian");
    return max_norm_diff(a, dagger(a)) <= tol;
}

bool is_symmetric(const ComplexMatrix& a, double tol) {
    require_square(a, "is_symmetric");
    return max_norm_diff(a, transpose(a)) <= tol;
}

Complex trace(const ComplexMatrix& a) {
    require_square(a, "trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

Complex determinant(const ComplexMatrix& a) {
    require_square(a, "determinant");
    ComplexMatrix lu = a;
    const std::size_t n = a.rows();
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) {
                pivot = r;
            }
        }
        if (lu(pivot, col) == Complex{0.0}) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(pivot, j), lu(col, j));
            }
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu(r, col) / lu(col, col);
            for (std::size_t j = col; j < n; ++j) {
                lu(r, j) -= f * lu(col, j);
            }
        }
    }
    return det;
}

ComplexMatrix permute(const ComplexMatrix& a, std::span<const std::size_t> row_perm,
                      std::span<const std::size_t> col_perm) {
    if (row_perm.size() != a.rows() || col_perm.size() != a.cols()) {
        throw ShapeError("permute: permutation length does not match matrix shape");
    }
    auto is_permutation = [](std::span<const std::size_t> p) {
        std::vector<std::size_t> sorted(p.begin(), p.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != i) return false;
        }
        return true;
    };
    if (!is_permutation(row_perm) || !is_permutation(col_perm)) {
        throw DomainError("permute: indices are not a permutation");
    }
    ComplexMatrix p(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            p(i, j) = a(row_perm[i], col_perm[j]);
        }
    }
    return p;
}

double canonical_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(phi, two_pi);
    if (r <= -std::numbers::pi) {
        r += two_pi;
    }
    return r;
}

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
    for (double p : phases_) {
        if (!std::isfinite(p)) {
            throw DomainError("phase is not finite");
        }
    }
}

bool PhaseVector::all_zero() const {
    return std::ranges::all_of(phases_, [](double p) { return p == 0.0; });
}

PhaseVector PhaseVector::canonical() const {
    std::vector<double> out(phases_.size());
    std::ranges::transform(phases_, out.begin(), canonical_angle);
    return PhaseVector(std::move(out));
}

ComplexMatrix phase_matrix(const PhaseVector& p) {
    std::vector<Complex> d(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        d[j] = std::polar(1.0, p[j]);
    }
    return ComplexMatrix::diagonal(d);
}

ComplexMatrix haar_random(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("haar_random: n must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);

    ComplexMatrix z(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = {re, im};
        }
    }

    // Modified Gram-Schmidt on columns, two passes; r_diag holds R_jj.
    ComplexMatrix q = z;
    std::vector<Complex> r_diag(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    proj += std::conj(q(i, p)) * q(i, j);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    q(i, j) -= proj * q(i, p);
                }
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += std::norm(q(i, j));
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) {
            q(i, j) /= norm;
        }
        // R_jj = <q_j, z_j>
        Complex rjj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rjj += std::conj(q(i, j)) * z(i, j);
        }
        r_diag[j] = rjj;
    }

    for (std::size_t j = 0; j < n; ++j) {
        const Complex phase = r_diag[j] / std::abs(r_diag[j]);
        for (std::size_t i = 0; i < n; ++i) {
            q(i, j) *= phase;
        }
    }
    return q;
}

}  // namespace unirec
