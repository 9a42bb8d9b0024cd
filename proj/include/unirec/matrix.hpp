#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace unirec {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kEquality = 1e-12;
}  // namespace tolerance

/**
 * Dense row-major complex matrix.
 *
 * The value type carried through the whole library: unitaries, factors,
 * generators and phase matrices are all ComplexMatrix. Entries are required
 * to be finite; constructors from external data check this.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    /// Copy of the sub-block starting at (row, col).
    ComplexMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
    void set_block(std::size_t row, std::size_t col, const ComplexMatrix& b);

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// Standard product; throws ShapeError when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

/// max |a_ij - b_ij|; ShapeError on mismatched shapes.
double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);

/// max of the max-norms of a·a† − I and a†·a − I.
double unitarity_defect(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& a, double tol = tolerance::kUnitarity);
bool is_hermitian(const ComplexMatrix& a, double tol = tolerance::kEquality);
bool is_symmetric(const ComplexMatrix& a, double tol = tolerance::kEquality);

Complex trace(const ComplexMatrix& a);
/// LU with partial pivoting.
Complex determinant(const ComplexMatrix& a);

/// Row and column permutations: result(i, j) = a(row_perm[i], col_perm[j]).
ComplexMatrix permute(const ComplexMatrix& a, std::span<const std::size_t> row_perm,
                      std::span<const std::size_t> col_perm);

/// Maps an angle to its representative in (−π, π].
double canonical_angle(double phi);

/// Real phases of an external diagonal matrix, in radians.
class PhaseVector {
public:
    PhaseVector() = default;
    explicit PhaseVector(std::size_t n) : phases_(n, 0.0) {}
    explicit PhaseVector(std::vector<double> phases);
    PhaseVector(std::initializer_list<double> phases) : PhaseVector(std::vector<double>(phases)) {}

    std::size_t size() const noexcept { return phases_.size(); }
    double operator[](std::size_t i) const { return phases_[i]; }
    double& operator[](std::size_t i) { return phases_[i]; }
    std::span<const double> values() const noexcept { return phases_; }
    bool all_zero() const;

    /// Each phase mapped into (−π, π].
    PhaseVector canonical() const;

    friend bool operator==(const PhaseVector&, const PhaseVector&) = default;

private:
    std::vector<double> phases_;
};

/// diag(e^{i p_1}, …, e^{i p_n}).
ComplexMatrix phase_matrix(const PhaseVector& p);

/**
 * Haar-distributed random unitary.
 *
 * Ginibre matrix of standard complex Gaussians, orthonormalised by modified
 * Gram-Schmidt, columns rescaled by the phase of the triangular diagonal.
 * Generator: std::mt19937_64 seeded with `seed`.
 */
ComplexMatrix haar_random(std::size_t n, std::uint64_t seed);

}  // namespace unirec
