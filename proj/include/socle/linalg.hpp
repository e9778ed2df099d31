#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace socle {

using Complex = std::complex<double>;

/// Thrown on shape mismatches and other caller errors.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative kernel fails to converge or a certificate
/// cannot be validated numerically.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numeric thresholds shared by every module.
///
/// rank_tol      relative cutoff for pivot/singular-value decisions
/// cluster_tol   absolute radius when merging nearby spectral values
/// residual_tol  acceptance threshold for certificates and reconstructions
struct Tolerance {
    double rank_tol = 1e-9;
    double cluster_tol = 1e-6;
    double residual_tol = 1e-8;

    void validate() const {
        if (!(rank_tol > 0) || !(cluster_tol > 0) || !(residual_tol > 0))
            throw DimensionError("tolerances must be strictly positive");
        if (!(cluster_tol > rank_tol))
            throw DimensionError("cluster_tol must exceed rank_tol");
    }
};

/// Dense complex matrix, row-major. The universal numeric carrier.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(const std::vector<Complex>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(Complex s) const;
    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    /// Verifies shape/finiteness invariants; throws on violation.
    void validate() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(Complex s, const ComplexMatrix& m);

/// Eigenvalues with algebraic multiplicity, order unspecified.
/// Hessenberg reduction followed by Wilkinson-shifted QR; iteration cap
/// 50*dim sweeps.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Number of pivots above rank_tol relative to the leading pivot
/// (column-pivoted QR).
std::size_t numerical_rank(const ComplexMatrix& m, const Tolerance& tol);

/// Solves a*x = b for square a. Returns nullopt when a is numerically
/// singular at rank_tol.
std::optional<ComplexMatrix> solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                                          const Tolerance& tol);

/// Inverse of a square matrix; nullopt when singular.
std::optional<ComplexMatrix> inverse(const ComplexMatrix& a, const Tolerance& tol);

/// Minimum-residual solution of a*x = b for a of any shape (Householder
/// least squares). Always returns a value; residual is the caller's
/// business.
ComplexMatrix least_squares(const ComplexMatrix& a, const ComplexMatrix& b);

/// Single-linkage clustering of spectral values at radius cluster_tol.
/// Representatives are cluster means; counts sum to the input size.
std::vector<std::pair<Complex, std::size_t>> cluster_spectrum(const std::vector<Complex>& values,
                                                              const Tolerance& tol);

enum class ContourWeight { One, InverseAlpha };

/// Trapezoid quadrature of (1/2*pi*i) * integral of w(alpha) * inv(alpha*1 - m)
/// over the circle |alpha - center| = radius. Throws NumericError when the
/// contour hits the spectrum (a node resolvent is singular).
ComplexMatrix contour_resolvent_integral(const ComplexMatrix& m, Complex center, double radius,
                                         ContourWeight weight, std::size_t nodes,
                                         const Tolerance& tol);

/// Column-pivoted QR rank factorization helpers.
struct QrPivoted {
    ComplexMatrix q;             // rows x rows, unitary
    ComplexMatrix r;             // rows x cols, upper triangular up to pivoting
    std::vector<std::size_t> piv;  // column permutation: column k of q*r is column piv[k] of input
    std::size_t rank;            // pivots above rank_tol * |r00|
};

QrPivoted qr_column_pivoted(const ComplexMatrix& m, const Tolerance& tol);

/// Orthonormal basis of the column space (first `rank` columns of Q).
ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol);

/// Basis of the null space as columns; empty matrix (n x 0) when trivial.
ComplexMatrix null_basis(const ComplexMatrix& m, const Tolerance& tol);

/// Concatenate columns of two matrices with equal row counts.
ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace socle
