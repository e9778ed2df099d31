#include "socle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

namespace socle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in +");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in -");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("shape mismatch in *");
    ComplexMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += aik * o(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
    return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!square()) throw DimensionError("trace of non-square matrix");
    Complex t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0;
    for (const auto& z : data_) s = std::max(s, std::abs(z));
    return s;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void ComplexMatrix::validate() const {
    if (data_.size() != rows_ * cols_) throw DimensionError("entry count mismatch");
    if (!all_finite()) throw NumericError("matrix contains non-finite entries");
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder reduction to Hessenberg form, then single-shift
// QR with the Wilkinson shift and standard deflation.
// ---------------------------------------------------------------------------

namespace {

void hessenberg_reduce(ComplexMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k, rows k+1..n-1.
        double colnorm = 0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0) continue;
        Complex x0 = h(k + 1, k);
        Complex alpha = (std::abs(x0) == 0) ? Complex(-colnorm, 0)
                                            : -(x0 / std::abs(x0)) * colnorm;
        std::vector<Complex> v(n, Complex{});
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vnorm2 = 0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0) continue;
        // H = I - 2 v v* / (v* v);  apply H from both sides.
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0;
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = 0;
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0;
    }
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t m) {
    // Eigenvalue of the trailing 2x2 block closest to h(m,m).
    const Complex a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("eigenvalues: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) throw DimensionError("eigenvalues: empty matrix");
    m.validate();
    if (n == 1) return {m(0, 0)};

    ComplexMatrix h = m;
    hessenberg_reduce(h);

    std::vector<Complex> eig;
    eig.reserve(n);
    const double eps = std::numeric_limits<double>::epsilon();
    const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
    // A bit looser than eps*|diag| alone: a fully shifted step can park a
    // subdiagonal a few ulps above the strict bound and never move it again.
    auto negligible = [&](std::size_t i) {
        const double off = std::abs(h(i, i - 1));
        const double scale = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
        return off <= 16.0 * eps * std::max(scale, eps * hnorm);
    };
    std::size_t hi = n - 1;
    std::size_t sweeps = 0;
    std::size_t stalled = 0;
    const std::size_t cap = 50 * n;

    while (true) {
        // Deflate converged 1x1 blocks from the bottom.
        while (true) {
            if (hi == 0) {
                eig.push_back(h(0, 0));
                return eig;
            }
            if (negligible(hi)) {
                eig.push_back(h(hi, hi));
                --hi;
                stalled = 0;
            } else {
                break;
            }
        }
        if (++sweeps > cap)
            throw NumericError("eigenvalue iteration did not converge for a " +
                               std::to_string(n) + "x" + std::to_string(n) + " matrix");

        // Active block [lo..hi]: walk up until a negligible subdiagonal.
        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;

        // Exceptional shift when the bottom subdiagonal refuses to shrink.
        Complex sigma;
        if (++stalled % 12 == 0) {
            sigma = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0);
        } else {
            sigma = wilkinson_shift(h, hi);
        }

        // Explicit shifted QR step via Givens rotations on the active block.
        const std::size_t blk = hi - lo + 1;
        std::vector<Complex> cs(blk), sn(blk);
        for (std::size_t i = lo; i < hi + 1; ++i) h(i, i) -= sigma;
        for (std::size_t k = lo; k < hi; ++k) {
            const Complex a = h(k, k), b = h(k + 1, k);
            const double r = std::sqrt(std::norm(a) + std::norm(b));
            Complex c = 1, s = 0;
            if (r > 0) {
                c = std::conj(a) / r;
                s = std::conj(b) / r;
            }
            cs[k - lo] = c;
            sn[k - lo] = s;
            for (std::size_t j = k; j <= hi; ++j) {
                const Complex t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = c * t1 + s * t2;
                h(k + 1, j) = -std::conj(s) * t1 + std::conj(c) * t2;
            }
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Complex c = cs[k - lo], s = sn[k - lo];
            const std::size_t top = lo;
            for (std::size_t i = top; i <= std::min(hi, k + 2); ++i) {
                const Complex t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = t1 * std::conj(c) + t2 * std::conj(s);
                h(i, k + 1) = -t1 * s + t2 * c;
            }
        }
        for (std::size_t i = lo; i < hi + 1; ++i) h(i, i) += sigma;
    }
}

// ---------------------------------------------------------------------------
// Column-pivoted Householder QR and everything built on it.
// ---------------------------------------------------------------------------

QrPivoted qr_column_pivoted(const ComplexMatrix& m, const Tolerance& tol) {
    const std::size_t rows = m.rows(), cols = m.cols();
    ComplexMatrix r = m;
    ComplexMatrix q = ComplexMatrix::identity(rows);
    std::vector<std::size_t> piv(cols);
    for (std::size_t j = 0; j < cols; ++j) piv[j] = j;

    std::vector<double> colnorm2(cols);
    auto recompute = [&](std::size_t j, std::size_t from) {
        double s = 0;
        for (std::size_t i = from; i < rows; ++i) s += std::norm(r(i, j));
        colnorm2[j] = s;
    };
    for (std::size_t j = 0; j < cols; ++j) recompute(j, 0);

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t k = 0; k < steps; ++k) {
        // Pivot: bring the column with the largest remaining norm to k.
        std::size_t best = k;
        for (std::size_t j = k; j < cols; ++j) recompute(j, k);
        for (std::size_t j = k + 1; j < cols; ++j)
            if (colnorm2[j] > colnorm2[best]) best = j;
        if (best != k) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(r(i, k), r(i, best));
            std::swap(piv[k], piv[best]);
            std::swap(colnorm2[k], colnorm2[best]);
        }
        const double colnorm = std::sqrt(colnorm2[k]);
        if (colnorm == 0) continue;

        Complex x0 = r(k, k);
        Complex alpha = (std::abs(x0) == 0) ? Complex(-colnorm, 0)
                                            : -(x0 / std::abs(x0)) * colnorm;
        std::vector<Complex> v(rows, Complex{});
        v[k] = x0 - alpha;
        for (std::size_t i = k + 1; i < rows; ++i) v[i] = r(i, k);
        double vnorm2 = 0;
        for (std::size_t i = k; i < rows; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0) continue;
        for (std::size_t j = k; j < cols; ++j) {
            Complex s = 0;
            for (std::size_t i = k; i < rows; ++i) s += std::conj(v[i]) * r(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < rows; ++i) r(i, j) -= v[i] * s;
        }
        for (std::size_t j = 0; j < rows; ++j) {
            Complex s = 0;
            for (std::size_t i = k; i < rows; ++i) s += std::conj(v[i]) * q(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < rows; ++i) q(i, j) -= v[i] * s;
        }
        for (std::size_t i = k + 1; i < rows; ++i) r(i, k) = 0;
    }
    // Accumulated q currently holds Q^H (it was applied to the identity).
    QrPivoted out{q.adjoint(), std::move(r), std::move(piv), 0};
    const double pivot0 = std::abs(out.r(0, 0));
    std::size_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k)
        if (std::abs(out.r(k, k)) > tol.rank_tol * pivot0) ++rank;
    out.rank = (pivot0 == 0) ? 0 : rank;
    return out;
}

std::size_t numerical_rank(const ComplexMatrix& m, const Tolerance& tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return qr_column_pivoted(m, tol).rank;
}

ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol) {
    QrPivoted f = qr_column_pivoted(m, tol);
    ComplexMatrix out(m.rows(), f.rank);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < f.rank; ++j) out(i, j) = f.q(i, j);
    return out;
}

ComplexMatrix null_basis(const ComplexMatrix& m, const Tolerance& tol) {
    const std::size_t n = m.cols();
    QrPivoted f = qr_column_pivoted(m, tol);
    const std::size_t r = f.rank;
    const std::size_t k = n - r;
    ComplexMatrix out(n, k);
    if (k == 0) return out;
    // Solve R11 * X = -R12 by back substitution, null vectors are
    // P * [X; I] column-wise.
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<Complex> x(r, Complex{});
        for (std::size_t ii = r; ii-- > 0;) {
            Complex s = -f.r(ii, r + col);
            for (std::size_t jj = ii + 1; jj < r; ++jj) s -= f.r(ii, jj) * x[jj];
            x[ii] = s / f.r(ii, ii);
        }
        for (std::size_t jj = 0; jj < r; ++jj) out(f.piv[jj], col) = x[jj];
        out(f.piv[r + col], col) = 1.0;
    }
    return out;
}

ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("hcat: row mismatch");
    ComplexMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

std::optional<ComplexMatrix> solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                                          const Tolerance& tol) {
    if (!a.square()) throw DimensionError("solve_linear: coefficient matrix must be square");
    if (a.rows() != b.rows()) throw DimensionError("solve_linear: right-hand-side row mismatch");
    const std::size_t n = a.rows();
    QrPivoted f = qr_column_pivoted(a, tol);
    if (f.rank < n) return std::nullopt;
    // x = P * R^-1 * Q^H * b
    ComplexMatrix y = f.q.adjoint() * b;
    ComplexMatrix x(n, b.cols());
    for (std::size_t col = 0; col < b.cols(); ++col) {
        std::vector<Complex> z(n);
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = y(ii, col);
            for (std::size_t jj = ii + 1; jj < n; ++jj) s -= f.r(ii, jj) * z[jj];
            z[ii] = s / f.r(ii, ii);
        }
        for (std::size_t jj = 0; jj < n; ++jj) x(f.piv[jj], col) = z[jj];
    }
    return x;
}

std::optional<ComplexMatrix> inverse(const ComplexMatrix& a, const Tolerance& tol) {
    return solve_linear(a, ComplexMatrix::identity(a.rows()), tol);
}

ComplexMatrix least_squares(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("least_squares: row mismatch");
    Tolerance tol;  // rank handling only, defaults suffice
    QrPivoted f = qr_column_pivoted(a, tol);
    const std::size_t r = f.rank;
    ComplexMatrix y = f.q.adjoint() * b;
    ComplexMatrix x(a.cols(), b.cols());
    for (std::size_t col = 0; col < b.cols(); ++col) {
        std::vector<Complex> z(r, Complex{});
        for (std::size_t ii = r; ii-- > 0;) {
            Complex s = y(ii, col);
            for (std::size_t jj = ii + 1; jj < r; ++jj) s -= f.r(ii, jj) * z[jj];
            z[ii] = s / f.r(ii, ii);
        }
        for (std::size_t jj = 0; jj < r; ++jj) x(f.piv[jj], col) = z[jj];
    }
    return x;
}

std::vector<std::pair<Complex, std::size_t>> cluster_spectrum(const std::vector<Complex>& values,
                                                              const Tolerance& tol) {
    // Single-linkage merge at radius cluster_tol via union-find.
    const std::size_t n = values.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= tol.cluster_tol) parent[find(i)] = find(j);

    std::vector<std::pair<Complex, std::size_t>> out;
    std::vector<std::size_t> root_index(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (root_index[r] == SIZE_MAX) {
            root_index[r] = out.size();
            out.emplace_back(Complex{}, 0);
        }
        auto& [mean, count] = out[root_index[r]];
        mean += values[i];
        ++count;
    }
    for (auto& [mean, count] : out) mean /= static_cast<double>(count);
    // Deterministic order: by descending magnitude, then by argument.
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const double ma = std::abs(a.first), mb = std::abs(b.first);
        if (std::abs(ma - mb) > 1e-12 * (1.0 + ma + mb)) return ma > mb;
        return std::arg(a.first) < std::arg(b.first);
    });
    return out;
}

ComplexMatrix contour_resolvent_integral(const ComplexMatrix& m, Complex center, double radius,
                                         ContourWeight weight, std::size_t nodes,
                                         const Tolerance& tol) {
    if (!m.square()) throw DimensionError("contour integral: matrix must be square");
    if (nodes == 0) throw DimensionError("contour integral: need at least one node");
    const std::size_t n = m.rows();
    ComplexMatrix acc(n, n);
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    for (std::size_t j = 0; j < nodes; ++j) {
        const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(nodes);
        const Complex offset = radius * Complex(std::cos(theta), std::sin(theta));
        const Complex z = center + offset;
        auto res = solve_linear(z * eye - m, eye, tol);
        if (!res)
            throw NumericError("contour hits spectrum: resolvent singular at a quadrature node");
        Complex w = offset;  // dz/dtheta collapses with the 1/(2 pi i) prefactor
        if (weight == ContourWeight::InverseAlpha) w /= z;
        acc += w * (*res);
    }
    return acc * Complex(1.0 / static_cast<double>(nodes), 0.0);
}

}  // namespace socle
