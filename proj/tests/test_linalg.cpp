#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "socle/linalg.hpp"

using namespace socle;
using socle::testing::oracle_eigenvalues;
using socle::testing::spectra_distance;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
    return m;
}

}  // namespace

TEST_CASE("eigenvalues of [[1,2],[3,4]]") {
    ComplexMatrix m(2, 2, {1, 2, 3, 4});
    auto ev = eigenvalues(m);
    REQUIRE(ev.size() == 2);
    const double s = std::sqrt(33.0);
    std::vector<Complex> expected = {(5.0 + s) / 2.0, (5.0 - s) / 2.0};
    CHECK(spectra_distance(ev, expected) < 1e-12);
}

TEST_CASE("eigenvalues match the char-poly oracle on random matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + t % 5;
        ComplexMatrix m = random_matrix(n, rng);
        CHECK(spectra_distance(eigenvalues(m), oracle_eigenvalues(m)) < 1e-8);
    }
}

TEST_CASE("eigenvalues handle defective and repeated spectra") {
    // Jordan block: eigenvalue 2 with multiplicity 3.
    ComplexMatrix j(3, 3, {2, 1, 0, 0, 2, 1, 0, 0, 2});
    auto ev = eigenvalues(j);
    REQUIRE(ev.size() == 3);
    for (const auto& v : ev) CHECK(std::abs(v - Complex(2.0)) < 1e-4);
}

TEST_CASE("numerical rank via column-pivoted QR") {
    Tolerance tol;
    ComplexMatrix m(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
    CHECK(numerical_rank(m, tol) == 2);
    CHECK(numerical_rank(ComplexMatrix::zero(4, 4), tol) == 0);
    CHECK(numerical_rank(ComplexMatrix::identity(5), tol) == 5);
}

TEST_CASE("qr factorization reconstructs the permuted input") {
    std::mt19937_64 rng(7);
    ComplexMatrix m = random_matrix(4, rng);
    Tolerance tol;
    auto qr = qr_column_pivoted(m, tol);
    CHECK(qr.rank == 4);
    ComplexMatrix prod = qr.q * qr.r;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(prod(i, k) - m(i, qr.piv[k])) < 1e-12);
}

TEST_CASE("solve_linear and inverse") {
    Tolerance tol;
    ComplexMatrix a(2, 2, {2, 1, 1, 3});
    ComplexMatrix b(2, 1, {1, 2});
    auto x = solve_linear(a, b, tol);
    REQUIRE(x.has_value());
    CHECK((a * *x - b).frobenius_norm() < 1e-12);

    auto inv = inverse(a, tol);
    REQUIRE(inv.has_value());
    CHECK((a * *inv - ComplexMatrix::identity(2)).frobenius_norm() < 1e-12);

    ComplexMatrix sing(2, 2, {1, 2, 2, 4});
    CHECK(!solve_linear(sing, b, tol).has_value());
    CHECK(!inverse(sing, tol).has_value());
}

TEST_CASE("least_squares minimizes the residual") {
    ComplexMatrix a(3, 2, {1, 0, 0, 1, 1, 1});
    ComplexMatrix b(3, 1, {1, 1, 1});
    ComplexMatrix x = least_squares(a, b);
    // Normal equations: a^H (a x - b) = 0.
    CHECK((a.adjoint() * (a * x - b)).frobenius_norm() < 1e-12);
}

TEST_CASE("cluster_spectrum merges at cluster_tol and preserves counts") {
    Tolerance tol;
    std::vector<Complex> vals = {1.0, 1.0 + 1e-8, 2.0, Complex(0, 3), Complex(1e-9, 3)};
    auto clusters = cluster_spectrum(vals, tol);
    REQUIRE(clusters.size() == 3);
    std::size_t total = 0;
    for (const auto& [v, c] : clusters) total += c;
    CHECK(total == vals.size());
}

TEST_CASE("contour integral recovers a spectral projection") {
    Tolerance tol;
    // diag(1, 1, 3): projection at 1 has trace 2.
    ComplexMatrix m = ComplexMatrix::diagonal({1, 1, 3});
    ComplexMatrix p = contour_resolvent_integral(m, Complex(1.0), 0.5, ContourWeight::One, 64, tol);
    CHECK((p * p - p).frobenius_norm() < 1e-8);
    CHECK(std::abs(p.trace() - Complex(2.0)) < 1e-8);
    CHECK((m * p - p * m).frobenius_norm() < 1e-10);
}

TEST_CASE("contour through the spectrum is rejected") {
    Tolerance tol;
    ComplexMatrix m = ComplexMatrix::diagonal({1, 2});
    CHECK_THROWS_AS(
        contour_resolvent_integral(m, Complex(1.0), 1.0, ContourWeight::One, 64, tol),
        NumericError);
}

TEST_CASE("range and null bases") {
    Tolerance tol;
    ComplexMatrix m(3, 3, {1, 0, 1, 0, 1, 1, 0, 0, 0});
    ComplexMatrix r = range_basis(m, tol);
    CHECK(r.cols() == 2);
    CHECK((r.adjoint() * r - ComplexMatrix::identity(2)).frobenius_norm() < 1e-12);
    ComplexMatrix n = null_basis(m, tol);
    CHECK(n.cols() == 1);
    CHECK((m * n).frobenius_norm() < 1e-12);
}

TEST_CASE("shape mismatches throw DimensionError") {
    ComplexMatrix a(2, 3), b(2, 2);
    CHECK_THROWS_AS((void)(a * a), DimensionError);
    CHECK_THROWS_AS((void)(a + b), DimensionError);
    CHECK_THROWS_AS(eigenvalues(a), DimensionError);
}
