#include <doctest.h>

#include <cmath>

#include "socle/spectral.hpp"

using namespace socle;

namespace {

Element diag_elem(const AlgebraPtr& alg, const std::vector<std::vector<Complex>>& diags) {
    std::vector<ComplexMatrix> blks;
    for (const auto& d : diags) blks.push_back(ComplexMatrix::diagonal(d));
    return Element(alg, std::move(blks));
}

}  // namespace

TEST_CASE("rank_direct sums per-block matrix ranks") {
    auto alg = Algebra::blocks({2, 3});
    Element a = diag_elem(alg, {{1, 0}, {2, 3, 0}});
    CHECK(rank_direct(a) == 3);
    CHECK(rank_direct(alg->unit()) == 5);
    CHECK(rank_direct(alg->zero_element()) == 0);
}

TEST_CASE("spectral_rank agrees with rank_direct across shapes and seeds") {
    for (auto sizes : std::vector<std::vector<std::size_t>>{{2}, {3}, {2, 1}, {2, 2}}) {
        auto alg = Algebra::blocks(sizes);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Element a = random_element(alg, seed);
            CHECK(spectral_rank(a, 32, seed) == rank_direct(a));
        }
    }
}

TEST_CASE("multiplicity bookkeeping follows the rank identity") {
    auto alg = Algebra::blocks({3, 2});
    // sigma = {1 (x3), 2 (x1), 0 (x1)}
    Element a = diag_elem(alg, {{1, 1, 2}, {1, 0}});
    SpectralData sd = spectral_data(a);
    CHECK(sd.includes_zero);
    CHECK(sd.multiplicity_sum() == rank_of(a) + 1);
    CHECK(multiplicity(a, Complex(1.0)) == 3);
    CHECK(multiplicity(a, Complex(2.0)) == 1);
    CHECK(multiplicity(a, Complex(0.0)) == 1);
    CHECK_THROWS_AS(multiplicity(a, Complex(7.0)), BadSpectralValue);
}

TEST_CASE("riesz projections are idempotent, commute, and resolve the element") {
    auto alg = Algebra::blocks({3});
    Element a = diag_elem(alg, {{1, 2, 3}});
    Element p = riesz_projection(a, {Complex(1.0), Complex(3.0)});
    CHECK((p * p - p).norm() < 1e-10);
    CHECK(p.commutator(a).norm() < 1e-10);
    CHECK(rank_of(p) == 2);
    Element q = riesz_projection(a, {Complex(2.0)});
    CHECK((p * q).norm() < 1e-10);
    CHECK((p + q - alg->unit()).norm() < 1e-10);
}

TEST_CASE("trace matches the classical block trace") {
    auto alg = Algebra::blocks({2, 2});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Element a = random_element(alg, seed);
        Complex classical = 0;
        for (const auto& b : a.blocks()) classical += b.trace();
        CHECK(std::abs(trace(a) - classical) < 1e-8);
    }
}

TEST_CASE("is_maximal_rank and membership in E(a)") {
    auto alg = Algebra::blocks({2});
    Element a = diag_elem(alg, {{1, 2}});       // 2 distinct nonzero values, rank 2
    Element b = diag_elem(alg, {{1, 1}});       // 1 distinct value, rank 2
    CHECK(is_maximal_rank(a));
    CHECK(!is_maximal_rank(b));
    Element x = random_element(alg, 3);
    CHECK(is_in_E(b, x));  // generic x separates the spectrum of x*b
}

TEST_CASE("diagonalize_maximal yields minimal orthogonal projections") {
    auto alg = Algebra::blocks({2, 2});
    Element a = diag_elem(alg, {{1, 2}, {3, 4}});
    auto terms = diagonalize_maximal(a);
    REQUIRE(terms.size() == 4);
    Element sum = alg->zero_element();
    for (const auto& [lambda, p] : terms) {
        CHECK(rank_of(p) == 1);
        CHECK((p * p - p).norm() < 1e-10);
        sum = sum + p * lambda;
    }
    CHECK((sum - a).norm() < 1e-8);
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            CHECK((terms[i].second * terms[j].second).norm() < 1e-10);
}

TEST_CASE("socle_decompose handles non-maximal elements") {
    auto alg = Algebra::blocks({2, 2});
    Element a = diag_elem(alg, {{1, 1}, {1, 0}});  // repeated values, rank 3
    Diagonalization d = socle_decompose(a, 0);
    CHECK(d.terms.size() == rank_of(a));
    Element sum = alg->zero_element();
    for (const auto& [lambda, p] : d.terms) sum = sum + d.u * p * lambda;
    CHECK((sum - a).norm() < 1e-8);
}

TEST_CASE("vn_regular_witness satisfies a*x*a = a") {
    auto alg = Algebra::blocks({3, 1});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Element a = random_element(alg, seed);
        Element x = vn_regular_witness(a, seed);
        CHECK((a * x * a - a).norm() < 1e-8 * std::max(1.0, a.norm()));
    }
    Element zero = alg->zero_element();
    Element xz = vn_regular_witness(zero);
    CHECK((zero * xz * zero - zero).norm() < 1e-12);
}

TEST_CASE("matrix_riesz_projection isolates a generalized eigenspace") {
    Tolerance tol;
    ComplexMatrix m(3, 3, {2, 1, 0, 0, 2, 0, 0, 0, 5});
    ComplexMatrix p = matrix_riesz_projection(m, Complex(2.0), tol);
    CHECK((p * p - p).frobenius_norm() < 1e-10);
    CHECK(std::abs(p.trace() - Complex(2.0)) < 1e-8);
    CHECK((m * p - p * m).frobenius_norm() < 1e-8);
}

TEST_CASE("precondition errors") {
    auto alg = Algebra::blocks({2});
    Element zero = alg->zero_element();
    CHECK_THROWS_AS(diagonalize_maximal(zero), PreconditionError);
    CHECK_THROWS_AS(socle_decompose(zero), PreconditionError);
    Element a = Element(alg, {ComplexMatrix::diagonal({Complex(1), Complex(2)})});
    CHECK_THROWS_AS(riesz_projection(a, {Complex(9.0)}), BadSpectralValue);
}
