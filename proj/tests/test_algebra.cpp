#include <doctest.h>

#include <cmath>

#include "socle/algebra.hpp"

using namespace socle;

namespace {

Element e_ij(const AlgebraPtr& alg, std::size_t block, std::size_t i, std::size_t j) {
    std::vector<ComplexMatrix> blks;
    for (std::size_t b = 0; b < alg->blocks_pres().sizes.size(); ++b) {
        const std::size_t n = alg->blocks_pres().sizes[b];
        ComplexMatrix m = ComplexMatrix::zero(n, n);
        if (b == block) m(i, j) = 1;
        blks.push_back(std::move(m));
    }
    return Element(alg, std::move(blks));
}

}  // namespace

TEST_CASE("blocks algebra dimensions and unit") {
    auto alg = Algebra::blocks({2, 3});
    CHECK(alg->dim() == 13);
    Element one = alg->unit();
    Element a = random_element(alg, 42);
    CHECK((one * a - a).norm() < 1e-14);
    CHECK((a * one - a).norm() < 1e-14);
}

TEST_CASE("structure presentation validates associativity and the unit") {
    // C^2 with pointwise multiplication.
    StructurePresentation p;
    p.dim = 2;
    p.table.assign(8, 0);
    p.table[(0 * 2 + 0) * 2 + 0] = 1;  // e0*e0 = e0
    p.table[(1 * 2 + 1) * 2 + 1] = 1;  // e1*e1 = e1
    p.unit = {1, 1};
    auto alg = Algebra::structure(p);
    CHECK(alg->dim() == 2);

    // Break associativity: e0*e0 = e1 while e1 acts as before.
    StructurePresentation bad = p;
    bad.table[(0 * 2 + 0) * 2 + 0] = 0;
    bad.table[(0 * 2 + 0) * 2 + 1] = 1;
    CHECK_THROWS(Algebra::structure(bad));

    StructurePresentation bad_unit = p;
    bad_unit.unit = {1, 0};
    CHECK_THROWS(Algebra::structure(bad_unit));
}

TEST_CASE("element arithmetic and coordinates round-trip") {
    auto alg = Algebra::blocks({2, 2});
    Element a = random_element(alg, 1);
    Element b = random_element(alg, 2);
    Element c = a * b - b * a;
    CHECK((a.commutator(b) - c).norm() < 1e-14);
    Element back = Element::from_coords(alg, a.coords());
    CHECK((back - a).norm() < 1e-14);
}

TEST_CASE("spectrum of a diagonal element") {
    auto alg = Algebra::blocks({3});
    Element a(alg, {ComplexMatrix::diagonal({1, 1, 4})});
    Spectrum s = spectrum(a);
    CHECK(s.counts_are_multiplicities);
    CHECK(s.values.size() == 2);
    CHECK(s.contains(Complex(1.0), 1e-6));
    CHECK(s.contains(Complex(4.0), 1e-6));
    CHECK(!s.contains(Complex(0.0), 1e-6));
    CHECK(s.nonzero_count(1e-6) == 2);
}

TEST_CASE("invertibility witness") {
    auto alg = Algebra::blocks({2, 2});
    Element a = random_element(alg, 5, RandomProfile::NearIdentity);
    auto res = is_invertible(a);
    REQUIRE(res.invertible);
    CHECK((a * res.inverse - alg->unit()).norm() < 1e-8);

    Element p = e_ij(alg, 0, 0, 0);  // singular
    CHECK(!is_invertible(p).invertible);
}

TEST_CASE("left regular matrix represents multiplication") {
    auto alg = Algebra::blocks({2, 1});
    Element a = random_element(alg, 9);
    Element x = random_element(alg, 10);
    ComplexMatrix la = left_regular_matrix(a);
    auto xc = x.coords();
    ComplexMatrix xv(alg->dim(), 1, xc);
    ComplexMatrix axv = la * xv;
    auto ax = (a * x).coords();
    double err = 0;
    for (std::size_t i = 0; i < ax.size(); ++i) err = std::max(err, std::abs(axv(i, 0) - ax[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("random_element is deterministic per seed and profile") {
    auto alg = Algebra::blocks({2, 2});
    Element a1 = random_element(alg, 77);
    Element a2 = random_element(alg, 77);
    Element b = random_element(alg, 78);
    CHECK((a1 - a2).norm() == 0.0);
    CHECK((a1 - b).norm() > 1e-3);
    Element ni = random_element(alg, 77, RandomProfile::NearIdentity);
    CHECK((ni - alg->unit()).norm() < 1.0);
}

TEST_CASE("subspace span and membership") {
    auto alg = Algebra::blocks({2});
    Element e11 = e_ij(alg, 0, 0, 0);
    Element e12 = e_ij(alg, 0, 0, 1);
    Subspace s = subspace_span({e11, e12, e11 + e12});
    CHECK(s.dim() == 2);
    CHECK(subspace_contains(s, e11 - e12 * Complex(3.0)));
    CHECK(!subspace_contains(s, e_ij(alg, 0, 1, 0)));
}
