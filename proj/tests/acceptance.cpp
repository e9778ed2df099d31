// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "socle/central.hpp"
#include "socle/io.hpp"

using namespace socle;

namespace {

int failures = 0;

void report(int num, bool ok, const char* what) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, what);
    if (!ok) ++failures;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
    return m;
}

// 1. Golden example: a = (diag(1,-1), diag(1,-1)) in M_2 + M_2.
bool golden_example() {
    auto alg = Algebra::blocks({2, 2});
    Element a(alg, {ComplexMatrix::diagonal({1, -1}), ComplexMatrix::diagonal({1, -1})});
    if (rank_direct(a) != 4) return false;
    if (spectral_rank(a, 32, 1) != 4) return false;
    if (corner_dim(a) != 8) return false;
    if (std::abs(trace(a)) > 1e-10) return false;
    CommutatorCert cert = shoda_socle(a, 1);
    if (cert.residual > 1e-8) return false;
    if (cert.rank_x > 4 || cert.rank_y > 4) return false;
    if (corner_square_route(a, 1).has_value()) return false;  // 8 != 16
    return true;
}

// 2. spectral_rank == rank_direct over shapes and seeds.
bool rank_agreement() {
    const std::vector<std::vector<std::size_t>> shapes = {{2}, {3}, {2, 1}, {2, 2}, {3, 2, 1}};
    for (const auto& sizes : shapes) {
        auto alg = Algebra::blocks(sizes);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Element a = random_element(alg, seed);
            if (spectral_rank(a, 32, seed) != rank_direct(a)) return false;
        }
    }
    return true;
}

// 3. sum of multiplicities = rank + (0 in spectrum).
bool multiplicity_identity() {
    const std::vector<std::vector<std::size_t>> shapes = {{2, 2}, {3, 1}, {3, 2}, {2, 1, 1}};
    std::size_t checked = 0;
    for (const auto& sizes : shapes) {
        auto alg = Algebra::blocks(sizes);
        for (std::uint64_t seed = 0; seed < 40 && checked < 200; ++seed, ++checked) {
            // alternate dense and rank-deficient inputs
            Element a = random_element(alg, seed);
            if (seed % 2 == 1) {
                auto blks = a.blocks();
                for (std::size_t i = 0; i < blks[0].rows(); ++i) blks[0](0, i) = 0;
                a = Element(alg, std::move(blks));
            }
            SpectralData sd = spectral_data(a);
            const std::size_t expect = rank_of(a) + (sd.includes_zero ? 1 : 0);
            if (sd.multiplicity_sum() != expect) return false;
        }
        for (std::uint64_t seed = 100; seed < 110 && checked < 200; ++seed, ++checked) {
            Element a = random_element(alg, seed);
            SpectralData sd = spectral_data(a);
            if (sd.multiplicity_sum() != rank_of(a) + (sd.includes_zero ? 1 : 0)) return false;
        }
    }
    return checked == 200;
}

// 4. Contour quadrature agrees with the algebraic Riesz projection.
bool contour_cross_check() {
    Tolerance tol;
    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + t % 3;  // block dims 2..4
        ComplexMatrix m = random_matrix(n + (t % 2), rng);
        auto clusters = cluster_spectrum(eigenvalues(m), tol);
        for (const auto& [lambda, count] : clusters) {
            double nearest = 1e300;
            for (const auto& [mu, c2] : clusters)
                if (std::abs(mu - lambda) > tol.cluster_tol)
                    nearest = std::min(nearest, std::abs(mu - lambda));
            if (nearest > 1e200) continue;  // single cluster: no contour radius
            ComplexMatrix algebraic = matrix_riesz_projection(m, lambda, tol);
            ComplexMatrix quad = contour_resolvent_integral(m, lambda, nearest / 2.0,
                                                            ContourWeight::One, 64, tol);
            if ((algebraic - quad).frobenius_norm() > 1e-6) return false;
        }
    }
    return true;
}

// 5. Diagonalization of maximal-rank elements.
bool diagonalization_suite() {
    const std::vector<std::vector<std::size_t>> shapes = {{2}, {3}, {2, 2}, {3, 1}};
    std::size_t done = 0;
    for (const auto& sizes : shapes) {
        auto alg = Algebra::blocks(sizes);
        for (std::uint64_t seed = 0; done < 100 && seed < 25; ++seed, ++done) {
            Element a = random_element(alg, seed * 7 + 1);
            if (!is_maximal_rank(a)) continue;  // generic inputs almost surely are
            auto terms = diagonalize_maximal(a);
            if (terms.size() != rank_of(a)) return false;
            Element sum = alg->zero_element();
            for (const auto& [lambda, p] : terms) {
                if (!is_minimal_projection(p)) return false;
                sum = sum + p * lambda;
            }
            if ((sum - a).norm() > 1e-8 * std::max(1.0, a.norm())) return false;
            for (std::size_t i = 0; i < terms.size(); ++i)
                for (std::size_t j = i + 1; j < terms.size(); ++j)
                    if ((terms[i].second * terms[j].second).norm() > 1e-8) return false;
        }
    }
    return done == 100;
}

// 6. Tensor model on harvested minimal projections.
bool tensor_model_suite() {
    const std::vector<std::vector<std::size_t>> shapes = {{2, 2}, {3, 1}, {3, 2}};
    for (const auto& sizes : shapes) {
        auto alg = Algebra::blocks(sizes);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            Element a = random_element(alg, seed + 3);
            for (const auto& [lambda, p] : socle_decompose(a, seed).terms) {
                TensorModelReport rep = tensor_model_check(p);
                if (!rep.dims_match || !rep.product_rule_holds) return false;
                if (rep.max_product_residual > 1e-8) return false;
            }
        }
    }
    return true;
}

// 7. Scrambled presentations: decomposition recovers the block multiset and
//    the forward map is multiplicative.
bool wedderburn_recovery() {
    Tolerance tol;
    const std::vector<std::vector<std::size_t>> shapes = {{2},       {2, 1},    {2, 2},
                                                          {3, 1},    {1, 1, 1}, {3, 2, 1}};
    for (const auto& sizes : shapes) {
        auto expected = sizes;
        std::sort(expected.rbegin(), expected.rend());
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Instance inst = gen_instance(sizes, seed, true, tol);
            WedderburnIso iso = wedderburn_decompose(inst.algebra, seed);
            if (iso.sizes != expected) return false;
        }
        // multiplicativity spot-check on one presentation per shape
        Instance inst = gen_instance(sizes, 99, true, tol);
        WedderburnIso iso = wedderburn_decompose(inst.algebra, 99);
        for (std::uint64_t s = 0; s < 20; ++s) {
            Element a = random_element(inst.algebra, 1000 + 2 * s);
            Element b = random_element(inst.algebra, 1001 + 2 * s);
            Element lhs = iso.map_forward(a * b);
            Element rhs = iso.map_forward(a) * iso.map_forward(b);
            if ((lhs - rhs).norm() > 1e-8 * std::max(1.0, lhs.norm())) return false;
        }
    }
    return true;
}

// 8. Dual bases and matrix-unit relations.
bool dual_bases_suite() {
    const std::vector<std::vector<std::size_t>> shapes = {{3}, {3, 2}, {4, 1}};
    for (const auto& sizes : shapes) {
        auto alg = Algebra::blocks(sizes);
        Element a = random_element(alg, 5);
        Diagonalization d = socle_decompose(a, 5);
        const Element& p = d.terms.front().second;
        DualBases db = dual_bases(p);
        if (db.vs.size() != db.us.size()) return false;
        std::vector<Element> us = {p};
        std::vector<Element> vs = {p};
        us.insert(us.end(), db.us.begin(), db.us.end());
        vs.insert(vs.end(), db.vs.begin(), db.vs.end());
        const std::size_t n = us.size();
        // (i) u_i p = u_i, p v_i = v_i; (ii) p u_i = v_i p = 0, squares vanish
        // (i > 1); (iii) v_i u_j = delta_ij p.
        for (std::size_t i = 0; i < n; ++i) {
            if ((us[i] * p - us[i]).norm() > 1e-8) return false;
            if ((p * vs[i] - vs[i]).norm() > 1e-8) return false;
            if (i > 0) {
                if ((p * us[i]).norm() > 1e-8) return false;
                if ((vs[i] * p).norm() > 1e-8) return false;
                if ((us[i] * us[i]).norm() > 1e-8) return false;
                if ((vs[i] * vs[i]).norm() > 1e-8) return false;
            }
            for (std::size_t j = 0; j < n; ++j) {
                Element prod = vs[i] * us[j];
                Element expect = (i == j) ? p : alg->zero_element();
                if ((prod - expect).norm() > 1e-8) return false;
            }
        }
        MatrixUnits mu = matrix_units(p);
        for (std::size_t i = 0; i < mu.n; ++i)
            for (std::size_t j = 0; j < mu.n; ++j)
                for (std::size_t k = 0; k < mu.n; ++k)
                    for (std::size_t l = 0; l < mu.n; ++l) {
                        Element prod = mu.at(i, j) * mu.at(k, l);
                        Element expect = (j == k) ? mu.at(i, l) : alg->zero_element();
                        if ((prod - expect).norm() > 1e-8) return false;
                    }
    }
    return true;
}

// 9. Commutator certificates on single blocks; the per-ideal obstruction is
//    rejected on multi-block inputs.
bool shoda_suite() {
    std::mt19937_64 rng(31);
    std::size_t done = 0;
    for (std::size_t n = 2; n <= 4; ++n) {
        auto alg = Algebra::blocks({n});
        for (std::uint64_t seed = 0; seed < 34 && done < 100; ++seed, ++done) {
            ComplexMatrix m = random_matrix(n, rng);
            Complex tr = m.trace();
            for (std::size_t i = 0; i < n; ++i) m(i, i) -= tr / static_cast<double>(n);
            Element a(alg, {std::move(m)});
            CommutatorCert cert = shoda_socle(a, seed);
            if (cert.residual > 1e-8 * std::max(1.0, a.norm())) return false;
            const std::size_t r = rank_of(a);
            if (cert.rank_x > std::max<std::size_t>(r, 1)) return false;
            if (cert.rank_y > std::max<std::size_t>(r, 1)) return false;
        }
    }
    auto two = Algebra::blocks({2, 2});
    Element obstructed(two, {ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({-1, 0})});
    try {
        shoda_socle(obstructed, 1);
        return false;
    } catch (const NotInCommutatorSpace& e) {
        if (e.traces.size() != 2) return false;
        if (std::abs(e.traces[0]) < 0.5 || std::abs(e.traces[1]) < 0.5) return false;
    }
    return done >= 100;
}

// 10. The commutator space is closed under sums and scalar multiples.
bool closure_suite() {
    Tolerance tol;
    const std::vector<std::size_t> sizes = {3, 2};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Instance i1 = gen_instance(sizes, seed, false, tol);
        Instance i2 = gen_instance(sizes, seed + 500, false, tol);
        Element a = i1.elements.at("a0");
        Element b = Element::from_coords(i1.algebra, i2.elements.at("a0").coords());
        Element combo = a + b * Complex(1.5, -0.5);
        if (!in_commutator_space(combo, seed).member) return false;
        Element scaled = a * Complex(0, 2);
        if (!in_commutator_space(scaled, seed).member) return false;
        if (seed % 10 == 0) {
            CommutatorCert cert = shoda_socle(combo, seed);
            if (cert.residual > 1e-8) return false;
        }
    }
    return true;
}

// 11. Equivalence harness: the lower characterizations agree unanimously and
//     the upper extremal bound holds exactly for single blocks.
bool harness_suite() {
    const std::vector<std::vector<std::size_t>> profiles = {
        {1}, {1, 1}, {2}, {3}, {2, 1}, {2, 2}, {3, 1}, {3, 2, 1}};
    for (const auto& sizes : profiles) {
        auto alg = Algebra::blocks(sizes);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            EquivalenceReport rep = equivalence_harness(alg, seed);
            if (!rep.lower_family_consistent) return false;
            if (!rep.upper_matches_single_block) return false;
            if (rep.extremal_upper.holds != (sizes.size() == 1)) return false;
        }
    }
    return true;
}

// 12. Library eigensolver vs the independent char-poly/Durand-Kerner oracle.
bool eigenvalue_oracle() {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + t % 5;  // dims 2..6
        ComplexMatrix m = random_matrix(n, rng);
        const double d = socle::testing::spectra_distance(eigenvalues(m),
                                                          socle::testing::oracle_eigenvalues(m));
        if (d > 1e-8) return false;
    }
    return true;
}

}  // namespace

int main() {
    report(1, golden_example(), "golden two-block example: ranks, corner, trace, certificate");
    report(2, rank_agreement(), "sampled spectral rank equals direct block rank");
    report(3, multiplicity_identity(), "multiplicity sum = rank + [0 in spectrum]");
    report(4, contour_cross_check(), "contour quadrature matches algebraic Riesz projections");
    report(5, diagonalization_suite(), "maximal-rank diagonalization certificates");
    report(6, tensor_model_suite(), "tensor model of minimal ideals");
    report(7, wedderburn_recovery(), "block sizes recovered from scrambled presentations");
    report(8, dual_bases_suite(), "dual bases and matrix-unit relations");
    report(9, shoda_suite(), "commutator certificates with rank control; obstruction rejected");
    report(10, closure_suite(), "commutator space closed under sums and scalars");
    report(11, harness_suite(), "equivalence harness over block profiles");
    report(12, eigenvalue_oracle(), "eigensolver agrees with the char-poly oracle");
    return failures == 0 ? 0 : 1;
}
