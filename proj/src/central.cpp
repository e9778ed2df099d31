#include "socle/central.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace socle {

namespace {

std::vector<std::size_t> block_sizes(const AlgebraPtr& alg, std::uint64_t seed,
                                     std::optional<WedderburnIso>& iso) {
    if (alg->is_blocks()) return alg->blocks_pres().sizes;
    iso.emplace(wedderburn_decompose(alg, seed));
    return iso->sizes;
}

}  // namespace

PredicateResult pred_central(const AlgebraPtr& alg) {
    const double bound = alg->tol().residual_tol;
    PredicateResult out;
    out.holds = true;
    for (std::size_t i = 0; i < alg->dim(); ++i)
        for (std::size_t j = i + 1; j < alg->dim(); ++j) {
            const Element x = alg->basis_element(i);
            const Element y = alg->basis_element(j);
            if (x.commutator(y).norm() > bound * std::max(1.0, x.norm() * y.norm())) {
                out.holds = false;
                out.witnesses = {x, y};
                return out;
            }
        }
    return out;
}

PredicateResult pred_square_zero(const AlgebraPtr& alg, std::uint64_t seed) {
    std::optional<WedderburnIso> iso;
    const auto sizes = block_sizes(alg, seed, iso);

    PredicateResult out;
    out.holds = std::all_of(sizes.begin(), sizes.end(), [](std::size_t n) { return n == 1; });
    if (out.holds) return out;

    // e12-type witness in the first block of size >= 2.
    std::size_t big = 0;
    while (sizes[big] < 2) ++big;
    std::vector<ComplexMatrix> bl;
    for (std::size_t b = 0; b < sizes.size(); ++b) bl.push_back(ComplexMatrix::zero(sizes[b], sizes[b]));
    bl[big](0, 1) = 1.0;
    if (alg->is_blocks()) {
        out.witnesses = {Element(alg, std::move(bl))};
    } else {
        out.witnesses = {iso->map_backward(Element(iso->target(), std::move(bl)))};
    }
    const Element& w = out.witnesses.front();
    if ((w * w).norm() > alg->tol().residual_tol * std::max(1.0, w.norm() * w.norm()) ||
        w.is_zero(alg->tol().residual_tol))
        throw NumericError("pred_square_zero: constructed witness failed verification");
    return out;
}

PredicateResult pred_corner_rank(const AlgebraPtr& alg, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("pred_corner_rank: trials must be >= 1");
    PredicateResult out;
    out.holds = true;

    auto check = [&](const Element& a) {
        if (a.is_zero(alg->tol().residual_tol)) return true;
        return corner_dim(a) == rank_of(a);
    };
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        const Element e = alg->basis_element(i);
        if (!check(e)) {
            out.holds = false;
            out.witnesses = {e};
            return out;
        }
    }
    for (std::size_t t = 0; t < trials; ++t) {
        const Element a = random_element(alg, seed + 7919 * (t + 1));
        if (!check(a)) {
            out.holds = false;
            out.witnesses = {a};
            return out;
        }
    }
    return out;
}

PredicateResult pred_commutators_trivial(const AlgebraPtr& alg) {
    // Same decision procedure as centrality (here Soc A = A, so C = {0}
    // iff A is commutative), but witnessed by the commutator itself.
    PredicateResult out;
    out.holds = true;
    const double bound = alg->tol().residual_tol;
    for (std::size_t i = 0; i < alg->dim(); ++i)
        for (std::size_t j = i + 1; j < alg->dim(); ++j) {
            const Element x = alg->basis_element(i);
            const Element y = alg->basis_element(j);
            const Element c = x.commutator(y);
            if (c.norm() > bound * std::max(1.0, x.norm() * y.norm())) {
                out.holds = false;
                out.witnesses = {x, y, c};
                return out;
            }
        }
    return out;
}

PredicateResult pred_extremal_dims(const AlgebraPtr& alg, ExtremalMode mode, std::size_t trials,
                                   std::uint64_t seed) {
    PredicateResult out;
    out.holds = true;
    std::mt19937_64 rng(seed ^ 0x5bf03635ull);

    // The unit is itself a finite-rank projection here; check it first.
    std::vector<Element> pool{alg->unit()};
    for (std::size_t t = 0; t < trials; ++t) {
        const Element a = random_element(alg, seed + 104729 * (t + 1));
        const Spectrum sp = spectrum(a);
        std::vector<Complex> picked;
        for (const auto& [v, c] : sp.values) {
            if (std::abs(v) <= alg->tol().cluster_tol) continue;
            if (rng() % 2 == 0) picked.push_back(v);
        }
        if (picked.empty()) continue;
        try {
            Element p = riesz_projection(a, picked);
            if (is_projection(p)) pool.push_back(std::move(p));
        } catch (const NumericError&) {
            continue;  // clustered values too close for a clean projection
        }
    }

    for (const Element& p : pool) {
        if (p.is_zero(alg->tol().residual_tol)) continue;
        const std::size_t dim_corner = corner_dim(p);
        const std::size_t r = rank_of(p);
        const std::size_t want = (mode == ExtremalMode::Lower) ? r : r * r;
        if (dim_corner != want) {
            out.holds = false;
            out.witnesses = {p};
            return out;
        }
    }
    return out;
}

EquivalenceReport equivalence_harness(const AlgebraPtr& alg, std::uint64_t seed) {
    EquivalenceReport rep;
    rep.central = pred_central(alg);
    rep.square_zero = pred_square_zero(alg, seed);
    rep.corner_rank = pred_corner_rank(alg, 64, seed);
    rep.commutators_trivial = pred_commutators_trivial(alg);
    rep.extremal_lower = pred_extremal_dims(alg, ExtremalMode::Lower, 64, seed);
    rep.extremal_upper = pred_extremal_dims(alg, ExtremalMode::Upper, 64, seed);

    std::optional<WedderburnIso> iso;
    rep.block_count = block_sizes(alg, seed, iso).size();

    const bool expected = rep.central.holds;
    rep.lower_family_consistent = true;
    auto note = [&](const char* name, bool got) {
        if (got != expected) {
            rep.lower_family_consistent = false;
            rep.mismatches.push_back(std::string(name) + " disagrees with pred_central");
        }
    };
    note("pred_square_zero", rep.square_zero.holds);
    note("pred_corner_rank", rep.corner_rank.holds);
    note("pred_commutators_trivial", rep.commutators_trivial.holds);
    note("pred_extremal_dims(lower)", rep.extremal_lower.holds);

    rep.upper_matches_single_block = (rep.extremal_upper.holds == (rep.block_count == 1));
    if (!rep.upper_matches_single_block)
        rep.mismatches.push_back("pred_extremal_dims(upper) disagrees with single-block test");
    return rep;
}

}  // namespace socle
