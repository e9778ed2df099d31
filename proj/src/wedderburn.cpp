#include "socle/wedderburn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

namespace socle {

namespace {

/// Greedy independent subset: keeps candidates whose residual against the
/// already-selected span exceeds rank_tol (relative), returning the kept
/// elements in selection order.
std::vector<Element> extend_independent(const std::vector<Element>& initial,
                                        const std::vector<Element>& candidates,
                                        const Tolerance& tol) {
    std::vector<Element> kept;
    std::vector<std::vector<Complex>> ortho;  // orthonormal coords
    auto try_add = [&](const Element& e, bool force_keep) {
        auto c = e.coords();
        double n0 = 0;
        for (const auto& z : c) n0 += std::norm(z);
        n0 = std::sqrt(n0);
        if (n0 == 0) return false;
        for (const auto& q : ortho) {
            Complex proj = 0;
            for (std::size_t i = 0; i < c.size(); ++i) proj += std::conj(q[i]) * c[i];
            for (std::size_t i = 0; i < c.size(); ++i) c[i] -= proj * q[i];
        }
        double res = 0;
        for (const auto& z : c) res += std::norm(z);
        res = std::sqrt(res);
        if (res <= std::sqrt(tol.rank_tol) * n0 && !force_keep) return false;
        if (res == 0) return false;
        for (auto& z : c) z /= res;
        ortho.push_back(std::move(c));
        kept.push_back(e);
        return true;
    };
    for (const auto& e : initial) try_add(e, true);
    for (const auto& e : candidates) try_add(e, false);
    return kept;
}

double residual_scale(const Element& e) { return std::max(1.0, e.norm()); }

}  // namespace

Complex characteristic_functional(const Element& a, const Element& x) {
    const Element axa = a * x * a;
    const auto ac = a.coords();
    const auto yc = axa.coords();
    Complex num = 0, den = 0;
    for (std::size_t i = 0; i < ac.size(); ++i) {
        num += std::conj(ac[i]) * yc[i];
        den += std::conj(ac[i]) * ac[i];
    }
    if (std::abs(den) == 0) throw PreconditionError("characteristic functional of zero element");
    const Complex c = num / den;
    if ((axa - c * a).norm() > a.algebra()->tol().residual_tol * residual_scale(axa) * 10.0)
        throw PreconditionError("element is not rank one (a x a not proportional to a)");
    return c;
}

Element separating_element(const Element& b, const std::vector<Element>& as) {
    const auto& alg = b.algebra();
    const auto& tol = alg->tol();
    const std::size_t d = alg->dim();

    // Independence of {b} u as.
    std::vector<Element> all{b};
    all.insert(all.end(), as.begin(), as.end());
    if (subspace_span(all).dim() != all.size())
        throw PreconditionError("separating_element: input set is linearly dependent");

    // Tr(a y) = tau_a(y) is linear in y; rows of the system are the
    // functionals evaluated on the coordinate basis.
    const std::size_t m = all.size();
    ComplexMatrix sys(m, d);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < d; ++j)
            sys(r, j) = characteristic_functional(all[r], alg->basis_element(j));
    if (numerical_rank(sys, tol) < m)
        throw PreconditionError("separating_element: trace system is singular");

    // Least-norm solution of sys * y = e_1.
    ComplexMatrix rhs(m, 1);
    rhs(0, 0) = 1.0;
    const ComplexMatrix sysH = sys.adjoint();
    auto gram_inv_rhs = solve_linear(sys * sysH, rhs, tol);
    if (!gram_inv_rhs) throw PreconditionError("separating_element: trace system is singular");
    const ComplexMatrix ymat = sysH * (*gram_inv_rhs);
    std::vector<Complex> yc(d);
    for (std::size_t i = 0; i < d; ++i) yc[i] = ymat(i, 0);
    Element y = Element::from_coords(alg, yc);

    // Verify the spectral form of the conclusion.
    if (spectrum(b * y).nonzero_count(tol.cluster_tol) == 0)
        throw NumericError("separating_element: sigma(b y) collapsed to {0}");
    for (const auto& a : as)
        if (spectrum(a * y).nonzero_count(tol.cluster_tol) != 0)
            throw NumericError("separating_element: sigma(a_i y) not {0}");
    return y;
}

DualBases dual_bases(const Element& p) {
    const auto& alg = p.algebra();
    const auto& tol = alg->tol();
    if (!is_minimal_projection(p))
        throw PreconditionError("dual_bases: p must be a minimal projection");

    const Element one = alg->unit();
    const Element q = one - p;

    // Basis of Ap containing p.
    std::vector<Element> candidates;
    for (std::size_t i = 0; i < alg->dim(); ++i) candidates.push_back(alg->basis_element(i) * p);
    const auto left = extend_independent({p}, candidates, tol);
    const std::size_t n = left.size();

    DualBases out;
    out.p = p;
    if (n == 1) return out;  // Ap = Cp, nothing beyond p

    // Normalized forms u_i = (1-p) x_i p; independent by the minimality of p.
    std::vector<Element> us_raw;
    for (std::size_t i = 1; i < n; ++i) us_raw.push_back(q * left[i] * p);
    const auto us = extend_independent({}, us_raw, tol);
    if (us.size() != n - 1)
        throw NumericError("dual_bases: normalized left family lost independence");

    // Basis of pA(1-p).
    std::vector<Element> rcand;
    for (std::size_t i = 0; i < alg->dim(); ++i) rcand.push_back(p * alg->basis_element(i) * q);
    const auto ws = extend_independent({}, rcand, tol);
    if (ws.size() != n - 1)
        throw NumericError("dual_bases: dim pA(1-p) != dim Ap - 1");

    // Pairing w_k u_j lands in pAp = Cp; invert it to get exact duals.
    const std::size_t k = n - 1;
    ComplexMatrix pairing(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
            pairing(r, c) = corner_coefficient(p, ws[r] * us[c]);
    auto pinv = inverse(pairing, tol);
    if (!pinv) throw NumericError("dual_bases: degenerate pairing between Ap and pA");

    std::vector<Element> vs;
    for (std::size_t i = 0; i < k; ++i) {
        Element v = alg->zero_element();
        for (std::size_t r = 0; r < k; ++r) v = v + (*pinv)(i, r) * ws[r];
        vs.push_back(std::move(v));
    }

    // Residual-check properties (i)-(iii).
    const double rt = tol.residual_tol * 100.0;
    for (std::size_t i = 0; i < k; ++i) {
        if ((p * us[i]).norm() > rt || (vs[i] * p).norm() > rt)
            throw NumericError("dual_bases: property (i) violated");
        if ((us[i] * us[i]).norm() > rt || (vs[i] * vs[i]).norm() > rt)
            throw NumericError("dual_bases: property (i) violated (squares)");
        if ((us[i] * p - us[i]).norm() > rt || (p * vs[i] - vs[i]).norm() > rt)
            throw NumericError("dual_bases: property (ii) violated");
        for (std::size_t j = 0; j < k; ++j) {
            const Element prod = vs[i] * us[j];
            const Element expect = (i == j) ? p : alg->zero_element();
            if ((prod - expect).norm() > rt)
                throw NumericError("dual_bases: property (iii) violated");
        }
    }
    out.us = us;
    out.vs = std::move(vs);
    return out;
}

MatrixUnits matrix_units(const Element& p) {
    const auto& alg = p.algebra();
    const auto& tol = alg->tol();
    const DualBases db = dual_bases(p);
    const std::size_t n = db.us.size() + 1;

    MatrixUnits mu;
    mu.p = p;
    mu.n = n;
    mu.units.resize(n * n, alg->zero_element());
    mu.units[0] = p;
    for (std::size_t i = 1; i < n; ++i) {
        mu.units[i * n + 0] = db.us[i - 1];       // e_{i+1,1} = u_i p = u_i
        mu.units[0 * n + i] = db.vs[i - 1];       // e_{1,j+1} = p v_j = v_j
        for (std::size_t j = 1; j < n; ++j)
            mu.units[i * n + j] = db.us[i - 1] * db.vs[j - 1];  // u_i p v_j
    }

    // Matrix-unit relations, all pairs.
    const double rt = tol.residual_tol * 100.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t kk = 0; kk < n; ++kk)
                for (std::size_t l = 0; l < n; ++l) {
                    const Element prod = mu.at(i, j) * mu.at(kk, l);
                    const Element expect = (j == kk) ? mu.at(i, l) : alg->zero_element();
                    if ((prod - expect).norm() > rt)
                        throw NumericError("matrix_units: unit relations violated");
                }
    return mu;
}

Element WedderburnIso::map_forward(const Element& a) const {
    const auto c = a.coords();
    const std::size_t d = c.size();
    std::vector<Complex> out(d, Complex{});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out[i] += forward(i, j) * c[j];
    return Element::from_coords(target_, out);
}

Element WedderburnIso::map_backward(const Element& b) const {
    const auto c = b.coords();
    const std::size_t d = c.size();
    std::vector<Complex> out(d, Complex{});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out[i] += backward(i, j) * c[j];
    return Element::from_coords(source, out);
}

std::size_t rank_via_iso(const WedderburnIso& iso, const Element& a) {
    return rank_direct(iso.map_forward(a));
}

WedderburnIso wedderburn_decompose(const AlgebraPtr& alg, std::uint64_t seed) {
    const auto& tol = alg->tol();
    const std::size_t d = alg->dim();

    for (std::size_t attempt = 0; attempt < 16; ++attempt) {
        const Element a =
            random_element(alg, seed + 0x6d2b79f5ull * (attempt + 1), RandomProfile::Dense);
        const auto sp = spectrum(a);

        // Harvest rank-one Riesz projections at the distinct nonzero values.
        std::vector<Element> minimal;
        for (const auto& [v, c] : sp.values) {
            if (std::abs(v) <= tol.cluster_tol) continue;
            Element q;
            try {
                q = riesz_projection(a, {v});
            } catch (const NumericError&) {
                continue;
            }
            try {
                if (is_projection(q) && is_minimal_projection(q)) minimal.push_back(std::move(q));
            } catch (const NotAProjection&) {
            }
        }
        if (minimal.empty()) continue;

        // Group into ideal classes by pairwise corner reachability.
        const std::size_t m = minimal.size();
        std::vector<std::size_t> cls(m, SIZE_MAX);
        std::size_t nclasses = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (cls[i] != SIZE_MAX) continue;
            cls[i] = nclasses;
            for (std::size_t j = i + 1; j < m; ++j)
                if (cls[j] == SIZE_MAX && pairwise_dim(minimal[i], minimal[j]) != 0)
                    cls[j] = nclasses;
            ++nclasses;
        }

        // One representative per class; matrix units per representative.
        std::vector<MatrixUnits> units;
        bool ok = true;
        for (std::size_t cl = 0; cl < nclasses && ok; ++cl) {
            const std::size_t rep =
                std::distance(cls.begin(), std::find(cls.begin(), cls.end(), cl));
            try {
                units.push_back(matrix_units(minimal[rep]));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) continue;

        // Completeness: the harvested ideals must exhaust the algebra.
        std::size_t total = 0;
        for (const auto& mu : units) total += mu.n * mu.n;
        if (total != d) continue;

        std::sort(units.begin(), units.end(),
                  [](const MatrixUnits& x, const MatrixUnits& y) { return x.n > y.n; });

        // Sum of diagonal units must be the identity.
        Element diag_sum = alg->zero_element();
        for (const auto& mu : units)
            for (std::size_t i = 0; i < mu.n; ++i) diag_sum = diag_sum + mu.at(i, i);
        if ((diag_sum - alg->unit()).norm() > tol.residual_tol * 100.0) continue;

        // Assemble coordinate maps: columns of `backward` are unit coords.
        WedderburnIso iso;
        iso.source = alg;
        ComplexMatrix back(d, d);
        std::size_t col = 0;
        for (const auto& mu : units) {
            iso.sizes.push_back(mu.n);
            for (const auto& u : mu.units) {
                const auto c = u.coords();
                for (std::size_t i = 0; i < d; ++i) back(i, col) = c[i];
                ++col;
            }
        }
        auto fwd = inverse(back, tol);
        if (!fwd) continue;
        iso.blocks = std::move(units);
        iso.backward = std::move(back);
        iso.forward = std::move(*fwd);
        iso.target_ = Algebra::blocks(iso.sizes, tol);

        // Multiplicativity of the forward map on random pairs.
        bool multiplicative = true;
        for (std::size_t t = 0; t < 8 && multiplicative; ++t) {
            const Element x = random_element(alg, seed + 1000003 * (t + 1));
            const Element y = random_element(alg, seed + 2000003 * (t + 1));
            const Element lhs = iso.map_forward(x * y);
            const Element rhs = iso.map_forward(x) * iso.map_forward(y);
            if ((lhs - rhs).norm() > tol.residual_tol * residual_scale(lhs) * 100.0)
                multiplicative = false;
        }
        if (!multiplicative) continue;
        return iso;
    }
    throw DecompositionFailed(
        "wedderburn_decompose: retry cap exhausted (non-semisimple or degenerate input?)");
}

EnvelopeReport enveloping_subalgebra(const std::vector<Element>& zs, std::uint64_t seed) {
    if (zs.empty()) throw PreconditionError("enveloping_subalgebra: need at least one element");
    const auto& alg = zs.front().algebra();
    const auto& tol = alg->tol();
    const std::size_t d = alg->dim();

    const WedderburnIso iso = wedderburn_decompose(alg, seed);
    const AlgebraPtr tgt = iso.target();
    std::vector<Element> images;
    for (const auto& z : zs) images.push_back(iso.map_forward(z));

    std::vector<Element> basis_elems;  // basis of B in the source algebra
    std::vector<std::size_t> class_sizes;

    bool any_nonzero = false;
    for (std::size_t b = 0; b < iso.sizes.size(); ++b) {
        const std::size_t n = iso.sizes[b];
        // Per-block components of the generators.
        std::vector<ComplexMatrix> comps;
        for (const auto& img : images)
            if (img.block(b).frobenius_norm() > tol.residual_tol) comps.push_back(img.block(b));
        if (comps.empty()) continue;
        any_nonzero = true;

        // Column and row supports of the generators in this block, extended
        // by the supports of a minimal projection tied to the generators.
        ComplexMatrix cols(n, 0), rows(n, 0);
        for (const auto& mm : comps) {
            cols = hcat(cols, mm);
            rows = hcat(rows, mm.transpose());
        }
        // Minimal projection from a random combination of the components.
        std::mt19937_64 rng(seed ^ (0xabcdefull + b));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        ComplexMatrix w(n, n);
        for (const auto& mm : comps) w += Complex(unif(rng), unif(rng)) * mm;
        const auto wev = cluster_spectrum(eigenvalues(w), tol);
        ComplexMatrix proj(n, n);
        bool got = false;
        for (const auto& [v, c] : wev) {
            if (std::abs(v) <= tol.cluster_tol) continue;
            ComplexMatrix cand = matrix_riesz_projection(w, v, tol);
            if (numerical_rank(cand, tol) == 1) {
                proj = std::move(cand);
                got = true;
                break;
            }
        }
        if (!got) {
            // Nilpotent or degenerate component: perturb towards a generic
            // direction to obtain a spectral projection inside the support.
            ComplexMatrix w2 = w;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    w2(i, j) += 1e-2 * Complex(unif(rng), unif(rng));
            const auto ev2 = cluster_spectrum(eigenvalues(w2), tol);
            for (const auto& [v, c] : ev2) {
                if (std::abs(v) <= tol.cluster_tol) continue;
                ComplexMatrix cand = matrix_riesz_projection(w2, v, tol);
                if (numerical_rank(cand, tol) == 1) {
                    proj = std::move(cand);
                    got = true;
                    break;
                }
            }
        }
        if (got) {
            cols = hcat(cols, proj);
            rows = hcat(rows, proj.transpose());
        }

        ComplexMatrix xbase = range_basis(cols, tol);
        ComplexMatrix ybase = range_basis(rows, tol);
        // Balance the two sides (Lemma-style extension) so the class is a
        // square matrix algebra.
        auto extend_to = [&](ComplexMatrix base, std::size_t k) {
            while (base.cols() < k) {
                for (std::size_t i = 0; i < n && base.cols() < k; ++i) {
                    ComplexMatrix e(n, 1);
                    e(i, 0) = 1.0;
                    ComplexMatrix trial = hcat(base, e);
                    if (numerical_rank(trial, tol) == base.cols() + 1)
                        base = range_basis(trial, tol);
                }
            }
            return base;
        };
        const std::size_t k = std::max(xbase.cols(), ybase.cols());
        xbase = extend_to(std::move(xbase), k);
        ybase = extend_to(std::move(ybase), k);
        class_sizes.push_back(k);

        // B restricted to this block: all matrices with column space in
        // span(xbase) and row space in span(ybase).
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                ComplexMatrix unit(n, n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        unit(r, c) = xbase(r, i) * ybase(c, j);
                std::vector<ComplexMatrix> bl;
                for (std::size_t bb = 0; bb < iso.sizes.size(); ++bb)
                    bl.push_back(bb == b ? unit
                                         : ComplexMatrix::zero(iso.sizes[bb], iso.sizes[bb]));
                basis_elems.push_back(iso.map_backward(Element(tgt, std::move(bl))));
            }
    }

    if (!any_nonzero) {
        // All generators are zero: the minimal valid envelope is C*p for
        // the first harvested minimal projection.
        basis_elems.push_back(iso.map_backward(
            [&] {
                std::vector<ComplexMatrix> bl;
                for (std::size_t bb = 0; bb < iso.sizes.size(); ++bb)
                    bl.push_back(ComplexMatrix::zero(iso.sizes[bb], iso.sizes[bb]));
                bl[0](0, 0) = 1.0;
                return Element(tgt, std::move(bl));
            }()));
        class_sizes.push_back(1);
    }

    EnvelopeReport rep;
    rep.space = subspace_span(basis_elems);
    rep.sizes = std::move(class_sizes);

    rep.contains_generators = true;
    for (const auto& z : zs)
        if (!subspace_contains(rep.space, z)) rep.contains_generators = false;

    rep.contains_corners = true;
    for (const auto& z : zs)
        for (std::size_t i = 0; i < d; ++i)
            if (!subspace_contains(rep.space, z * alg->basis_element(i) * z))
                rep.contains_corners = false;

    rep.multiplicatively_closed = true;
    for (const auto& x : basis_elems)
        for (const auto& y : basis_elems)
            if (!subspace_contains(rep.space, x * y)) rep.multiplicatively_closed = false;

    return rep;
}

}  // namespace socle
