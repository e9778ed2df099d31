#include "socle/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace socle {

namespace {

/// Distinct nonzero clustered spectral values of x*a.
std::size_t nonzero_spectral_count(const Element& xa) {
    const auto sp = spectrum(xa);
    return sp.nonzero_count(xa.algebra()->tol().cluster_tol);
}

}  // namespace

ComplexMatrix matrix_riesz_projection(const ComplexMatrix& m, Complex lambda,
                                      const Tolerance& tol) {
    const std::size_t n = m.rows();
    ComplexMatrix shifted = m - lambda * ComplexMatrix::identity(n);
    const double scale = std::max(shifted.frobenius_norm(), 1e-30);
    shifted = shifted * Complex(1.0 / scale);
    // ((m - lambda)/s)^n kills the generalized eigenspace at lambda and is
    // invertible on its complement; project onto kernel along range.
    ComplexMatrix power = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) power = power * shifted;
    const ComplexMatrix kernel = null_basis(power, tol);
    const ComplexMatrix range = range_basis(power, tol);
    if (kernel.cols() == 0)
        throw BadSpectralValue("value is not in the spectrum of the matrix");
    if (kernel.cols() + range.cols() != n)
        throw NumericError("generalized eigenspace split is rank-deficient");
    const ComplexMatrix basis = hcat(kernel, range);
    auto inv = inverse(basis, tol);
    if (!inv) throw NumericError("eigenspace basis nearly singular");
    // P = B * diag(I_k, 0) * B^{-1}
    ComplexMatrix selector(n, n);
    for (std::size_t i = 0; i < kernel.cols(); ++i) selector(i, i) = 1.0;
    return basis * selector * (*inv);
}

std::size_t rank_direct(const Element& a) {
    if (!a.is_blocks())
        throw NeedsDecomposition(
            "rank_direct requires a blocks presentation; map through a WedderburnIso first");
    const auto& tol = a.algebra()->tol();
    std::size_t r = 0;
    for (const auto& m : a.blocks()) r += numerical_rank(m, tol);
    return r;
}

std::size_t spectral_rank(const Element& a, std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw PreconditionError("spectral_rank needs samples >= 1");
    const auto& alg = a.algebra();
    std::size_t best = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Element x = random_element(alg, seed + 0x51ed2701u * (s + 1), RandomProfile::Dense);
        best = std::max(best, nonzero_spectral_count(x * a));
    }
    if (a.is_blocks()) {
        const std::size_t direct = rank_direct(a);
        if (best != direct) throw RankSamplingError(best, direct);
    }
    return best;
}

std::size_t rank_of(const Element& a) {
    return a.is_blocks() ? rank_direct(a) : spectral_rank(a);
}

bool is_in_E(const Element& a, const Element& x) {
    return nonzero_spectral_count(x * a) == rank_of(a);
}

bool is_maximal_rank(const Element& a) { return is_in_E(a, a.algebra()->unit()); }

Element riesz_projection(const Element& a, const std::vector<Complex>& lambdas) {
    const auto& alg = a.algebra();
    const auto& tol = alg->tol();
    const auto sp = spectrum(a);
    for (const auto& l : lambdas) {
        if (std::abs(l) <= tol.cluster_tol)
            throw BadSpectralValue("riesz_projection: zero is not an admissible value");
        if (!sp.contains(l, tol.cluster_tol))
            throw BadSpectralValue("riesz_projection: value not in the spectrum");
    }
    if (a.is_blocks()) {
        std::vector<ComplexMatrix> out;
        for (const auto& m : a.blocks()) {
            ComplexMatrix acc = ComplexMatrix::zero(m.rows(), m.cols());
            const auto ev = cluster_spectrum(eigenvalues(m), tol);
            for (const auto& l : lambdas)
                for (const auto& [v, c] : ev)
                    if (std::abs(v - l) <= tol.cluster_tol)
                        acc += matrix_riesz_projection(m, v, tol);
            out.push_back(std::move(acc));
        }
        return Element(alg, std::move(out));
    }
    // Structure presentation: functional calculus through the regular
    // representation applied to the unit, coords(f(a)) = f(L_a) coords(1).
    const ComplexMatrix la = left_regular_matrix(a);
    const auto ev = cluster_spectrum(eigenvalues(la), tol);
    const std::size_t d = alg->dim();
    ComplexMatrix proj(d, d);
    for (const auto& l : lambdas)
        for (const auto& [v, c] : ev)
            if (std::abs(v - l) <= tol.cluster_tol) proj += matrix_riesz_projection(la, v, tol);
    const auto& unit = alg->structure_pres().unit;
    std::vector<Complex> pc(d, Complex{});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) pc[i] += proj(i, j) * unit[j];
    return Element::from_coords(alg, pc);
}

std::size_t multiplicity(const Element& a, Complex lambda) {
    const auto& tol = a.algebra()->tol();
    const auto sp = spectrum(a);
    if (!sp.contains(lambda, tol.cluster_tol))
        throw BadSpectralValue("multiplicity: value not in the spectrum");
    if (std::abs(lambda) > tol.cluster_tol)
        return rank_of(riesz_projection(a, {lambda}));
    // m(0, a) by the accounting identity: rank + 1 - sum of nonzero
    // multiplicities.
    std::size_t nonzero_sum = 0;
    for (const auto& [v, c] : sp.values)
        if (std::abs(v) > tol.cluster_tol) nonzero_sum += rank_of(riesz_projection(a, {v}));
    return rank_of(a) + 1 - nonzero_sum;
}

SpectralData spectral_data(const Element& a) {
    const auto& alg = a.algebra();
    const auto& tol = alg->tol();
    const auto sp = spectrum(a);
    SpectralData out;
    std::size_t nonzero_sum = 0;
    for (const auto& [v, c] : sp.values) {
        if (std::abs(v) <= tol.cluster_tol) {
            out.includes_zero = true;
            continue;
        }
        Element p = riesz_projection(a, {v});
        const std::size_t m = rank_of(p);
        nonzero_sum += m;
        out.distinct.push_back({v, m, std::move(p)});
    }
    if (out.includes_zero)
        out.distinct.push_back({Complex{}, rank_of(a) + 1 - nonzero_sum, alg->zero_element()});
    return out;
}

Complex trace(const Element& a) {
    const auto data = spectral_data(a);
    Complex t = 0;
    for (const auto& e : data.distinct) t += e.lambda * static_cast<double>(e.multiplicity);
    if (a.is_blocks()) {
        Complex classical = 0;
        for (const auto& m : a.blocks()) classical += m.trace();
        const double tolr = a.algebra()->tol().residual_tol * std::max(1.0, a.norm()) *
                            static_cast<double>(a.algebra()->dim());
        if (std::abs(t - classical) > tolr)
            throw NumericError("spectral trace disagrees with classical block trace");
    }
    return t;
}

std::vector<std::pair<Complex, Element>> diagonalize_maximal(const Element& a) {
    const auto& alg = a.algebra();
    const auto& tol = alg->tol();
    if (a.is_zero(tol.residual_tol)) throw PreconditionError("diagonalize_maximal: zero element");
    if (!is_maximal_rank(a))
        throw PreconditionError("diagonalize_maximal: element is not of maximal rank");
    const auto sp = spectrum(a);
    std::vector<std::pair<Complex, Element>> terms;
    Element recon = alg->zero_element();
    for (const auto& [v, c] : sp.values) {
        if (std::abs(v) <= tol.cluster_tol) continue;
        Element p = riesz_projection(a, {v});
        recon = recon + v * p;
        terms.emplace_back(v, std::move(p));
    }
    if ((a - recon).norm() > tol.residual_tol * std::max(1.0, a.norm()) * 10.0)
        throw NumericError("maximal-rank diagonalization failed to reconstruct the element");
    return terms;
}

Diagonalization socle_decompose(const Element& a, std::uint64_t seed) {
    const auto& alg = a.algebra();
    const auto& tol = alg->tol();
    if (a.is_zero(tol.residual_tol)) throw PreconditionError("socle_decompose: zero element");
    const std::size_t target_rank = rank_of(a);
    double eps = 0.1;
    for (std::size_t attempt = 0; attempt < 32; ++attempt) {
        const Element v = random_element(alg, seed + 7919 * attempt, RandomProfile::NearIdentity,
                                         eps);
        eps *= 0.5;
        const auto inv = is_invertible(v);
        if (!inv.invertible) continue;
        const Element va = v * a;
        if (nonzero_spectral_count(va) != target_rank) continue;
        std::vector<std::pair<Complex, Element>> terms;
        try {
            terms = diagonalize_maximal(va);
        } catch (const NumericError&) {
            continue;
        } catch (const PreconditionError&) {
            continue;
        }
        bool minimal = true;
        for (const auto& [l, p] : terms)
            if (rank_of(p) != 1) minimal = false;
        if (!minimal) continue;
        // a = v^{-1} (sum lambda_i p_i) = sum lambda_i u p_i
        Diagonalization d{inv.inverse, std::move(terms)};
        Element recon = alg->zero_element();
        for (const auto& [l, p] : d.terms) recon = recon + l * (d.u * p);
        if ((a - recon).norm() > tol.residual_tol * std::max(1.0, a.norm()) * 10.0) continue;
        return d;
    }
    throw DecompositionFailed("socle_decompose: retry cap exhausted");
}

Element vn_regular_witness(const Element& a, std::uint64_t seed) {
    const auto& alg = a.algebra();
    const auto& tol = alg->tol();
    if (a.is_zero(tol.residual_tol)) return alg->zero_element();
    const Diagonalization d = socle_decompose(a, seed);
    const auto vinv = is_invertible(d.u);
    if (!vinv.invertible) throw DecompositionFailed("vn_regular_witness: u not invertible");
    Element x = alg->zero_element();
    for (const auto& [l, p] : d.terms) x = x + (1.0 / l) * p;
    x = x * vinv.inverse;
    if ((a * x * a - a).norm() > tol.residual_tol * std::max(1.0, a.norm()) * 10.0)
        throw NumericError("von Neumann witness failed its residual check");
    return x;
}

}  // namespace socle
