#include "socle/ideals.hpp"

#include <algorithm>
#include <cmath>

namespace socle {

bool is_projection(const Element& p) {
    const double scale = std::max(1.0, p.norm());
    return (p * p - p).norm() <= p.algebra()->tol().residual_tol * scale;
}

Complex corner_coefficient(const Element& p, const Element& y) {
    // y = c*p; read c off the largest coordinate of p.
    const auto pc = p.coords();
    const auto yc = y.coords();
    std::size_t best = 0;
    double bm = 0;
    for (std::size_t i = 0; i < pc.size(); ++i) {
        const double m = std::abs(pc[i]);
        if (m > bm) {
            bm = m;
            best = i;
        }
    }
    if (bm == 0) throw PreconditionError("corner_coefficient: zero projection");
    return yc[best] / pc[best];
}

bool is_minimal_projection(const Element& p) {
    if (!is_projection(p)) throw NotAProjection("element is not idempotent");
    const auto& alg = p.algebra();
    if (p.is_zero(alg->tol().residual_tol)) return false;
    std::vector<Element> corner;
    corner.reserve(alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i)
        corner.push_back(p * alg->basis_element(i) * p);
    return subspace_span(corner).dim() == 1;
}

std::vector<Element> left_ideal_basis(const Element& p) {
    const auto& alg = p.algebra();
    std::vector<std::vector<Complex>> vs;
    for (std::size_t i = 0; i < alg->dim(); ++i)
        vs.push_back((alg->basis_element(i) * p).coords());
    const Subspace s = subspace_span_coords(alg->dim(), vs, alg->tol());
    std::vector<Element> out;
    for (std::size_t j = 0; j < s.dim(); ++j) {
        std::vector<Complex> c(alg->dim());
        for (std::size_t i = 0; i < alg->dim(); ++i) c[i] = s.basis(i, j);
        out.push_back(Element::from_coords(alg, c));
    }
    return out;
}

std::vector<Element> right_ideal_basis(const Element& p) {
    const auto& alg = p.algebra();
    std::vector<std::vector<Complex>> vs;
    for (std::size_t i = 0; i < alg->dim(); ++i)
        vs.push_back((p * alg->basis_element(i)).coords());
    const Subspace s = subspace_span_coords(alg->dim(), vs, alg->tol());
    std::vector<Element> out;
    for (std::size_t j = 0; j < s.dim(); ++j) {
        std::vector<Complex> c(alg->dim());
        for (std::size_t i = 0; i < alg->dim(); ++i) c[i] = s.basis(i, j);
        out.push_back(Element::from_coords(alg, c));
    }
    return out;
}

IdealCert ideal_basis(const Element& p) {
    if (!is_projection(p)) throw NotAProjection("ideal_basis: element is not idempotent");
    const auto& alg = p.algebra();
    const std::size_t d = alg->dim();
    IdealCert cert;
    cert.generator = p;

    if (p.is_zero(alg->tol().residual_tol)) {
        cert.basis = Subspace{d, ComplexMatrix(d, 0)};
        cert.minimal = false;
        return cert;
    }

    std::vector<std::vector<Complex>> vs;
    vs.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        const Element eip = alg->basis_element(i) * p;
        for (std::size_t j = 0; j < d; ++j) vs.push_back((eip * alg->basis_element(j)).coords());
    }
    cert.basis = subspace_span_coords(d, vs, alg->tol());

    const bool rank_one = is_minimal_projection(p);
    if (rank_one && p.is_blocks()) {
        // For a rank-one generator, J_p is the unique block supporting p.
        const auto& tol = alg->tol();
        std::size_t support = SIZE_MAX, count = 0;
        for (std::size_t b = 0; b < p.blocks().size(); ++b) {
            if (p.block(b).frobenius_norm() > tol.residual_tol) {
                support = b;
                ++count;
            }
        }
        if (count == 1) {
            cert.block_index = support;
            const std::size_t n = alg->blocks_pres().sizes[support];
            cert.minimal = (cert.basis.dim() == n * n);
        }
    } else if (rank_one) {
        // Structure presentation: J_p minimal iff dim J_p = (dim Ap)^2,
        // the full matrix algebra the tensor model guarantees.
        const std::size_t n = left_ideal_basis(p).size();
        cert.minimal = (cert.basis.dim() == n * n);
    }
    return cert;
}

bool ideals_orthogonal(const Element& p, const Element& q) {
    const auto& alg = p.algebra();
    if (q.algebra() != alg) throw DimensionError("ideals_orthogonal: mixed algebras");
    if (!is_minimal_projection(p) || !is_minimal_projection(q))
        throw PreconditionError("ideals_orthogonal: both projections must be rank one");
    const IdealCert cp = ideal_basis(p);
    const IdealCert cq = ideal_basis(q);
    const double tol = alg->tol().residual_tol;
    auto basis_elements = [&](const Subspace& s) {
        std::vector<Element> out;
        for (std::size_t j = 0; j < s.dim(); ++j) {
            std::vector<Complex> c(alg->dim());
            for (std::size_t i = 0; i < alg->dim(); ++i) c[i] = s.basis(i, j);
            out.push_back(Element::from_coords(alg, c));
        }
        return out;
    };
    const auto bp = basis_elements(cp.basis);
    const auto bq = basis_elements(cq.basis);
    for (const auto& x : bp)
        for (const auto& y : bq)
            if ((x * y).norm() > tol || (y * x).norm() > tol) return false;
    return true;
}

namespace {

// Span dimension of {l e_i r}, dropping products that are numerically zero
// relative to the factors. Without the filter a family of pure-noise
// products (norms ~1e-13) would be ranked against its own largest member
// and read as full-dimensional.
std::size_t sandwich_dim(const Element& l, const Element& r) {
    const auto& alg = l.algebra();
    const double floor =
        alg->tol().residual_tol * std::max(1.0, l.norm() * r.norm()) * alg->dim();
    std::vector<Element> span;
    span.reserve(alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        Element prod = l * alg->basis_element(i) * r;
        if (prod.norm() > floor) span.push_back(std::move(prod));
    }
    if (span.empty()) return 0;
    return subspace_span(span).dim();
}

}  // namespace

std::size_t pairwise_dim(const Element& p, const Element& q) {
    if (!is_projection(p) || !is_projection(q))
        throw NotAProjection("pairwise_dim: inputs must be projections");
    return sandwich_dim(p, q);
}

std::size_t corner_dim(const Element& a) { return sandwich_dim(a, a); }

TensorModelReport tensor_model_check(const Element& p) {
    if (!is_minimal_projection(p))
        throw PreconditionError("tensor_model_check: p must be a rank-one projection");
    const auto& alg = p.algebra();
    const auto& tol = alg->tol();

    TensorModelReport rep;
    const auto left = left_ideal_basis(p);    // basis of Ap
    const auto right = right_ideal_basis(p);  // basis of pA
    rep.dim_left = left.size();
    rep.dim_right = right.size();
    rep.dim_ideal = ideal_basis(p).basis.dim();
    rep.dims_match =
        (rep.dim_left == rep.dim_right) && (rep.dim_ideal == rep.dim_left * rep.dim_right);

    // Product rule (x1 p y1)(x2 p y2) = Tr(y1 x2) (x1 p y2) on all basis
    // pairs. For y in pA and x in Ap, y*x lands in pAp = Cp, so the trace
    // equals the corner coefficient (Tr p = 1 for minimal p).
    rep.product_rule_holds = true;
    rep.max_product_residual = 0;
    for (const auto& x1 : left) {
        for (const auto& y1 : right) {
            const Element lhs_left = x1 * p * y1;
            for (const auto& x2 : left) {
                const Complex tr = corner_coefficient(p, y1 * x2);
                for (const auto& y2 : right) {
                    const Element lhs = lhs_left * (x2 * p * y2);
                    const Element rhs = tr * (x1 * p * y2);
                    const double res = (lhs - rhs).norm();
                    rep.max_product_residual = std::max(rep.max_product_residual, res);
                }
            }
        }
    }
    if (rep.max_product_residual > tol.residual_tol * 10.0) rep.product_rule_holds = false;
    return rep;
}

}  // namespace socle
