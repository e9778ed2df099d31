#include "socle/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace socle {

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

Algebra::Algebra(BlocksPresentation p, Tolerance tol) : pres_(std::move(p)), tol_(tol) {
    tol_.validate();
    const auto& sizes = std::get<BlocksPresentation>(pres_).sizes;
    if (sizes.empty()) throw DimensionError("blocks presentation needs at least one block");
    for (std::size_t n : sizes) {
        if (n == 0) throw DimensionError("block sizes must be >= 1");
        offsets_.push_back(dim_);
        dim_ += n * n;
    }
}

Algebra::Algebra(StructurePresentation p, Tolerance tol) : pres_(std::move(p)), tol_(tol) {
    tol_.validate();
    const auto& sp = std::get<StructurePresentation>(pres_);
    dim_ = sp.dim;
    if (dim_ == 0) throw DimensionError("structure presentation with dim 0");
    if (sp.table.size() != dim_ * dim_ * dim_)
        throw DimensionError("structure table must have d^3 entries");
    if (sp.unit.size() != dim_) throw DimensionError("unit coordinate length mismatch");
    validate_structure();
}

std::shared_ptr<const Algebra> Algebra::blocks(std::vector<std::size_t> sizes, Tolerance tol) {
    return std::shared_ptr<const Algebra>(new Algebra(BlocksPresentation{std::move(sizes)}, tol));
}

std::shared_ptr<const Algebra> Algebra::structure(StructurePresentation pres, Tolerance tol) {
    return std::shared_ptr<const Algebra>(new Algebra(std::move(pres), tol));
}

std::size_t Algebra::block_offset(std::size_t block) const { return offsets_[block]; }

std::vector<Complex> Algebra::multiply_coords(const std::vector<Complex>& x,
                                              const std::vector<Complex>& y) const {
    const std::size_t d = dim_;
    if (x.size() != d || y.size() != d) throw DimensionError("coordinate length mismatch");
    std::vector<Complex> z(d, Complex{});
    if (is_blocks()) {
        const auto& sizes = blocks_pres().sizes;
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            const std::size_t n = sizes[b], off = offsets_[b];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex xik = x[off + i * n + k];
                    if (xik == Complex{}) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        z[off + i * n + j] += xik * y[off + k * n + j];
                }
        }
    } else {
        const auto& sp = structure_pres();
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) {
                const Complex xy = x[i] * y[j];
                if (xy == Complex{}) continue;
                const Complex* row = sp.table.data() + (i * d + j) * d;
                for (std::size_t k = 0; k < d; ++k) z[k] += xy * row[k];
            }
        }
    }
    return z;
}

void Algebra::validate_structure() const {
    const auto& sp = structure_pres();
    const std::size_t d = dim_;
    auto basis_mult = [&](std::size_t i, std::size_t j) {
        return std::vector<Complex>(sp.table.begin() + (i * d + j) * d,
                                    sp.table.begin() + (i * d + j + 1) * d);
    };
    double scale = 0;
    for (const auto& c : sp.table) scale = std::max(scale, std::abs(c));
    scale = std::max(scale, 1.0);
    const double tol = tol_.residual_tol * scale * scale * static_cast<double>(d);

    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto eij = basis_mult(i, j);
            for (std::size_t k = 0; k < d; ++k) {
                // (e_i e_j) e_k vs e_i (e_j e_k)
                std::vector<Complex> lhs(d, Complex{});
                for (std::size_t l = 0; l < d; ++l) {
                    if (eij[l] == Complex{}) continue;
                    const Complex* row = sp.table.data() + (l * d + k) * d;
                    for (std::size_t m = 0; m < d; ++m) lhs[m] += eij[l] * row[m];
                }
                const auto ejk = basis_mult(j, k);
                std::vector<Complex> rhs(d, Complex{});
                for (std::size_t l = 0; l < d; ++l) {
                    if (ejk[l] == Complex{}) continue;
                    const Complex* row = sp.table.data() + (i * d + l) * d;
                    for (std::size_t m = 0; m < d; ++m) rhs[m] += ejk[l] * row[m];
                }
                double err = 0;
                for (std::size_t m = 0; m < d; ++m) err += std::norm(lhs[m] - rhs[m]);
                if (std::sqrt(err) > tol)
                    throw NumericError("structure constants fail associativity on basis triple");
            }
        }
    }
    // Unit laws on every basis vector.
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Complex> ei(d, Complex{});
        ei[i] = 1.0;
        auto left = multiply_coords(sp.unit, ei);
        auto right = multiply_coords(ei, sp.unit);
        double errl = 0, errr = 0;
        for (std::size_t m = 0; m < d; ++m) {
            errl += std::norm(left[m] - ei[m]);
            errr += std::norm(right[m] - ei[m]);
        }
        if (std::sqrt(errl) > tol || std::sqrt(errr) > tol)
            throw NumericError("declared unit is not a two-sided identity");
    }
}

Element Algebra::unit() const {
    auto self = shared_from_this();
    if (is_blocks()) {
        std::vector<ComplexMatrix> bl;
        for (std::size_t n : blocks_pres().sizes) bl.push_back(ComplexMatrix::identity(n));
        return Element(self, std::move(bl));
    }
    return Element(self, structure_pres().unit);
}

Element Algebra::zero_element() const {
    auto self = shared_from_this();
    if (is_blocks()) {
        std::vector<ComplexMatrix> bl;
        for (std::size_t n : blocks_pres().sizes) bl.push_back(ComplexMatrix::zero(n, n));
        return Element(self, std::move(bl));
    }
    return Element(self, std::vector<Complex>(dim_, Complex{}));
}

Element Algebra::basis_element(std::size_t i) const {
    if (i >= dim_) throw DimensionError("basis index out of range");
    std::vector<Complex> c(dim_, Complex{});
    c[i] = 1.0;
    return Element::from_coords(shared_from_this(), c);
}

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element::Element(AlgebraPtr alg, std::vector<ComplexMatrix> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
    if (!alg_->is_blocks()) throw DimensionError("block data for a structure-presented algebra");
    const auto& sizes = alg_->blocks_pres().sizes;
    if (blocks_.size() != sizes.size()) throw DimensionError("block count mismatch");
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        if (blocks_[b].rows() != sizes[b] || blocks_[b].cols() != sizes[b])
            throw DimensionError("block shape mismatch");
        blocks_[b].validate();
    }
}

Element::Element(AlgebraPtr alg, std::vector<Complex> coords)
    : alg_(std::move(alg)), coords_(std::move(coords)) {
    if (alg_->is_blocks()) {
        if (coords_.size() != alg_->dim()) throw DimensionError("coordinate length mismatch");
        const auto& sizes = alg_->blocks_pres().sizes;
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            const std::size_t n = sizes[b], off = alg_->block_offset(b);
            ComplexMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = coords_[off + i * n + j];
            blocks_.push_back(std::move(m));
        }
        coords_.clear();
        for (const auto& m : blocks_) m.validate();
    } else {
        if (coords_.size() != alg_->dim()) throw DimensionError("coordinate length mismatch");
        for (const auto& z : coords_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw NumericError("element has non-finite coordinates");
    }
}

bool Element::is_blocks() const { return alg_ && alg_->is_blocks(); }

std::vector<Complex> Element::coords() const {
    if (!is_blocks()) return coords_;
    std::vector<Complex> c(alg_->dim());
    const auto& sizes = alg_->blocks_pres().sizes;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        const std::size_t n = sizes[b], off = alg_->block_offset(b);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[off + i * n + j] = blocks_[b](i, j);
    }
    return c;
}

Element Element::from_coords(const AlgebraPtr& alg, const std::vector<Complex>& coords) {
    return Element(alg, coords);
}

void Element::check_same_algebra(const Element& o) const {
    if (alg_ != o.alg_) throw DimensionError("elements belong to different algebras");
}

Element Element::operator+(const Element& o) const {
    check_same_algebra(o);
    if (is_blocks()) {
        std::vector<ComplexMatrix> bl;
        for (std::size_t b = 0; b < blocks_.size(); ++b) bl.push_back(blocks_[b] + o.blocks_[b]);
        return Element(alg_, std::move(bl));
    }
    std::vector<Complex> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
    return Element(alg_, std::move(c));
}

Element Element::operator-(const Element& o) const { return *this + (o * Complex(-1.0)); }

Element Element::operator-() const { return *this * Complex(-1.0); }

Element Element::operator*(const Element& o) const {
    check_same_algebra(o);
    if (is_blocks()) {
        std::vector<ComplexMatrix> bl;
        for (std::size_t b = 0; b < blocks_.size(); ++b) bl.push_back(blocks_[b] * o.blocks_[b]);
        return Element(alg_, std::move(bl));
    }
    return Element(alg_, alg_->multiply_coords(coords_, o.coords_));
}

Element Element::operator*(Complex s) const {
    if (is_blocks()) {
        std::vector<ComplexMatrix> bl;
        for (const auto& m : blocks_) bl.push_back(m * s);
        return Element(alg_, std::move(bl));
    }
    std::vector<Complex> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * s;
    return Element(alg_, std::move(c));
}

Element operator*(Complex s, const Element& e) { return e * s; }

Element Element::commutator(const Element& o) const { return (*this) * o - o * (*this); }

double Element::norm() const {
    double s = 0;
    if (is_blocks()) {
        for (const auto& m : blocks_) {
            const double f = m.frobenius_norm();
            s += f * f;
        }
        return std::sqrt(s);
    }
    for (const auto& z : coords_) s += std::norm(z);
    return std::sqrt(s);
}

bool Element::is_zero(double tol) const { return norm() <= tol; }

// ---------------------------------------------------------------------------
// Spectrum / invertibility / regular representation
// ---------------------------------------------------------------------------

bool Spectrum::contains(Complex lambda, double radius) const {
    for (const auto& [v, c] : values)
        if (std::abs(v - lambda) <= radius) return true;
    return false;
}

std::size_t Spectrum::nonzero_count(double radius) const {
    std::size_t k = 0;
    for (const auto& [v, c] : values)
        if (std::abs(v) > radius) ++k;
    return k;
}

Spectrum spectrum(const Element& a) {
    const auto& tol = a.algebra()->tol();
    std::vector<Complex> raw;
    if (a.is_blocks()) {
        for (const auto& m : a.blocks()) {
            auto ev = eigenvalues(m);
            raw.insert(raw.end(), ev.begin(), ev.end());
        }
        return Spectrum{cluster_spectrum(raw, tol), true};
    }
    raw = eigenvalues(left_regular_matrix(a));
    return Spectrum{cluster_spectrum(raw, tol), false};
}

InvertibilityResult is_invertible(const Element& a) {
    const auto& alg = a.algebra();
    const auto& tol = alg->tol();
    if (a.is_blocks()) {
        std::vector<ComplexMatrix> inv_blocks;
        for (const auto& m : a.blocks()) {
            auto inv = inverse(m, tol);
            if (!inv) return {false, Element{}};
            inv_blocks.push_back(std::move(*inv));
        }
        return {true, Element(alg, std::move(inv_blocks))};
    }
    const ComplexMatrix la = left_regular_matrix(a);
    auto sol = solve_linear(la, ComplexMatrix(alg->dim(), 1, alg->structure_pres().unit), tol);
    if (!sol) return {false, Element{}};
    std::vector<Complex> inv_coords(alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i) inv_coords[i] = (*sol)(i, 0);
    Element inv = Element::from_coords(alg, inv_coords);
    // Left inverse equals right inverse in a finite-dimensional unital
    // algebra; verify anyway.
    if ((a * inv - alg->unit()).norm() > tol.residual_tol * std::max(1.0, a.norm()))
        return {false, Element{}};
    return {true, inv};
}

ComplexMatrix left_regular_matrix(const Element& a) {
    const auto& alg = a.algebra();
    const std::size_t d = alg->dim();
    const auto ac = a.coords();
    ComplexMatrix la(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Complex> ej(d, Complex{});
        ej[j] = 1.0;
        const auto col = alg->multiply_coords(ac, ej);
        for (std::size_t i = 0; i < d; ++i) la(i, j) = col[i];
    }
    return la;
}

Element random_element(const AlgebraPtr& alg, std::uint64_t seed, RandomProfile profile,
                       double eps) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t d = alg->dim();
    std::vector<Complex> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = Complex(gauss(rng), gauss(rng));

    if (profile == RandomProfile::HermitianLike && alg->is_blocks()) {
        Element g = Element::from_coords(alg, c);
        std::vector<ComplexMatrix> bl;
        for (const auto& m : g.blocks()) bl.push_back((m + m.adjoint()) * Complex(0.5));
        return Element(alg, std::move(bl));
    }
    Element dense = Element::from_coords(alg, c);
    if (profile == RandomProfile::NearIdentity) return alg->unit() + dense * Complex(eps);
    return dense;
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

Subspace subspace_span_coords(std::size_t ambient, const std::vector<std::vector<Complex>>& vs,
                              const Tolerance& tol) {
    if (vs.empty()) return Subspace{ambient, ComplexMatrix(ambient, 0)};
    ComplexMatrix stacked(ambient, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j) {
        if (vs[j].size() != ambient) throw DimensionError("span: ambient dimension mismatch");
        for (std::size_t i = 0; i < ambient; ++i) stacked(i, j) = vs[j][i];
    }
    return Subspace{ambient, range_basis(stacked, tol)};
}

Subspace subspace_span(const std::vector<Element>& vectors) {
    if (vectors.empty()) throw DimensionError("span of empty element list needs an algebra");
    const auto& alg = vectors.front().algebra();
    std::vector<std::vector<Complex>> vs;
    for (const auto& v : vectors) {
        if (v.algebra() != alg) throw DimensionError("span: mixed algebras");
        vs.push_back(v.coords());
    }
    return subspace_span_coords(alg->dim(), vs, alg->tol());
}

bool subspace_contains(const Subspace& s, const Element& v) {
    const auto c = v.coords();
    if (c.size() != s.ambient_dim) throw DimensionError("membership: dimension mismatch");
    ComplexMatrix b(s.ambient_dim, 1);
    for (std::size_t i = 0; i < s.ambient_dim; ++i) b(i, 0) = c[i];
    const double nv = b.frobenius_norm();
    if (s.dim() == 0) return nv <= v.algebra()->tol().residual_tol;
    const ComplexMatrix x = least_squares(s.basis, b);
    const double res = (s.basis * x - b).frobenius_norm();
    return res <= v.algebra()->tol().residual_tol * std::max(1.0, nv);
}

}  // namespace socle
