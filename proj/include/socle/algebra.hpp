#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "socle/linalg.hpp"

namespace socle {

class Algebra;
class Element;

/// Explicit block direct sum M_{n1} + ... + M_{nk}.
struct BlocksPresentation {
    std::vector<std::size_t> sizes;
};

/// Structure constants c_{ij}^k with a distinguished unit, over a basis
/// e_1..e_d: e_i * e_j = sum_k c_{ij}^k e_k.
struct StructurePresentation {
    std::size_t dim = 0;
    std::vector<Complex> table;  // c[(i*d + j)*d + k]
    std::vector<Complex> unit;
};

/// A finite-dimensional unital complex algebra. Immutable after
/// construction; Structure presentations are validated (associativity and
/// unit laws on all basis triples) at load time.
class Algebra : public std::enable_shared_from_this<Algebra> {
  public:
    static std::shared_ptr<const Algebra> blocks(std::vector<std::size_t> sizes,
                                                 Tolerance tol = {});
    static std::shared_ptr<const Algebra> structure(StructurePresentation pres,
                                                    Tolerance tol = {});

    bool is_blocks() const { return std::holds_alternative<BlocksPresentation>(pres_); }
    const BlocksPresentation& blocks_pres() const { return std::get<BlocksPresentation>(pres_); }
    const StructurePresentation& structure_pres() const {
        return std::get<StructurePresentation>(pres_);
    }

    /// Linear dimension: sum of n_i^2, or d.
    std::size_t dim() const { return dim_; }
    const Tolerance& tol() const { return tol_; }

    Element unit() const;
    Element zero_element() const;
    Element basis_element(std::size_t i) const;

    /// Multiplication of coordinate vectors (flattened for Blocks).
    std::vector<Complex> multiply_coords(const std::vector<Complex>& x,
                                         const std::vector<Complex>& y) const;

    /// Blocks only: (block, row, col) of flat coordinate index.
    std::size_t block_offset(std::size_t block) const;

  private:
    explicit Algebra(BlocksPresentation p, Tolerance tol);
    explicit Algebra(StructurePresentation p, Tolerance tol);
    void validate_structure() const;

    std::variant<BlocksPresentation, StructurePresentation> pres_;
    Tolerance tol_;
    std::size_t dim_ = 0;
    std::vector<std::size_t> offsets_;  // Blocks: flat offset of each block
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// An algebra member: a list of block matrices, or a coordinate vector.
/// Value semantics; never outlives its algebra (shared ownership).
class Element {
  public:
    Element() = default;
    Element(AlgebraPtr alg, std::vector<ComplexMatrix> blocks);
    Element(AlgebraPtr alg, std::vector<Complex> coords);

    const AlgebraPtr& algebra() const { return alg_; }
    bool is_blocks() const;
    const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
    ComplexMatrix& block(std::size_t b) { return blocks_[b]; }
    const ComplexMatrix& block(std::size_t b) const { return blocks_[b]; }

    /// Flat coordinates over the algebra basis (blocks flattened row-major).
    std::vector<Complex> coords() const;
    static Element from_coords(const AlgebraPtr& alg, const std::vector<Complex>& coords);

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator*(Complex s) const;
    Element operator-() const;

    /// [a, b] = ab - ba
    Element commutator(const Element& o) const;

    double norm() const;
    bool is_zero(double tol) const;

  private:
    void check_same_algebra(const Element& o) const;

    AlgebraPtr alg_;
    std::vector<ComplexMatrix> blocks_;  // Blocks presentation
    std::vector<Complex> coords_;        // Structure presentation
};

Element operator*(Complex s, const Element& e);

/// Spectrum as clustered distinct values.
struct Spectrum {
    std::vector<std::pair<Complex, std::size_t>> values;  // (value, cluster count)
    /// Blocks: counts are algebraic eigenvalue multiplicities. Structure:
    /// counts come from the regular representation and are NOT algebra
    /// multiplicities.
    bool counts_are_multiplicities = false;

    bool contains(Complex lambda, double radius) const;
    std::size_t nonzero_count(double radius) const;
};

/// sigma(a) via per-block eigenvalues (Blocks) or the left regular matrix
/// (Structure).
Spectrum spectrum(const Element& a);

/// True iff a is invertible; witness satisfies |a*inv - 1| <= residual_tol.
struct InvertibilityResult {
    bool invertible = false;
    Element inverse;  // valid only when invertible
};
InvertibilityResult is_invertible(const Element& a);

/// d x d matrix of x -> a*x over the flat algebra basis.
ComplexMatrix left_regular_matrix(const Element& a);

enum class RandomProfile { Dense, HermitianLike, NearIdentity };

/// Deterministic for fixed (seed, profile). NearIdentity draws 1 + eps*dense.
Element random_element(const AlgebraPtr& alg, std::uint64_t seed,
                       RandomProfile profile = RandomProfile::Dense, double eps = 0.1);

/// A subspace of the algebra's coordinate space, stored as an orthonormal
/// column basis.
struct Subspace {
    std::size_t ambient_dim = 0;
    ComplexMatrix basis;  // ambient_dim x dim, orthonormal columns

    std::size_t dim() const { return basis.cols(); }
};

Subspace subspace_span(const std::vector<Element>& vectors);
Subspace subspace_span_coords(std::size_t ambient, const std::vector<std::vector<Complex>>& vs,
                              const Tolerance& tol);
bool subspace_contains(const Subspace& s, const Element& v);

}  // namespace socle
