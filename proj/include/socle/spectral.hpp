#pragma once

#include "socle/algebra.hpp"

namespace socle {

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Sampled spectral rank disagreed with the direct block rank.
struct RankSamplingError : NumericError {
    RankSamplingError(std::size_t sampled, std::size_t direct)
        : NumericError("rank sampling failed: sampled " + std::to_string(sampled) +
                       " vs direct " + std::to_string(direct)),
          sampled(sampled),
          direct(direct) {}
    std::size_t sampled, direct;
};

/// Operation needs a Wedderburn decomposition for a structure-presented input.
struct NeedsDecomposition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadSpectralValue : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DecompositionFailed : NumericError {
    using NumericError::NumericError;
};

/// Clustered distinct spectral values with multiplicities and Riesz
/// projections. Multiplicity bookkeeping follows
///   sum_lambda m(lambda, a) = rank(a) + (1 if 0 in sigma(a)).
struct SpectralData {
    struct Entry {
        Complex lambda;
        std::size_t multiplicity;
        Element riesz;  // zero element for lambda = 0 (accounted, not projected)
    };
    std::vector<Entry> distinct;
    bool includes_zero = false;

    std::size_t multiplicity_sum() const {
        std::size_t s = 0;
        for (const auto& e : distinct) s += e.multiplicity;
        return s;
    }
};

/// a = sum lambda_i * u * p_i with u invertible and p_i orthogonal minimal
/// projections; term count equals rank(a).
struct Diagonalization {
    Element u;
    std::vector<std::pair<Complex, Element>> terms;
};

/// Sum of classical per-block matrix ranks. Blocks presentation only;
/// structure elements must be mapped through a WedderburnIso first.
std::size_t rank_direct(const Element& a);

/// Max over `samples` dense random x of the number of distinct nonzero
/// clustered spectral values of x*a. Cross-checked against rank_direct on
/// Blocks presentations; a disagreement throws RankSamplingError.
std::size_t spectral_rank(const Element& a, std::size_t samples = 32, std::uint64_t seed = 0);

/// rank(a) by the cheapest trustworthy route for the presentation.
std::size_t rank_of(const Element& a);

/// x in E(a): #sigma'(xa) attains rank(a).
bool is_in_E(const Element& a, const Element& x);

/// rank(a) = #sigma'(a): the element's own spectrum realizes its rank.
bool is_maximal_rank(const Element& a);

/// Riesz projection of a at a set of distinct nonzero spectral values.
/// Algebraic path (generalized eigenprojections per block, or functional
/// calculus on the regular representation for Structure inputs). Idempotent
/// and commuting with a to residual_tol.
Element riesz_projection(const Element& a, const std::vector<Complex>& lambdas);

/// m(lambda, a): rank of the Riesz projection for lambda != 0; Eq-style
/// bookkeeping (rank + 1 - sum of nonzero multiplicities) for lambda = 0.
std::size_t multiplicity(const Element& a, Complex lambda);

/// Full spectral data of a: distinct values, multiplicities, projections.
SpectralData spectral_data(const Element& a);

/// Tr(a) = sum lambda * m(lambda, a); cross-checked against the sum of
/// classical block traces.
Complex trace(const Element& a);

/// For a maximal finite-rank element: a = sum lambda_i p_i with minimal
/// pairwise-orthogonal Riesz projections.
std::vector<std::pair<Complex, Element>> diagonalize_maximal(const Element& a);

/// Perturbation-based diagonalization of arbitrary nonzero socle elements:
/// find near-identity v with v*a maximal of full rank, diagonalize, return
/// u = v^{-1} and the terms.
Diagonalization socle_decompose(const Element& a, std::uint64_t seed = 0);

/// Von Neumann regular witness: x with a*x*a = a.
Element vn_regular_witness(const Element& a, std::uint64_t seed = 0);

/// Riesz projection of a square matrix at one clustered spectral value
/// (projection onto the generalized eigenspace along its complement).
ComplexMatrix matrix_riesz_projection(const ComplexMatrix& m, Complex lambda,
                                      const Tolerance& tol);

}  // namespace socle
