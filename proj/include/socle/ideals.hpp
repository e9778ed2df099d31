#pragma once

#include <optional>

#include "socle/spectral.hpp"

namespace socle {

struct NotAProjection : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Certificate for the two-sided ideal J_p generated by a projection p.
struct IdealCert {
    Element generator;
    Subspace basis;
    bool minimal = false;
    std::optional<std::size_t> block_index;  // Blocks presentations only
};

/// pAp = Cp: the projection generates a one-dimensional corner.
bool is_minimal_projection(const Element& p);

/// Basis of J_p = span{ e_i p e_j } with a minimality verdict.
IdealCert ideal_basis(const Element& p);

/// J_p * J_q = J_q * J_p = {0} for rank-one p, q.
bool ideals_orthogonal(const Element& p, const Element& q);

/// dim pAq for projections p, q.
std::size_t pairwise_dim(const Element& p, const Element& q);

/// dim aAa for arbitrary a.
std::size_t corner_dim(const Element& a);

/// Verification report for the tensor model J_p ~ Ap (x) pA.
struct TensorModelReport {
    std::size_t dim_left = 0;    // dim Ap
    std::size_t dim_right = 0;   // dim pA
    std::size_t dim_ideal = 0;   // dim J_p
    bool dims_match = false;     // dim J_p == dim_left * dim_right and dim_left == dim_right
    bool product_rule_holds = false;  // (x1 p y1)(x2 p y2) = Tr(y1 x2) (x1 p y2)
    double max_product_residual = 0;
};

TensorModelReport tensor_model_check(const Element& p);

/// Basis (as Elements) of Ap, orthonormal in coordinates.
std::vector<Element> left_ideal_basis(const Element& p);
/// Basis of pA.
std::vector<Element> right_ideal_basis(const Element& p);

/// p is idempotent to residual_tol.
bool is_projection(const Element& p);

/// Scalar c with y = c*p for y in the one-dimensional corner pAp of a
/// minimal projection p.
Complex corner_coefficient(const Element& p, const Element& y);

}  // namespace socle
