#pragma once

#include <optional>
#include <utility>

#include "socle/wedderburn.hpp"

namespace socle {

/// Membership in the commutator subspace was required but does not hold;
/// carries the per-ideal trace obstruction.
struct NotInCommutatorSpace : PreconditionError {
    explicit NotInCommutatorSpace(std::vector<Complex> traces)
        : PreconditionError("element is not in the commutator space"), traces(std::move(traces)) {}
    std::vector<Complex> traces;
};

/// Certificate a = [x, y] with |[x,y] - target| <= residual. Certificates
/// from shoda_socle additionally satisfy rank_x, rank_y <= rank(target).
struct CommutatorCert {
    Element x;
    Element y;
    Element target;
    double residual = 0;
    std::size_t rank_x = 0;
    std::size_t rank_y = 0;
};

/// Per-ideal trace criterion: member iff every minimal-ideal component of a
/// is traceless. The trace vector is the certificate either way.
struct CommutatorMembership {
    bool member = false;
    std::vector<Complex> traces;  // one per ideal, largest block first
};

/// Invertible S with S m S^-1 zero-diagonal. Requires trace(m) ~ 0; a
/// nonzero scalar input is impossible under that precondition and rejected.
ComplexMatrix zero_diagonal_similarity(const ComplexMatrix& m, const Tolerance& tol);

/// Classical constructive Shoda factorization of a traceless matrix:
/// [X, Y] = m. Zero-diagonal similarity, X0 = diag(1..k),
/// Y0_ij = Z_ij / (i - j), then undo the similarity.
std::pair<ComplexMatrix, ComplexMatrix> shoda_matrix(const ComplexMatrix& m,
                                                     const Tolerance& tol);

CommutatorMembership in_commutator_space(const Element& a, std::uint64_t seed = 0);

/// Generalized factorization a = [x, y] with rank(x), rank(y) <= rank(a),
/// solved per ideal component through the corner trick and summed across
/// ideals by orthogonality. Throws NotInCommutatorSpace when membership
/// fails.
CommutatorCert shoda_socle(const Element& a, std::uint64_t seed = 0);

/// Single-corner route available when dim aAa = rank(a)^2: no per-ideal
/// split needed. nullopt = hypothesis fails (not a counterexample).
std::optional<CommutatorCert> corner_square_route(const Element& a, std::uint64_t seed = 0);

}  // namespace socle
