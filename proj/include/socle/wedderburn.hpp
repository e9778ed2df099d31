#pragma once

#include "socle/ideals.hpp"

namespace socle {

/// Dual bases {p, u_2..u_n} of Ap and {p, v_2..v_n} of pA with
///   p u_i = v_i p = 0,  u_i^2 = v_i^2 = 0,
///   u_i p = u_i,  p v_i = v_i,
///   v_i u_j = delta_ij p.
struct DualBases {
    Element p;
    std::vector<Element> us;
    std::vector<Element> vs;
};

/// Matrix units of one minimal two-sided ideal: e_11 = p, e_i1 = u_i,
/// e_1j = v_j, e_ij = u_i v_j (1-based, unit at (1,1)).
struct MatrixUnits {
    Element p;
    std::size_t n = 0;
    std::vector<Element> units;  // row-major, units[i*n + j] = e_{i+1, j+1}

    const Element& at(std::size_t i, std::size_t j) const { return units[i * n + j]; }
};

/// Explicit isomorphism A -> M_{n1} + ... + M_{nk}: block sizes, matrix-unit
/// preimages, and the forward/backward coordinate maps.
struct WedderburnIso {
    AlgebraPtr source;
    std::vector<std::size_t> sizes;
    std::vector<MatrixUnits> blocks;  // one per size, same order
    ComplexMatrix backward;           // d x d, columns = coords of units
    ComplexMatrix forward;            // d x d, inverse of backward

    /// Image of a as an element of the explicit block algebra.
    Element map_forward(const Element& a) const;
    /// Preimage of a block element.
    Element map_backward(const Element& b) const;
    /// The target Blocks algebra.
    AlgebraPtr target() const { return target_; }

    AlgebraPtr target_;
};

/// y with Tr(b y) = 1 and Tr(a_i y) = 0, i.e. sigma(b y) != {0} while
/// sigma(a_i y) = {0}. Inputs must be linearly independent rank-one elements.
Element separating_element(const Element& b, const std::vector<Element>& as);

/// Dual-basis construction for a minimal projection p.
DualBases dual_bases(const Element& p);

/// Matrix units of J_p from dual bases; relations residual-checked.
MatrixUnits matrix_units(const Element& p);

/// Full decomposition: harvest minimal projections from Riesz projections
/// of seeded random elements, group them into ideal classes, build matrix
/// units per class, assemble the coordinate maps, and verify everything.
WedderburnIso wedderburn_decompose(const AlgebraPtr& alg, std::uint64_t seed = 0);

/// Characteristic functional of a rank-one element: a x a = tau_a(x) a.
Complex characteristic_functional(const Element& a, const Element& x);

/// Report for the enveloping Wedderburn subalgebra containing given
/// elements (z_j in B, z_j A z_j in B, B closed under multiplication).
struct EnvelopeReport {
    Subspace space;
    std::vector<std::size_t> sizes;  // per-class unit counts
    bool contains_generators = false;
    bool contains_corners = false;
    bool multiplicatively_closed = false;
};

EnvelopeReport enveloping_subalgebra(const std::vector<Element>& zs, std::uint64_t seed = 0);

/// rank via a Wedderburn iso: classical block rank of the image.
std::size_t rank_via_iso(const WedderburnIso& iso, const Element& a);

}  // namespace socle
