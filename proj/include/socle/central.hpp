#pragma once

#include "socle/shoda.hpp"

namespace socle {

/// Verdict with the elements that witness a failure (empty when the
/// predicate holds). For pair-valued witnesses the two elements are stored
/// in order.
struct PredicateResult {
    bool holds = false;
    std::vector<Element> witnesses;
};

enum class ExtremalMode { Lower, Upper };

/// Soc A lies in the center: every basis pair commutes.
PredicateResult pred_central(const AlgebraPtr& alg);

/// No nonzero square-zero element; decided structurally from the block
/// sizes, with an e12-type witness (conjugated back for Structure inputs).
PredicateResult pred_square_zero(const AlgebraPtr& alg, std::uint64_t seed = 0);

/// dim aAa = rank(a) for all a: exhaustive on basis elements plus `trials`
/// random samples.
PredicateResult pred_corner_rank(const AlgebraPtr& alg, std::size_t trials = 64,
                                 std::uint64_t seed = 0);

/// The commutator subspace is {0}: all basis pairs commute exactly
/// (equivalent by bilinearity).
PredicateResult pred_commutators_trivial(const AlgebraPtr& alg);

/// Sampled over random finite-rank projections (sums of Riesz projections
/// of random elements). Lower: dim pAp = rank(p). Upper: dim pAp = rank(p)^2.
PredicateResult pred_extremal_dims(const AlgebraPtr& alg, ExtremalMode mode,
                                   std::size_t trials = 64, std::uint64_t seed = 0);

/// All predicates at once, with the mutual-equivalence verdicts: the five
/// centrality characterizations must agree, and the upper extremal bound
/// must hold exactly when the algebra is a single block.
struct EquivalenceReport {
    PredicateResult central;
    PredicateResult square_zero;
    PredicateResult corner_rank;
    PredicateResult commutators_trivial;
    PredicateResult extremal_lower;
    PredicateResult extremal_upper;
    std::size_t block_count = 0;

    bool lower_family_consistent = false;
    bool upper_matches_single_block = false;
    std::vector<std::string> mismatches;

    bool consistent() const { return lower_family_consistent && upper_matches_single_block; }
};

EquivalenceReport equivalence_harness(const AlgebraPtr& alg, std::uint64_t seed = 0);

}  // namespace socle
