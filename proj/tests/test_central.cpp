#include <doctest.h>

#include "socle/central.hpp"
#include "socle/io.hpp"

using namespace socle;

TEST_CASE("predicates on a commutative algebra") {
    auto alg = Algebra::blocks({1, 1});
    CHECK(pred_central(alg).holds);
    CHECK(pred_square_zero(alg).holds);
    CHECK(pred_corner_rank(alg, 16, 0).holds);
    CHECK(pred_commutators_trivial(alg).holds);
    CHECK(pred_extremal_dims(alg, ExtremalMode::Lower, 16, 0).holds);
    // two blocks: the upper bound dim pAp = rank^2 fails for mixed projections
    CHECK(!pred_extremal_dims(alg, ExtremalMode::Upper, 16, 0).holds);
}

TEST_CASE("predicates on a single matrix block") {
    auto alg = Algebra::blocks({2});
    CHECK(!pred_central(alg).holds);
    PredicateResult sq = pred_square_zero(alg, 0);
    CHECK(!sq.holds);
    REQUIRE(sq.witnesses.size() == 1);
    const Element& w = sq.witnesses[0];
    CHECK(w.norm() > 1e-6);
    CHECK((w * w).norm() < 1e-10);
    CHECK(!pred_corner_rank(alg, 16, 0).holds);
    CHECK(!pred_commutators_trivial(alg).holds);
    CHECK(!pred_extremal_dims(alg, ExtremalMode::Lower, 16, 0).holds);
    CHECK(pred_extremal_dims(alg, ExtremalMode::Upper, 16, 0).holds);
}

TEST_CASE("witnesses are returned on failure") {
    auto alg = Algebra::blocks({2, 1});
    PredicateResult c = pred_central(alg);
    CHECK(!c.holds);
    REQUIRE(c.witnesses.size() == 2);
    CHECK(c.witnesses[0].commutator(c.witnesses[1]).norm() > 1e-8);
    PredicateResult ct = pred_commutators_trivial(alg);
    CHECK(!ct.holds);
    REQUIRE(ct.witnesses.size() == 3);  // x, y, [x, y]
    CHECK((ct.witnesses[0].commutator(ct.witnesses[1]) - ct.witnesses[2]).norm() < 1e-10);
    CHECK(ct.witnesses[2].norm() > 1e-8);
}

TEST_CASE("equivalence harness on block shapes") {
    struct Row {
        std::vector<std::size_t> sizes;
        bool lower;
        std::size_t blocks;
    };
    for (const Row& row : {Row{{1, 1}, true, 2}, Row{{2}, false, 1}, Row{{2, 1}, false, 2},
                           Row{{2, 2}, false, 2}, Row{{3, 2, 1}, false, 3}}) {
        auto alg = Algebra::blocks(row.sizes);
        EquivalenceReport rep = equivalence_harness(alg, 1);
        CHECK(rep.consistent());
        CHECK(rep.block_count == row.blocks);
        CHECK(rep.central.holds == row.lower);
        CHECK(rep.square_zero.holds == row.lower);
        CHECK(rep.corner_rank.holds == row.lower);
        CHECK(rep.commutators_trivial.holds == row.lower);
        CHECK(rep.extremal_lower.holds == row.lower);
        CHECK(rep.extremal_upper.holds == (row.blocks == 1));
    }
}

TEST_CASE("equivalence harness on scrambled structure presentations") {
    Tolerance tol;
    for (auto sizes : std::vector<std::vector<std::size_t>>{{1, 1}, {2, 1}}) {
        Instance inst = gen_instance(sizes, 5, true, tol);
        EquivalenceReport rep = equivalence_harness(inst.algebra, 5);
        CHECK(rep.consistent());
        CHECK(rep.block_count == sizes.size());
        const bool commutative = sizes == std::vector<std::size_t>{1, 1};
        CHECK(rep.central.holds == commutative);
    }
}

TEST_CASE("square-zero witness survives scrambling") {
    Tolerance tol;
    Instance inst = gen_instance({2, 1}, 9, true, tol);
    PredicateResult sq = pred_square_zero(inst.algebra, 9);
    CHECK(!sq.holds);
    REQUIRE(sq.witnesses.size() == 1);
    const Element& w = sq.witnesses[0];
    CHECK(w.norm() > 1e-6);
    CHECK((w * w).norm() < 1e-8);
}
