#include <doctest.h>

#include <cstdlib>

#include "socle/io.hpp"

using namespace socle;
using nlohmann::json;

TEST_CASE("complex and matrix json round-trip") {
    Complex z(1.5, -2.25);
    CHECK(complex_from_json(complex_to_json(z)) == z);
    ComplexMatrix m(2, 3);
    m(0, 0) = Complex(1, 2);
    m(1, 2) = Complex(-3, 0.5);
    ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK((back - m).frobenius_norm() == 0.0);
}

TEST_CASE("instance round-trip for blocks presentations") {
    Tolerance tol;
    Instance inst = gen_instance({2, 1}, 4, false, tol);
    json j = instance_to_json(inst);
    Instance back = parse_instance(j, tol);
    CHECK(back.algebra->is_blocks());
    CHECK(back.algebra->dim() == inst.algebra->dim());
    REQUIRE(back.elements.count("a") == 1);
    CHECK((back.elements.at("a") - Element::from_coords(back.algebra,
                                                        inst.elements.at("a").coords()))
              .norm() < 1e-14);
}

TEST_CASE("instance round-trip for structure presentations") {
    Tolerance tol;
    Instance inst = gen_instance({2, 1}, 4, true, tol);
    json j = instance_to_json(inst);
    Instance back = parse_instance(j, tol);
    CHECK(!back.algebra->is_blocks());
    CHECK(back.algebra->dim() == 5);
    CHECK(back.elements.count("a0") == 1);
}

TEST_CASE("gen_instance is deterministic and a0 is per-block traceless") {
    Tolerance tol;
    Instance a = gen_instance({2, 2}, 11, false, tol);
    Instance b = gen_instance({2, 2}, 11, false, tol);
    CHECK((a.elements.at("a") - Element::from_coords(a.algebra,
                                                     b.elements.at("a").coords()))
              .norm() == 0.0);
    for (const auto& blk : a.elements.at("a0").blocks())
        CHECK(std::abs(blk.trace()) < 1e-12);
}

TEST_CASE("malformed input raises IoError") {
    Tolerance tol;
    CHECK_THROWS_AS(parse_instance(json{{"foo", 1}}, tol), IoError);
    CHECK_THROWS_AS(parse_instance(json{{"algebra", {{"kind", "nonsense"}}}}, tol), IoError);
    CHECK_THROWS_AS(parse_instance(json{{"algebra", {{"kind", "blocks"}}}}, tol), IoError);
    json bad = {{"algebra", {{"kind", "blocks"}, {"sizes", {2}}}},
                {"elements", {{"a", {{"blocks", json::array()}}}}}};
    CHECK_THROWS_AS(parse_instance(bad, tol), IoError);
}

TEST_CASE("tolerance_from_env reads overrides") {
    setenv("SOCLE_TOL_RANK", "1e-10", 1);
    setenv("SOCLE_TOL_RESIDUAL", "1e-7", 1);
    Tolerance t = tolerance_from_env();
    CHECK(t.rank_tol == 1e-10);
    CHECK(t.residual_tol == 1e-7);
    CHECK(t.cluster_tol == Tolerance{}.cluster_tol);
    setenv("SOCLE_TOL_RANK", "not-a-number", 1);
    CHECK_THROWS_AS(tolerance_from_env(), IoError);
    unsetenv("SOCLE_TOL_RANK");
    unsetenv("SOCLE_TOL_RESIDUAL");
}

TEST_CASE("serializers produce the documented shapes") {
    Tolerance tol;
    Instance inst = gen_instance({2}, 3, false, tol);
    const Element& a0 = inst.elements.at("a0");
    json cert = cert_to_json(shoda_socle(a0, 3));
    CHECK(cert.contains("x"));
    CHECK(cert.contains("y"));
    CHECK(cert.contains("residual"));
    CHECK(cert["residual"].get<double>() <= 1e-8);
    json mem = membership_to_json(in_commutator_space(a0));
    CHECK(mem["member"].get<bool>());
    json eq = equivalence_to_json(equivalence_harness(inst.algebra, 3));
    CHECK(eq.contains("consistent"));
}
