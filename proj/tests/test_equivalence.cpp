#include "doctest.h"

#include <random>
#include <sstream>

#include "qherm/equivalence.hpp"

using namespace qherm;

TEST_CASE("every ordered parameter pair at q=2 has a verified witness") {
    Field f(1);
    auto params = all_valid_params(f);
    REQUIRE(params.size() == 6);
    for (VarietyParams from : params)
        for (VarietyParams to : params) {
            CAPTURE(static_cast<int>(from.a));
            CAPTURE(static_cast<int>(from.b));
            CAPTURE(static_cast<int>(to.a));
            CAPTURE(static_cast<int>(to.b));
            auto w = find_equivalence(f, from, to);
            REQUIRE(w.has_value());
            CHECK(w->source == from);
            CHECK(w->target == to);
            CHECK(verify_witness(f, *w));
            // the verification is about the actual point sets
            PointSet img = image_of_set(f, w->map, build_m_variety(f, from));
            CHECK(img.pts == build_m_variety(f, to).pts);

            auto wf = find_equivalence_fast(f, from, to);
            REQUIRE(wf.has_value());
            CHECK(verify_witness(f, *wf));
        }
}

TEST_CASE("canonical reduction lands on the distinguished second parameter") {
    for (unsigned k : {1u, 2u}) {
        Field f(k);
        for (VarietyParams p : all_valid_params(f)) {
            EquivalenceWitness w = reduce_to_canonical(f, p);
            CHECK(w.source == p);
            CHECK(w.target.b == f.epsilon());
            CHECK(verify_witness(f, w));
        }
        // pairs already in canonical position reduce by the identity
        EquivalenceWitness w = reduce_to_canonical(f, {1, f.epsilon()});
        CHECK(w.target == VarietyParams{1, f.epsilon()});
        CHECK(w.map == identity_collineation());
    }
    // at q=2 the other admissible b differs from epsilon by a subfield
    // element, so reduction keeps the point set and the map is the identity
    Field f(1);
    EquivalenceWitness w = reduce_to_canonical(f, {3, 3});
    CHECK(w.target == VarietyParams{3, 2});
    CHECK(w.map == identity_collineation());
}

TEST_CASE("direct and chained searches agree at q=4 on a sample") {
    Field f(2);
    auto params = all_valid_params(f);
    std::mt19937 rng(0xe41u);
    for (int rep = 0; rep < 8; ++rep) {
        VarietyParams from = params[rng() % params.size()];
        VarietyParams to = params[rng() % params.size()];
        CAPTURE(static_cast<int>(from.a));
        CAPTURE(static_cast<int>(from.b));
        CAPTURE(static_cast<int>(to.a));
        CAPTURE(static_cast<int>(to.b));
        auto direct = find_equivalence(f, from, to);
        auto fast = find_equivalence_fast(f, from, to);
        REQUIRE(direct.has_value());
        REQUIRE(fast.has_value());
        CHECK(verify_witness(f, *direct));
        CHECK(verify_witness(f, *fast));
    }
}

TEST_CASE("one equivalence class at both field sizes") {
    CHECK(parameter_class_count(Field(1)) == 1);
    CHECK(parameter_class_count(Field(2)) == 1);
}

TEST_CASE("witness verification rejects corrupted maps") {
    Field f(1);
    VarietyParams from{2, 3}, to{1, 2};
    auto w = find_equivalence(f, from, to);
    REQUIRE(w.has_value());
    REQUIRE(verify_witness(f, *w));

    // composing with a stabilizer of the target keeps the witness valid:
    // verification is about sets, not a privileged matrix
    EquivalenceWitness still_good = *w;
    still_good.map = compose(f, w->map, make_phi(f, 1));
    CHECK(verify_witness(f, still_good));

    // composing with a map that moves the target set must be caught
    std::array<Fe, 16> swap_jx{0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    EquivalenceWitness broken = *w;
    broken.map = compose(f, w->map, make_collineation(f, swap_jx, 0));
    CHECK(!verify_witness(f, broken));

    // lying about the endpoints must be caught too
    EquivalenceWitness wrong_target = *w;
    wrong_target.target = VarietyParams{2, 2}; // valid pair, different set
    CHECK(!verify_witness(f, wrong_target));
    EquivalenceWitness wrong_source = *w;
    wrong_source.source = VarietyParams{3, 2};
    CHECK(!verify_witness(f, wrong_source));
}

TEST_CASE("witness files round trip") {
    Field f(1);
    auto w = find_equivalence(f, {1, 2}, {3, 3});
    REQUIRE(w.has_value());
    std::ostringstream os;
    write_witness(os, *w);
    std::istringstream is(os.str());
    EquivalenceWitness back = read_witness(is, f);
    CHECK(back.source == w->source);
    CHECK(back.target == w->target);
    CHECK(back.case_tag == w->case_tag);
    CHECK(back.map == w->map);
    CHECK(verify_witness(f, back));

    // a semilinear witness survives the round trip with its exponent
    EquivalenceWitness semi{{1, 2}, {1, 3}, "manual", make_sigma(f, 1)};
    REQUIRE(verify_witness(f, semi)); // squaring maps (1,2) onto (1,3): same set
    std::ostringstream os2;
    write_witness(os2, semi);
    std::istringstream is2(os2.str());
    EquivalenceWitness back2 = read_witness(is2, f);
    CHECK(back2.map.aut == 1);
    CHECK(verify_witness(f, back2));

    auto reject = [&](const std::string& text) {
        std::istringstream bad(text);
        CHECK_THROWS(read_witness(bad, f));
    };
    reject("");
    reject("1 2 1\n");
    reject("1 2 1 2 I\n1 0 0\n");
    reject("1 2 1 2 I\n0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n");
}

TEST_CASE("stabilizer generator family really stabilizes") {
    for (unsigned k : {1u, 2u}) {
        Field f(k);
        VarietyParams p{f.k() == 1 ? static_cast<Fe>(3) : static_cast<Fe>(5), f.epsilon()};
        validate_params(f, p);
        PointSet m = build_m_variety(f, p);
        for (bool semi : {false, true}) {
            auto gens = stabilizer_generators(f, p, semi);
            // q phis + 4k psis + q taus + (q-1) mus (+ conjugated sigma)
            std::size_t expect = f.q() + 4 * f.k() + f.q() + (f.q() - 1) + (semi ? 1 : 0);
            CHECK(gens.size() == expect);
            for (const auto& g : gens) CHECK(stabilizes(f, g, m));
        }
    }
}
