#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "qherm/field.hpp"

using namespace qherm;

namespace {

// Independent reference multiplication: schoolbook carry-less product reduced
// by the modulus bit pattern, no tables.
Fe slow_mul(unsigned modulus, unsigned deg, Fe a, Fe b) {
    unsigned acc = 0;
    unsigned aa = a;
    for (unsigned bb = b; bb; bb >>= 1) {
        if (bb & 1u) acc ^= aa;
        aa <<= 1;
        if (aa >> deg & 1u) aa ^= modulus;
    }
    return static_cast<Fe>(acc);
}

unsigned expected_modulus(unsigned k) {
    static const unsigned m[5] = {0, 0x7, 0x13, 0x43, 0x11d};
    return m[k];
}

} // namespace

TEST_CASE("table arithmetic matches the schoolbook reference for every k") {
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        CAPTURE(k);
        REQUIRE(f.modulus() == expected_modulus(k));
        for (unsigned a = 0; a < f.qq(); ++a)
            for (unsigned b = 0; b < f.qq(); ++b) {
                Fe want = slow_mul(f.modulus(), 2 * k, static_cast<Fe>(a), static_cast<Fe>(b));
                REQUIRE(f.mul(static_cast<Fe>(a), static_cast<Fe>(b)) == want);
            }
        for (unsigned a = 1; a < f.qq(); ++a) {
            Fe x = static_cast<Fe>(a);
            REQUIRE(f.mul(x, f.inv(x)) == 1);
            REQUIRE(f.sqr(x) == f.mul(x, x));
            // frobenius x -> x^q is the involution of the quadratic extension
            REQUIRE(f.frob(f.frob(x)) == x);
            REQUIRE(f.pow(x, f.q()) == f.frob(x));
            REQUIRE(f.trace(x) == (x ^ f.frob(x)));
            REQUIRE(f.norm(x) == f.mul(x, f.frob(x)));
            REQUIRE(f.in_subfield(f.trace(x)));
            REQUIRE(f.in_subfield(f.norm(x)));
            REQUIRE(f.sqr(f.sqrt(x)) == x);
        }
    }
}

TEST_CASE("frozen GF(4) values") {
    Field f(1);
    CHECK(f.q() == 2);
    CHECK(f.qq() == 4);
    CHECK(f.mul(2, 2) == 3);     // w^2 = w + 1
    CHECK(f.trace(2) == 1);
    CHECK(f.norm(2) == 1);
    CHECK(f.inv(2) == 3);
    CHECK(f.eta() == 2);
    CHECK(f.epsilon() == 2);
    CHECK(f.solve_trace(1) == std::vector<Fe>{2, 3});
    CHECK(f.solve_trace(0) == std::vector<Fe>{0, 1});
    CHECK(f.solve_norm(1) == std::vector<Fe>{1, 2, 3});
    CHECK(f.coset_reps() == std::vector<Fe>{0, 2});
    CHECK(f.subfield() == std::vector<Fe>{0, 1});
}

TEST_CASE("moduli are the smallest primitive irreducible bit patterns") {
    // Scan every smaller monic pattern of the right degree: each one either
    // has a root construction failure (reducible) or a non-primitive x.
    for (unsigned k = 1; k <= 4; ++k) {
        unsigned deg = 2 * k;
        unsigned chosen = expected_modulus(k);
        for (unsigned m = (1u << deg) | 1u; m < chosen; m += 2) {
            // reducible or non-primitive iff x fails to have order 2^deg - 1
            unsigned order_bound = (1u << deg) - 1;
            unsigned x = 2, steps = 0;
            bool hit_one = false;
            for (unsigned i = 1; i <= order_bound; ++i) {
                x = slow_mul(m, deg, static_cast<Fe>(x), 2);
                // x now equals x^(i+1); order check below uses first return to x^1
                if (x == 2) {
                    steps = i;
                    hit_one = true;
                    break;
                }
            }
            CAPTURE(k);
            CAPTURE(m);
            CHECK((!hit_one || steps < order_bound));
        }
    }
}

TEST_CASE("eta and epsilon frozen per degree") {
    CHECK(Field(1).eta() == 2);
    CHECK(Field(2).eta() == 2);
    CHECK(Field(3).eta() == 34);
    CHECK(Field(4).eta() == 18);
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        CHECK(f.trace(f.eta()) == 1);
        CHECK(f.trace(f.epsilon()) == 1);
        CHECK(f.is_primitive(f.epsilon()));
        CHECK(f.is_primitive(f.omega()));
        // eta is the least trace-1 element; epsilon the least primitive one
        for (Fe x = 0; x < f.eta(); ++x) CHECK(f.trace(x) != 1);
        for (Fe x = 0; x < f.epsilon(); ++x)
            CHECK((f.trace(x) != 1 || !f.is_primitive(x)));
    }
}

TEST_CASE("trace and norm solvers") {
    for (unsigned k = 1; k <= 3; ++k) {
        Field f(k);
        for (Fe s : f.subfield()) {
            auto t = f.solve_trace(s);
            CHECK(t.size() == f.q()); // additive fibers all have size q
            for (Fe x : t) CHECK(f.trace(x) == s);
            if (s != 0) {
                auto n = f.solve_norm(s);
                CHECK(n.size() == f.q() + 1); // norm is (q+1)-to-1 on nonzeros
                for (Fe x : n) CHECK(f.norm(x) == s);
            }
        }
        CHECK(f.solve_norm(0) == std::vector<Fe>{0});
        CHECK_THROWS_AS(f.solve_trace(f.epsilon()), std::invalid_argument);
    }
}

TEST_CASE("coset representatives partition GF(q^2) over GF(q)") {
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        const auto& reps = f.coset_reps();
        REQUIRE(reps.size() == f.q());
        std::set<Fe> seen;
        for (Fe c : reps)
            for (Fe u : f.subfield()) seen.insert(static_cast<Fe>(c ^ u));
        CHECK(seen.size() == f.qq()); // q cosets of size q cover everything
        for (Fe s : f.subfield()) {
            Fe c = f.coset_rep_with_trace(s);
            CHECK(f.trace(c) == s);
        }
    }
}

TEST_CASE("subfield rank is a bijective GF(2)-coordinate system") {
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        std::set<unsigned> ranks;
        for (Fe s : f.subfield()) {
            unsigned r = f.subfield_rank(s);
            CHECK(r < f.q());
            CHECK(f.subfield_element(r) == s);
            ranks.insert(r);
        }
        CHECK(ranks.size() == f.q());
        // linear in the field encoding
        for (Fe x : f.subfield())
            for (Fe y : f.subfield())
                CHECK(f.subfield_rank(static_cast<Fe>(x ^ y)) ==
                      (f.subfield_rank(x) ^ f.subfield_rank(y)));
        bool threw = false;
        for (unsigned e = 0; e < f.qq(); ++e)
            if (!f.in_subfield(static_cast<Fe>(e))) {
                try {
                    f.subfield_rank(static_cast<Fe>(e));
                } catch (const std::invalid_argument&) {
                    threw = true;
                }
                break;
            }
        if (f.k() >= 1) CHECK(threw);
    }
}

TEST_CASE("multiplicative order and discrete log") {
    for (unsigned k = 1; k <= 3; ++k) {
        Field f(k);
        unsigned group = f.qq() - 1;
        for (unsigned a = 1; a < f.qq(); ++a) {
            Fe x = static_cast<Fe>(a);
            std::uint64_t ord = f.mult_order(x);
            CHECK(group % ord == 0);
            CHECK(f.pow(x, ord) == 1);
            if (ord > 1) CHECK(f.pow(x, ord / 2) != 1);
            CHECK(f.pow(f.omega(), f.dlog(x)) == x);
        }
        CHECK(f.mult_order(f.omega()) == group);
    }
    Field f(2);
    CHECK_THROWS_AS(f.mult_order(0), std::domain_error);
    CHECK_THROWS_AS(f.dlog(0), std::domain_error);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("constructor rejects out-of-range tower degrees") {
    CHECK_THROWS_AS(Field(0), std::invalid_argument);
    CHECK_THROWS_AS(Field(5), std::invalid_argument);
}

TEST_CASE("byte-map views agree with the scalar operations") {
    for (unsigned k : {1u, 2u, 4u}) {
        Field f(k);
        for (unsigned c = 0; c < f.qq(); ++c)
            for (unsigned x = 0; x < f.qq(); ++x)
                CHECK(f.mul_map(static_cast<Fe>(c))(static_cast<std::uint8_t>(x)) ==
                      f.mul(static_cast<Fe>(c), static_cast<Fe>(x)));
        for (unsigned x = 0; x < f.qq(); ++x) {
            CHECK(f.frob_map()(static_cast<std::uint8_t>(x)) == f.frob(static_cast<Fe>(x)));
            CHECK(f.trace_map()(static_cast<std::uint8_t>(x)) == f.trace(static_cast<Fe>(x)));
        }
        // rank_map extends subfield_rank linearly; on actual subfield values
        // they must agree exactly
        for (Fe s : f.subfield())
            CHECK(f.rank_map()(s) == f.subfield_rank(s));
        for (unsigned x = 0; x < 256; ++x)
            for (unsigned y = 0; y < 256; ++y)
                if (((x | y) & ~0xffu) == 0)
                    CHECK(f.rank_map()(static_cast<std::uint8_t>(x ^ y)) ==
                          (f.rank_map()(static_cast<std::uint8_t>(x)) ^
                           f.rank_map()(static_cast<std::uint8_t>(y))));
    }
}
