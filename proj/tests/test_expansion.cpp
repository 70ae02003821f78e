#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "qcl/verify.hpp"

using namespace qcl;

namespace {

struct Case {
    Triangulation tri;
    CrossingSequence seq;
    QuantumSeed seed;
};

std::vector<Case> test_cases() {
    std::vector<Case> out;
    Scenario o = disk_with_two_orbifold_points();
    out.push_back({o.tri, o.arc("gamma"), o.seed});
    for (int d : {2, 4, 6}) {
        auto z = testing::zigzag_fixture(d);
        out.push_back({z.tri, z.seq, z.seed});
    }
    Scenario h = generate_polygon(6);
    out.push_back({h.tri, h.arc("c1_5"), h.seed});
    return out;
}

}  // namespace

TEST_CASE("heights: minimal matching sits at zero, one twist raises one tile") {
    for (const Case& c : test_cases()) {
        SnakeGraph g = build_snake_graph(c.tri, c.seq);
        int n = c.tri.mutable_count();
        PerfectMatching pmin = minimal_matching(g);
        CHECK(height_vector(g, n, pmin) == std::vector<Int>(n, 0));
        for (int s = 0; s < g.tile_count(); ++s) {
            if (!can_twist(g, pmin, s)) continue;
            std::vector<Int> h = height_vector(g, n, twist(g, pmin, s));
            std::vector<Int> unit(n, 0);
            unit[g.tiles[s].diagonal] = 1;
            CHECK(h == unit);
        }
    }
}

TEST_CASE("heights: enclosure parity agrees with twist-path integration") {
    for (const Case& c : test_cases()) {
        SnakeGraph g = build_snake_graph(c.tri, c.seq);
        int n = c.tri.mutable_count();
        auto table = height_table_by_twists(g, n);
        for (const auto& p : enumerate_matchings(g)) CHECK(height_vector(g, n, p) == table.at(p));
    }
}

TEST_CASE("omega flips sign under the twist it measures") {
    for (const Case& c : test_cases()) {
        SnakeGraph g = build_snake_graph(c.tri, c.seq);
        auto arc_d = arc_symmetrizer(c.tri);
        for (const auto& p : enumerate_matchings(g))
            for (int s = 0; s < g.tile_count(); ++s) {
                if (!can_twist(g, p, s)) continue;
                CHECK(omega(g, arc_d, twist(g, p, s), s) == -omega(g, arc_d, p, s));
            }
    }
}

TEST_CASE("valuation: boundary matchings at zero, table complete") {
    for (const Case& c : test_cases()) {
        SnakeGraph g = build_snake_graph(c.tri, c.seq);
        // valuation() itself re-checks cycle consistency and v(P_+) = 0
        ValuationTable t = valuation(g, arc_symmetrizer(c.tri));
        CHECK(t.v.at(minimal_matching(g)) == 0);
        CHECK(t.v.at(maximal_matching(g)) == 0);
        CHECK(t.matchings.size() == enumerate_matchings(g).size());
    }
}

TEST_CASE("exponent vectors: crossed-arc coordinates never exceed the edge count") {
    Scenario s = disk_with_two_orbifold_points();
    SnakeGraph g = build_snake_graph(s.tri, s.arc("gamma"));
    auto ms = enumerate_matchings(g);
    auto shift = tropical_shift(g, 3, s.seed.btilde, ms);
    for (const auto& p : ms) {
        ExponentVector a = exponent_vector(g, 3, p, s.seed.btilde, shift);
        REQUIRE(a.size() == 6);
        // frozen part is nonnegative by the tropical normalization
        for (int i = 3; i < 6; ++i) CHECK(a[i] >= 0);
    }
    // the shift is attained: some matching has a zero in each frozen slot
    for (int i = 3; i < 6; ++i) {
        bool attained = false;
        for (const auto& p : ms) attained |= exponent_vector(g, 3, p, s.seed.btilde, shift)[i] == 0;
        CHECK(attained);
    }
}

TEST_CASE("frozen exponents transport the height vector") {
    Scenario s = disk_with_two_orbifold_points();
    SnakeGraph g = build_snake_graph(s.tri, s.arc("gamma"));
    auto ms = enumerate_matchings(g);
    auto shift = tropical_shift(g, 3, s.seed.btilde, ms);
    for (const auto& p : ms) {
        ExponentVector a = exponent_vector(g, 3, p, s.seed.btilde, shift);
        auto img = frozen_image(s.seed.btilde, height_vector(g, 3, p));
        for (int i = 0; i < 3; ++i) CHECK(a[3 + i] == img[i] - shift[i]);
    }
}

TEST_CASE("d = 0 expansion is the plain variable") {
    Scenario s = disk_with_two_orbifold_points();
    for (int k = 0; k < 3; ++k) {
        ExponentVector e(6, 0);
        e[k] = 1;
        CHECK(quantum_expansion(s.tri, s.base_arc(k), s.seed) == monomial(e));
        CHECK(commutative_expansion(s.tri, s.base_arc(k), s.seed) == std::map<ExponentVector, Int>{{e, 1}});
    }
}

TEST_CASE("q = 1 specialization equals the commutative expansion") {
    for (const Case& c : test_cases()) {
        TorusElement x = quantum_expansion(c.tri, c.seq, c.seed);
        CHECK(specialize_q1(x) == commutative_expansion(c.tri, c.seq, c.seed));
    }
}

TEST_CASE("commutative polynomial arithmetic and exact division") {
    ExponentVector x = {1, 0}, y = {0, 1}, zero = {0, 0};
    CommPoly a = comm_add(comm_monomial(x), comm_monomial(y));   // x + y
    CommPoly b = comm_add(comm_monomial(x), comm_monomial(y, -1));  // x - y
    CommPoly prod = comm_mul(a, b);
    CHECK(prod == comm_add(comm_monomial({2, 0}), comm_monomial({0, 2}, -1)));
    CHECK(comm_divide_exact(prod, a) == b);
    CHECK(comm_divide_exact(prod, b) == a);
    CHECK(comm_pow(a, 2) == comm_mul(a, a));
    CHECK_THROWS_AS(comm_divide_exact(comm_monomial(zero, 2), comm_monomial(zero, 3)), error);
    CHECK_THROWS_AS(comm_divide_exact(prod, CommPoly{}), error);
}

TEST_CASE("commutative mutation is an involution on the variables") {
    Scenario s = disk_with_two_orbifold_points();
    auto st = CommutativeSeedState::initial(s.seed.btilde);
    for (int k = 0; k < 3; ++k) {
        auto twice = commutative_mutate(commutative_mutate(st, k), k);
        CHECK(twice.vars == st.vars);
        CHECK(twice.btilde.entries == st.btilde.entries);
    }
}

TEST_CASE("verification checks report failures on corrupted data") {
    Scenario s = generate_polygon(5);
    // swap the two arcs of a depth-1 annotation: the exchange check must fail
    Scenario bad = s;
    std::swap(bad.flips[0].arcs[0], bad.flips[0].arcs[1]);
    bool failed = false;
    try {
        CheckResult r = check_exchange_relation(bad, bad.flips[0].path);
        failed = !r.pass;
    } catch (const error&) {
        failed = true;
    }
    CHECK(failed);
    CHECK(check_exchange_relation(s, s.flips[0].path).pass);
}
