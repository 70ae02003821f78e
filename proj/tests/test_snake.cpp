#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qcl/scenario.hpp"

using namespace qcl;
using qcl::testing::edge_list;

namespace {

SnakeGraph orbifold_gamma() {
    Scenario s = disk_with_two_orbifold_points();
    return build_snake_graph(s.tri, s.arc("gamma"));
}

bool has_gluing_edge(const SnakeGraph& g, const PerfectMatching& p) {
    for (int e : p)
        if (g.edges[e].gluing) return true;
    return false;
}

}  // namespace

TEST_CASE("d = 0 snake graph is a single edge") {
    Scenario s = disk_with_two_orbifold_points();
    SnakeGraph g = build_snake_graph(s.tri, s.base_arc(2));
    CHECK(g.tile_count() == 0);
    CHECK(g.edges.size() == 1);
    CHECK(g.edges[0].arc == 2);
    CHECK(enumerate_matchings(g) == std::vector<PerfectMatching>{{0}});
    CHECK(minimal_matching(g) == PerfectMatching{0});
    CHECK(maximal_matching(g) == PerfectMatching{0});
}

TEST_CASE("single crossing of a pending arc") {
    Scenario s = disk_with_two_orbifold_points();
    CrossingSequence c;
    c.crossings = {0};
    SnakeGraph g = build_snake_graph(s.tri, c);
    CHECK(g.tile_count() == 1);
    CHECK(g.edges.size() == 4);
    CHECK(g.num_vertices == 4);
    CHECK(enumerate_matchings(g).size() == 2);
}

TEST_CASE("single ordinary crossing needs a start triangle") {
    auto f = testing::polygon_fixture(4, {{0, 2}});
    CrossingSequence c;
    c.crossings = {0};
    CHECK_THROWS_AS(build_snake_graph(f.tri, c), error);
    c.start_triangle = 0;
    SnakeGraph g = build_snake_graph(f.tri, c);
    CHECK(g.tile_count() == 1);
    CHECK(enumerate_matchings(g).size() == 2);
}

TEST_CASE("crossing sequence validation") {
    Scenario s = disk_with_two_orbifold_points();
    CrossingSequence c;
    c.crossings = {3};  // boundary arc
    CHECK_THROWS_AS(build_snake_graph(s.tri, c), error);
    c.crossings = {0, 2, 1};  // arcs 2 and 1 share no triangle after leaving triangle 0
    CHECK_THROWS_AS(build_snake_graph(s.tri, c), error);
    CrossingSequence empty;
    CHECK_THROWS_AS(build_snake_graph(s.tri, empty), error);  // no target arc
}

TEST_CASE("orbifold snake graph structure") {
    SnakeGraph g = orbifold_gamma();
    int d = 7;
    REQUIRE(g.tile_count() == d);
    std::vector<int> diag;
    for (const Tile& t : g.tiles) diag.push_back(t.diagonal);
    CHECK(diag == std::vector<int>{2, 0, 1, 0, 1, 0, 2});
    CHECK(static_cast<int>(g.edges.size()) == 3 * d + 1);
    CHECK(g.num_vertices == 2 * d + 2);
    CHECK(static_cast<int>(g.gluing_edges.size()) == d - 1);
    // gluing edges interleave private edges in position order
    for (int j = 0; j < d - 1; ++j) CHECK(g.edges[g.gluing_edges[j]].pos_key == 2 * (j + 1) + 1);
    auto ms = enumerate_matchings(g);
    CHECK(ms.size() == 25);
    for (const auto& p : ms) {
        CHECK(g.is_perfect_matching(p));
        CHECK(static_cast<int>(p.size()) == d + 1);
    }
}

TEST_CASE("tile enumeration agrees with the generic matcher") {
    std::vector<SnakeGraph> graphs;
    graphs.push_back(orbifold_gamma());
    for (int d = 1; d <= 12; ++d) {
        auto z = testing::zigzag_fixture(d);
        graphs.push_back(build_snake_graph(z.tri, z.seq));
    }
    {
        Scenario s = generate_polygon(8);
        for (const auto& a : s.named_arcs) graphs.push_back(build_snake_graph(s.tri, a.seq));
    }
    for (const SnakeGraph& g : graphs)
        CHECK(enumerate_matchings(g) == enumerate_matchings_generic(g.num_vertices, edge_list(g)));
}

TEST_CASE("zig-zag snake graphs have Fibonacci matching counts") {
    // F(1) = F(2) = 1; a zig-zag graph on d tiles has F(d+2) matchings
    std::vector<size_t> fib{1, 1};
    while (fib.size() < 11) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    for (int d = 1; d <= 8; ++d) {
        auto z = testing::zigzag_fixture(d);
        SnakeGraph g = build_snake_graph(z.tri, z.seq);
        REQUIRE(g.tile_count() == d);
        CHECK(enumerate_matchings(g).size() == fib[d + 1]);
    }
}

TEST_CASE("P_- and P_+ are the unique boundary-only matchings") {
    std::vector<SnakeGraph> graphs{orbifold_gamma()};
    for (int d : {2, 3, 5}) {
        auto z = testing::zigzag_fixture(d);
        graphs.push_back(build_snake_graph(z.tri, z.seq));
    }
    for (const SnakeGraph& g : graphs) {
        PerfectMatching pmin = minimal_matching(g), pmax = maximal_matching(g);
        CHECK(pmin != pmax);
        int boundary_only = 0;
        for (const auto& p : enumerate_matchings(g)) {
            if (has_gluing_edge(g, p)) continue;
            ++boundary_only;
            CHECK((p == pmin || p == pmax));
        }
        CHECK(boundary_only == 2);
    }
}

TEST_CASE("twists are involutive and distant twists commute") {
    SnakeGraph g = orbifold_gamma();
    auto ms = enumerate_matchings(g);
    for (const auto& p : ms) {
        for (int s = 0; s < g.tile_count(); ++s) {
            if (!can_twist(g, p, s)) continue;
            PerfectMatching q = twist(g, p, s);
            CHECK(q != p);
            CHECK(twist(g, q, s) == p);
            for (int t = s + 2; t < g.tile_count(); ++t) {
                if (!can_twist(g, p, t)) continue;
                if (!can_twist(g, q, t) || !can_twist(g, twist(g, p, t), s)) continue;
                CHECK(twist(g, q, t) == twist(g, twist(g, p, t), s));
            }
        }
    }
}

TEST_CASE("twist graph is connected") {
    std::vector<SnakeGraph> graphs{orbifold_gamma()};
    for (int d : {1, 4, 7}) {
        auto z = testing::zigzag_fixture(d);
        graphs.push_back(build_snake_graph(z.tri, z.seq));
    }
    for (const SnakeGraph& g : graphs) {
        TwistGraph t = twist_graph(g);
        CHECK(t.connected);
        CHECK(t.nodes.size() == enumerate_matchings(g).size());
    }
}

TEST_CASE("decompose/recombine is a bijection onto compatible tuples") {
    SnakeGraph g = orbifold_gamma();
    auto ms = enumerate_matchings(g);
    // single cuts and one double cut
    std::vector<std::vector<int>> cut_sets;
    for (int e : g.gluing_edges) cut_sets.push_back({e});
    cut_sets.push_back({g.gluing_edges[1], g.gluing_edges[4]});
    for (const auto& cuts : cut_sets) {
        std::set<std::vector<PerfectMatching>> images;
        for (const auto& p : ms) {
            auto pieces = decompose_matching(g, cuts, p);
            REQUIRE(pieces.size() == cuts.size() + 1);
            // each cut edge lands in at least one flanking piece
            for (size_t i = 0; i < cuts.size(); ++i) {
                bool left = std::binary_search(pieces[i].begin(), pieces[i].end(), cuts[i]);
                bool right = std::binary_search(pieces[i + 1].begin(), pieces[i + 1].end(), cuts[i]);
                CHECK((left || right));
            }
            CHECK(recombine_matching(g, cuts, pieces) == p);
            images.insert(pieces);
        }
        CHECK(images.size() == ms.size());  // injective
    }
    CHECK_THROWS_AS(decompose_matching(g, {0}, ms[0]), error);  // not a gluing edge
}

TEST_CASE("tau-equivalence classes partition the edges and bound nu") {
    SnakeGraph g = orbifold_gamma();
    auto ms = enumerate_matchings(g);
    for (int tau = 0; tau < 3; ++tau) {
        auto classes = tau_equivalence(g, tau);
        std::set<int> seen;
        int total = 0;
        for (const auto& cls : classes) {
            CHECK((cls.edges.size() == 1 || cls.edges.size() == 2));
            for (int e : cls.edges) {
                CHECK(g.edges[e].arc == tau);
                CHECK(seen.insert(e).second);
                ++total;
            }
            if (cls.edges.size() == 2)
                CHECK((cls.type == TauClassType::I || cls.type == TauClassType::II));
            else
                CHECK((cls.type == TauClassType::III || cls.type == TauClassType::IV));
        }
        int labeled = 0;
        for (const auto& e : g.edges)
            if (e.arc == tau) ++labeled;
        CHECK(total == labeled);
        // nu stays in range for every matching (nu_signature throws otherwise)
        for (const auto& p : ms) CHECK(nu_signature(g, tau, p).size() == classes.size());
    }
}

TEST_CASE("orbifold graph: expected class layout per diagonal arc") {
    SnakeGraph g = orbifold_gamma();
    auto types = [&](int tau) {
        std::vector<TauClassType> out;
        for (const auto& cls : tau_equivalence(g, tau)) out.push_back(cls.type);
        return out;
    };
    using T = TauClassType;
    CHECK(types(0) == std::vector<T>{T::II, T::I, T::II});
    CHECK(types(1) == std::vector<T>{T::IV, T::I, T::I, T::IV});
    CHECK(types(2) == std::vector<T>{T::III, T::IV, T::IV, T::IV, T::IV, T::III});
    // type IV classes carry no tile, the others point at a tau-diagonal tile
    for (int tau = 0; tau < 3; ++tau)
        for (const auto& cls : tau_equivalence(g, tau)) {
            if (cls.type == TauClassType::IV)
                CHECK(cls.tile == -1);
            else
                CHECK(g.tiles[cls.tile].diagonal == tau);
        }
}

TEST_CASE("nu = -1 classes sit at twistable tiles") {
    SnakeGraph g = orbifold_gamma();
    auto ms = enumerate_matchings(g);
    for (int tau = 0; tau < 3; ++tau) {
        auto classes = tau_equivalence(g, tau);
        for (const auto& p : ms) {
            auto nu = nu_signature(g, tau, p);
            for (size_t j = 0; j < classes.size(); ++j) {
                if (nu[j] != -1) continue;
                REQUIRE(classes[j].tile >= 0);
                CHECK(can_twist(g, p, classes[j].tile));
            }
        }
    }
}
