#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qcl/seed.hpp"

namespace qcl {

/// Ordered crossings of the curve zeta with the triangulation. For a pending
/// target arc the caller supplies the crossings of the loop l(gamma).
struct CrossingSequence {
    int arc = -1;                // target arc index when gamma is in T (d = 0) or known
    bool pending_loop = false;   // crossings are those of l(gamma)
    std::vector<int> crossings;  // arc indices p_1..p_d
    int start_triangle = -1;     // optional triangle id fixing Delta_0
};

/// Tile edge slots. Side 1 carries the labels of Delta_{j-1}, side 2 those of
/// Delta_j. The cw slot of a side holds the arc following the diagonal in the
/// clockwise order of that triangle; the ccw slot holds the remaining arc.
/// Around the tile the slots form the cycle
///   v0 -s1cw- v1 -s1ccw- v2 -s2cw- v3 -s2ccw- v0,
/// and the diagonal joins v0 and v2.
enum TileSlot { S1CW = 0, S1CCW = 1, S2CW = 2, S2CCW = 3 };

inline bool slot_is_ccw(int slot) { return slot == S1CCW || slot == S2CCW; }

struct Tile {
    int diagonal = -1;             // arc index of the diagonal
    int tri_before = -1;           // Delta_{j-1}
    int tri_after = -1;            // Delta_j
    bool parity_agrees = false;    // drawn orientation agrees with the surface iff j odd
    std::array<int, 4> vertex{};   // v0..v3
    std::array<int, 4> edge{};     // edge ids indexed by TileSlot
};

struct SnakeEdge {
    int arc = -1;  // arc label (may be a boundary arc)
    int v1 = -1, v2 = -1;
    std::vector<std::pair<int, int>> occurrences;  // (tile index 0-based, slot)
    bool gluing = false;
    // Position of the edge along the snake: 2j for a private edge of the
    // (1-based) tile j, 2j+1 for the gluing edge between tiles j and j+1.
    int pos_key = 0;
};

/// Sorted edge-id set; every vertex incident to exactly one edge.
using PerfectMatching = std::vector<int>;

struct SnakeGraph {
    int target_arc = -1;  // gamma when d = 0
    std::vector<int> crossings;
    std::vector<Tile> tiles;
    std::vector<SnakeEdge> edges;
    std::vector<int> gluing_edges;  // size d-1; edge between tiles j and j+1
    int num_vertices = 0;

    int tile_count() const { return static_cast<int>(tiles.size()); }

    bool contains(const PerfectMatching& p, int edge) const {
        return std::binary_search(p.begin(), p.end(), edge);
    }

    bool is_perfect_matching(const PerfectMatching& p) const {
        std::vector<int> deg(num_vertices, 0);
        for (int e : p) {
            if (e < 0 || e >= static_cast<int>(edges.size())) return false;
            ++deg[edges[e].v1];
            ++deg[edges[e].v2];
        }
        return std::all_of(deg.begin(), deg.end(), [](int v) { return v == 1; });
    }
};

namespace detail {

/// (clockwise, counterclockwise) arcs around `diag` in triangle t; diag must
/// occur exactly once among the sides.
inline std::pair<int, int> flanks(const Triangulation& tri, int t, int diag) {
    const auto& s = tri.triangles[t].sides;
    int pos = -1, count = 0;
    for (int i = 0; i < 3; ++i)
        if (s[i] == diag) {
            pos = i;
            ++count;
        }
    if (count != 1)
        throw error("snake graph: triangle " + std::to_string(t) + " must contain arc '" +
                    tri.arcs[diag].label + "' exactly once");
    return {s[(pos + 1) % 3], s[(pos + 2) % 3]};
}

}  // namespace detail

/// Builds G_{T,gamma} from a crossing sequence. The d = 0 case is the single
/// edge labeled gamma.
inline SnakeGraph build_snake_graph(const Triangulation& tri, const CrossingSequence& c) {
    tri.validate();
    SnakeGraph g;
    g.target_arc = c.arc;
    g.crossings = c.crossings;
    int d = static_cast<int>(c.crossings.size());

    if (d == 0) {
        if (c.arc < 0) throw error("snake graph: empty crossing sequence needs a target arc in T");
        g.edges.push_back(SnakeEdge{c.arc, 0, 1, {}, false, 0});
        g.num_vertices = 2;
        return g;
    }

    for (int a : c.crossings) {
        if (a < 0 || a >= tri.arc_count()) throw error("snake graph: crossing index out of range");
        if (tri.arcs[a].boundary)
            throw error("snake graph: crossed arc '" + tri.arcs[a].label + "' is a boundary arc");
    }

    // Resolve the triangle sequence Delta_0..Delta_d.
    std::vector<int> delta(d + 1, -1);
    int first = c.crossings[0];
    if (tri.arcs[first].pending) {
        delta[0] = tri.triangles_on(first)[0];
        if (c.start_triangle >= 0 && c.start_triangle != delta[0])
            throw error("snake graph: start triangle does not contain the pending first crossing");
    } else if (c.start_triangle >= 0) {
        if (c.start_triangle >= static_cast<int>(tri.triangles.size()) ||
            !tri.triangle_has_side(c.start_triangle, first))
            throw error("snake graph: start triangle is not on the first crossed arc");
        delta[0] = c.start_triangle;
    } else {
        auto cand = tri.triangles_on(first);  // exactly two for an ordinary arc
        if (d == 1) throw error("snake graph: a single ordinary crossing needs start_triangle");
        int second = c.crossings[1];
        bool in0 = tri.triangle_has_side(cand[0], second);
        bool in1 = tri.triangle_has_side(cand[1], second);
        if (in0 == in1)
            throw error("snake graph: Delta_0 is ambiguous at arc '" + tri.arcs[first].label +
                        "'; supply start_triangle");
        delta[0] = in0 ? cand[1] : cand[0];
    }
    for (int j = 1; j <= d; ++j) {
        int a = c.crossings[j - 1];
        if (!tri.triangle_has_side(delta[j - 1], a))
            throw error("snake graph: crossing " + std::to_string(j) + " (arc '" + tri.arcs[a].label +
                        "') is not a side of the current triangle");
        if (tri.arcs[a].pending) {
            delta[j] = delta[j - 1];
        } else {
            auto cand = tri.triangles_on(a);
            delta[j] = cand[0] == delta[j - 1] ? cand[1] : cand[0];
        }
        if (j < d && !tri.triangle_has_side(delta[j], c.crossings[j]))
            throw error("snake graph: crossings " + std::to_string(j) + " and " + std::to_string(j + 1) +
                        " do not share a triangle");
    }

    auto new_vertex = [&g]() { return g.num_vertices++; };
    auto new_edge = [&g](int arc, int v1, int v2, int tile, int slot, int pos_key) {
        int id = static_cast<int>(g.edges.size());
        g.edges.push_back(SnakeEdge{arc, v1, v2, {{tile, slot}}, false, pos_key});
        return id;
    };

    for (int j = 1; j <= d; ++j) {
        Tile tile;
        tile.diagonal = c.crossings[j - 1];
        tile.tri_before = delta[j - 1];
        tile.tri_after = delta[j];
        tile.parity_agrees = (j % 2 == 1);
        auto [s1cw, s1ccw] = detail::flanks(tri, tile.tri_before, tile.diagonal);
        auto [s2cw, s2ccw] = detail::flanks(tri, tile.tri_after, tile.diagonal);
        int ti = j - 1;

        if (j == 1) {
            for (int& v : tile.vertex) v = new_vertex();
            tile.edge[S1CW] = new_edge(s1cw, tile.vertex[0], tile.vertex[1], ti, S1CW, 2 * j);
            tile.edge[S1CCW] = new_edge(s1ccw, tile.vertex[1], tile.vertex[2], ti, S1CCW, 2 * j);
            tile.edge[S2CW] = new_edge(s2cw, tile.vertex[2], tile.vertex[3], ti, S2CW, 2 * j);
            tile.edge[S2CCW] = new_edge(s2ccw, tile.vertex[3], tile.vertex[0], ti, S2CCW, 2 * j);
        } else {
            Tile& prev = g.tiles.back();
            // The gluing edge is the side of Delta_{j-1} that is neither
            // diagonal; whether it sits clockwise or counterclockwise of the
            // previous diagonal decides how the new tile attaches, with the
            // two diagonals ending on opposite endpoints of the shared edge.
            auto [pcw, pccw] = detail::flanks(tri, delta[j - 1], c.crossings[j - 2]);
            bool next_is_cw_flank = (pcw == tile.diagonal);
            int glue;
            if (next_is_cw_flank) {
                // order (tau_{j-1}, tau_j, g): share s2ccw(prev) = s1cw(new)
                glue = prev.edge[S2CCW];
                tile.vertex[0] = prev.vertex[3];
                tile.vertex[1] = prev.vertex[0];
                tile.vertex[2] = new_vertex();
                tile.vertex[3] = new_vertex();
                tile.edge[S1CW] = glue;
                tile.edge[S1CCW] = new_edge(s1ccw, tile.vertex[1], tile.vertex[2], ti, S1CCW, 2 * j);
                tile.edge[S2CW] = new_edge(s2cw, tile.vertex[2], tile.vertex[3], ti, S2CW, 2 * j);
                tile.edge[S2CCW] = new_edge(s2ccw, tile.vertex[3], tile.vertex[0], ti, S2CCW, 2 * j);
                g.edges[glue].occurrences.emplace_back(ti, S1CW);
            } else {
                // order (tau_{j-1}, g, tau_j): share s2cw(prev) = s1ccw(new)
                glue = prev.edge[S2CW];
                tile.vertex[1] = prev.vertex[2];
                tile.vertex[2] = prev.vertex[3];
                tile.vertex[0] = new_vertex();
                tile.vertex[3] = new_vertex();
                tile.edge[S1CW] = new_edge(s1cw, tile.vertex[0], tile.vertex[1], ti, S1CW, 2 * j);
                tile.edge[S1CCW] = glue;
                tile.edge[S2CW] = new_edge(s2cw, tile.vertex[2], tile.vertex[3], ti, S2CW, 2 * j);
                tile.edge[S2CCW] = new_edge(s2ccw, tile.vertex[3], tile.vertex[0], ti, S2CCW, 2 * j);
                g.edges[glue].occurrences.emplace_back(ti, S1CCW);
            }
            g.edges[glue].gluing = true;
            g.edges[glue].pos_key = 2 * (j - 1) + 1;
            g.gluing_edges.push_back(glue);
            int expected = next_is_cw_flank ? pccw : pcw;
            if (g.edges[glue].arc != expected) throw error("snake graph: internal gluing label mismatch");
        }
        g.tiles.push_back(tile);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Perfect matchings.

/// Exact enumeration by dynamic programming along the tiles; the state is the
/// coverage of the two endpoints of the pending gluing edge.
inline std::vector<PerfectMatching> enumerate_matchings(const SnakeGraph& g) {
    if (g.tile_count() == 0) return {{0}};
    struct Partial {
        PerfectMatching edges;
        bool cov[2] = {false, false};  // coverage of the current gluing edge's (v1,v2)
    };
    std::vector<Partial> cur{Partial{}};
    int d = g.tile_count();
    for (int j = 0; j < d; ++j) {
        const Tile& tile = g.tiles[j];
        int prev_glue = j > 0 ? g.gluing_edges[j - 1] : -1;
        int next_glue = j + 1 < d ? g.gluing_edges[j] : -1;
        std::vector<int> cand;
        for (int s = 0; s < 4; ++s)
            if (tile.edge[s] != prev_glue) cand.push_back(tile.edge[s]);
        std::vector<Partial> next;
        for (const Partial& p : cur) {
            for (unsigned mask = 0; mask < (1u << cand.size()); ++mask) {
                int cov[4] = {0, 0, 0, 0};
                auto local = [&](int v) {
                    for (int i = 0; i < 4; ++i)
                        if (tile.vertex[i] == v) return i;
                    return -1;
                };
                if (prev_glue >= 0) {
                    const SnakeEdge& pe = g.edges[prev_glue];
                    if (p.cov[0]) ++cov[local(pe.v1)];
                    if (p.cov[1]) ++cov[local(pe.v2)];
                }
                bool ok = true;
                for (size_t i = 0; ok && i < cand.size(); ++i) {
                    if (!(mask & (1u << i))) continue;
                    const SnakeEdge& e = g.edges[cand[i]];
                    if (++cov[local(e.v1)] > 1 || ++cov[local(e.v2)] > 1) ok = false;
                }
                if (!ok) continue;
                Partial q;
                if (next_glue >= 0) {
                    const SnakeEdge& ne = g.edges[next_glue];
                    for (int i = 0; i < 4 && ok; ++i) {
                        int v = tile.vertex[i];
                        if (v == ne.v1)
                            q.cov[0] = cov[i] == 1;
                        else if (v == ne.v2)
                            q.cov[1] = cov[i] == 1;
                        else
                            ok = cov[i] == 1;
                    }
                } else {
                    for (int i = 0; i < 4 && ok; ++i) ok = cov[i] == 1;
                }
                if (!ok) continue;
                q.edges = p.edges;
                for (size_t i = 0; i < cand.size(); ++i)
                    if (mask & (1u << i)) q.edges.push_back(cand[i]);
                next.push_back(std::move(q));
            }
        }
        cur = std::move(next);
    }
    std::vector<PerfectMatching> out;
    out.reserve(cur.size());
    for (auto& p : cur) {
        std::sort(p.edges.begin(), p.edges.end());
        out.push_back(std::move(p.edges));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Independent matcher over an arbitrary edge list (oracle for the tile DP and
/// worker for sub-snake-graphs): picks the lowest uncovered vertex and
/// branches over its incident edges.
inline std::vector<std::vector<int>> enumerate_matchings_generic(int num_vertices,
                                                                 const std::vector<std::array<int, 3>>& edges) {
    // edges: (id, v1, v2); vertices not touched by any edge are ignored.
    std::vector<char> active(num_vertices, 0);
    std::vector<std::vector<int>> incident(num_vertices);
    for (size_t i = 0; i < edges.size(); ++i) {
        active[edges[i][1]] = active[edges[i][2]] = 1;
        incident[edges[i][1]].push_back(static_cast<int>(i));
        incident[edges[i][2]].push_back(static_cast<int>(i));
    }
    std::vector<std::vector<int>> out;
    std::vector<char> covered(num_vertices, 0);
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int v) -> void {
        while (v < num_vertices && (!active[v] || covered[v])) ++v;
        if (v == num_vertices) {
            std::vector<int> ids;
            for (int i : chosen) ids.push_back(edges[i][0]);
            std::sort(ids.begin(), ids.end());
            out.push_back(std::move(ids));
            return;
        }
        for (int i : incident[v]) {
            int u = edges[i][1] == v ? edges[i][2] : edges[i][1];
            if (covered[u]) continue;
            covered[v] = covered[u] = 1;
            chosen.push_back(i);
            self(self, v + 1);
            chosen.pop_back();
            covered[v] = covered[u] = 0;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// The two boundary-only matchings. P_- consists of the non-gluing edges in
/// clockwise slots (w.r.t. the surface orientation), P_+ of those in
/// counterclockwise slots; both are re-verified against the matching predicate.
inline PerfectMatching minimal_matching(const SnakeGraph& g) {
    if (g.tile_count() == 0) return {0};
    PerfectMatching p;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (!g.edges[e].gluing && !slot_is_ccw(g.edges[e].occurrences[0].second)) p.push_back(e);
    if (!g.is_perfect_matching(p) || static_cast<int>(p.size()) != g.tile_count() + 1)
        throw error("minimal matching construction failed the matching predicate");
    return p;
}

inline PerfectMatching maximal_matching(const SnakeGraph& g) {
    if (g.tile_count() == 0) return {0};
    PerfectMatching p;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (!g.edges[e].gluing && slot_is_ccw(g.edges[e].occurrences[0].second)) p.push_back(e);
    if (!g.is_perfect_matching(p) || static_cast<int>(p.size()) != g.tile_count() + 1)
        throw error("maximal matching construction failed the matching predicate");
    return p;
}

// ---------------------------------------------------------------------------
// Twists.

/// Edges of p on the given tile (by slot, so a gluing edge counts for both of
/// its tiles).
inline std::vector<int> matching_edges_on_tile(const SnakeGraph& g, const PerfectMatching& p, int tile) {
    std::vector<int> out;
    for (int s = 0; s < 4; ++s) {
        int e = g.tiles[tile].edge[s];
        if (g.contains(p, e) && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    return out;
}

inline bool can_twist(const SnakeGraph& g, const PerfectMatching& p, int tile) {
    if (tile < 0 || tile >= g.tile_count()) throw error("twist: tile index out of range");
    return matching_edges_on_tile(g, p, tile).size() == 2;
}

inline PerfectMatching twist(const SnakeGraph& g, const PerfectMatching& p, int tile) {
    if (!can_twist(g, p, tile)) throw error("twist: tile " + std::to_string(tile + 1) + " has no mutable pair");
    PerfectMatching out;
    std::set<int> tile_edges(g.tiles[tile].edge.begin(), g.tiles[tile].edge.end());
    for (int e : p)
        if (!tile_edges.count(e)) out.push_back(e);
    for (int e : tile_edges)
        if (!g.contains(p, e)) out.push_back(e);
    std::sort(out.begin(), out.end());
    if (!g.is_perfect_matching(out)) throw error("twist: result is not a perfect matching");
    return out;
}

/// Graph over all perfect matchings with single twists as edges.
struct TwistGraph {
    std::vector<PerfectMatching> nodes;
    std::map<PerfectMatching, int> index;
    std::vector<std::array<int, 3>> links;  // (node, node, tile), node < node
    bool connected = false;
};

inline TwistGraph twist_graph(const SnakeGraph& g) {
    TwistGraph t;
    t.nodes = enumerate_matchings(g);
    for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) t.index[t.nodes[i]] = i;
    for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
        for (int tile = 0; tile < g.tile_count(); ++tile)
            if (can_twist(g, t.nodes[i], tile)) {
                int j = t.index.at(twist(g, t.nodes[i], tile));
                if (i < j) t.links.push_back({i, j, tile});
            }
    // connectivity from node 0
    std::vector<char> seen(t.nodes.size(), 0);
    std::vector<int> stack;
    if (!t.nodes.empty()) {
        seen[0] = 1;
        stack.push_back(0);
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& l : t.links) {
            int w = l[0] == v ? l[1] : l[1] == v ? l[0] : -1;
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    t.connected = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    return t;
}

// ---------------------------------------------------------------------------
// Decomposition at gluing edges.

/// Splits p into one matching per subgraph obtained by cutting at the given
/// gluing edges; a cut edge lands in the piece whose side does not cover its
/// endpoints.
inline std::vector<PerfectMatching> decompose_matching(const SnakeGraph& g, const std::vector<int>& cut_edges,
                                                       const PerfectMatching& p) {
    for (int e : cut_edges)
        if (e < 0 || e >= static_cast<int>(g.edges.size()) || !g.edges[e].gluing)
            throw error("decompose: cut edge is not a gluing edge");
    std::vector<int> cuts = cut_edges;
    std::sort(cuts.begin(), cuts.end(), [&](int a, int b) { return g.edges[a].pos_key < g.edges[b].pos_key; });
    int k = static_cast<int>(cuts.size()) + 1;

    // tile range per piece
    std::vector<int> cut_tile;  // cut i sits after this tile index (0-based)
    for (int e : cuts) cut_tile.push_back((g.edges[e].pos_key - 3) / 2);
    auto piece_of_tile = [&](int tile) {
        int i = 0;
        while (i < static_cast<int>(cut_tile.size()) && tile > cut_tile[i]) ++i;
        return i;
    };
    auto piece_of_edge = [&](int e) {
        int t = g.edges[e].occurrences[0].first;
        // a cut edge belongs to both flanking pieces; handled separately
        return piece_of_tile(t);
    };
    // Which side covers each cut: -1 left, +1 right, 0 the cut edge itself.
    std::vector<int> side(cuts.size(), 0);
    for (size_t i = 0; i < cuts.size(); ++i) {
        const SnakeEdge& u = g.edges[cuts[i]];
        if (g.contains(p, cuts[i])) continue;
        int verdict = 0;
        for (int v : {u.v1, u.v2}) {
            for (int e : p) {
                if (g.edges[e].v1 != v && g.edges[e].v2 != v) continue;
                int s = g.edges[e].pos_key < u.pos_key ? -1 : 1;
                if (verdict == 0)
                    verdict = s;
                else if (verdict != s)
                    throw error("decompose: cut endpoints covered from opposite sides");
            }
        }
        if (verdict == 0) throw error("decompose: uncovered cut endpoint");
        side[i] = verdict;
    }
    std::vector<PerfectMatching> out(k);
    for (int e : p) {
        if (std::find(cuts.begin(), cuts.end(), e) != cuts.end()) {
            // u_i in P: it belongs to both flanking sub-matchings
            int i = static_cast<int>(std::find(cuts.begin(), cuts.end(), e) - cuts.begin());
            out[i].push_back(e);
            out[i + 1].push_back(e);
        } else {
            out[piece_of_edge(e)].push_back(e);
        }
    }
    for (size_t i = 0; i < cuts.size(); ++i) {
        if (side[i] == -1) out[i + 1].push_back(cuts[i]);  // left side covered: piece i+1 needs u_i
        if (side[i] == 1) out[i].push_back(cuts[i]);       // right side covered: piece i needs u_i
    }
    for (auto& q : out) std::sort(q.begin(), q.end());
    return out;
}

/// Inverse of decompose_matching; requires u_i in P_i or P_{i+1} for each cut.
inline PerfectMatching recombine_matching(const SnakeGraph& g, const std::vector<int>& cut_edges,
                                          const std::vector<PerfectMatching>& pieces) {
    std::vector<int> cuts = cut_edges;
    std::sort(cuts.begin(), cuts.end(), [&](int a, int b) { return g.edges[a].pos_key < g.edges[b].pos_key; });
    if (pieces.size() != cuts.size() + 1) throw error("recombine: piece count mismatch");
    auto has = [&](const PerfectMatching& q, int e) { return std::binary_search(q.begin(), q.end(), e); };
    for (size_t i = 0; i < cuts.size(); ++i)
        if (!has(pieces[i], cuts[i]) && !has(pieces[i + 1], cuts[i]))
            throw error("recombine: cut edge " + std::to_string(cuts[i]) + " missing from both sides");
    std::set<int> result;
    for (const auto& q : pieces)
        for (int e : q) result.insert(e);
    for (size_t i = 0; i < cuts.size(); ++i)
        if (!(has(pieces[i], cuts[i]) && has(pieces[i + 1], cuts[i]))) result.erase(cuts[i]);
    PerfectMatching p(result.begin(), result.end());
    if (!g.is_perfect_matching(p)) throw error("recombine: result is not a perfect matching");
    return p;
}

// ---------------------------------------------------------------------------
// tau-equivalence classes and nu-signatures.

enum class TauClassType { I, II, III, IV };

struct TauClass {
    std::vector<int> edges;  // 1 or 2 members
    TauClassType type{};
    int tile = -1;  // the tau-diagonal tile the class is incident to; -1 for type IV
};

/// Two tau-labeled edges are equivalent when both are incident to the same
/// tau-labeled diagonal (i.e. touch an endpoint of the diagonal of a tile
/// whose diagonal is itself labeled tau).
inline std::vector<TauClass> tau_equivalence(const SnakeGraph& g, int tau) {
    std::vector<int> members;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.edges[e].arc == tau) members.push_back(e);
    if (members.empty()) return {};

    auto incident = [&](int e, int v) { return g.edges[e].v1 == v || g.edges[e].v2 == v; };
    std::map<int, int> root;
    for (int e : members) root[e] = e;
    auto find = [&](int e) {
        while (root[e] != e) e = root[e];
        return e;
    };
    std::map<int, int> tile_of;  // member edge -> tau-diagonal tile it touches
    for (int t = 0; t < g.tile_count(); ++t) {
        const Tile& tile = g.tiles[t];
        if (tile.diagonal != tau) continue;
        std::vector<int> here;
        for (int e : members)
            if (incident(e, tile.vertex[0]) || incident(e, tile.vertex[2])) {
                here.push_back(e);
                tile_of[e] = t;
            }
        for (size_t i = 1; i < here.size(); ++i) root[find(here[i])] = find(here[0]);
    }
    std::map<int, TauClass> classes;
    for (int e : members) classes[find(e)].edges.push_back(e);
    std::vector<TauClass> out;
    for (auto& [r, cls] : classes) out.push_back(std::move(cls));
    std::sort(out.begin(), out.end(), [&](const TauClass& a, const TauClass& b) {
        return g.edges[a.edges[0]].pos_key < g.edges[b.edges[0]].pos_key;
    });
    for (TauClass& cls : out) {
        std::sort(cls.edges.begin(), cls.edges.end(),
                  [&](int a, int b) { return g.edges[a].pos_key < g.edges[b].pos_key; });
        auto it = tile_of.find(cls.edges[0]);
        if (it != tile_of.end()) cls.tile = it->second;
        if (cls.edges.size() == 2) {
            const SnakeEdge& a = g.edges[cls.edges[0]];
            const SnakeEdge& b = g.edges[cls.edges[1]];
            bool inc = a.v1 == b.v1 || a.v1 == b.v2 || a.v2 == b.v1 || a.v2 == b.v2;
            cls.type = inc ? TauClassType::II : TauClassType::I;
        } else if (cls.edges.size() == 1) {
            cls.type = cls.tile >= 0 ? TauClassType::III : TauClassType::IV;
        } else {
            throw error("tau-equivalence: class with more than two edges");
        }
    }
    return out;
}

/// nu_j of p: class occupancy shifted by -1 for types I/II/III.
inline std::vector<int> nu_signature(const SnakeGraph& g, int tau, const PerfectMatching& p) {
    auto classes = tau_equivalence(g, tau);
    std::vector<int> nu;
    for (const TauClass& cls : classes) {
        int count = 0;
        for (int e : cls.edges)
            if (g.contains(p, e)) ++count;
        int v = cls.type == TauClassType::IV ? count : count - 1;
        int lo = cls.type == TauClassType::IV ? 0 : -1;
        int hi = (cls.type == TauClassType::I || cls.type == TauClassType::IV) ? 1 : 0;
        if (v < lo || v > hi) throw error("nu-signature outside the admissible range");
        nu.push_back(v);
    }
    return nu;
}

}  // namespace qcl
