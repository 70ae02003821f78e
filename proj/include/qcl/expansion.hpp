#pragma once

#include <map>
#include <vector>

#include "qcl/snake.hpp"
#include "qcl/torus.hpp"

namespace qcl {

/// Per-arc d-values, indexed like Triangulation::arcs (boundary arcs unused).
inline std::vector<Int> arc_symmetrizer(const Triangulation& t) {
    std::vector<Int> d(t.arc_count(), 1);
    for (int i = 0; i < t.arc_count(); ++i) d[i] = t.arcs[i].weight;
    return d;
}

namespace detail {

inline int slot_in_tile(const SnakeGraph& g, int edge, int tile) {
    for (const auto& [t, s] : g.edges[edge].occurrences)
        if (t == tile) return s;
    throw error("edge is not on the given tile");
}

/// True if the two matching edges on the tile sit in the counterclockwise
/// slots (they are always both cw or both ccw).
inline bool pair_is_ccw(const SnakeGraph& g, const PerfectMatching& p, int tile) {
    auto pair = matching_edges_on_tile(g, p, tile);
    if (pair.size() != 2) throw error("tile has no mutable pair");
    bool c0 = slot_is_ccw(slot_in_tile(g, pair[0], tile));
    bool c1 = slot_is_ccw(slot_in_tile(g, pair[1], tile));
    if (c0 != c1) throw error("mutable pair mixes cw and ccw slots");
    return c0;
}

}  // namespace detail

/// Which tiles lie inside the cycles of P symdiff P_-. Each tile's private
/// edges must agree on symdiff membership (point-in-region parity); a
/// disagreement is an integrity error.
inline std::vector<char> enclosed_tiles(const SnakeGraph& g, const PerfectMatching& p) {
    PerfectMatching pmin = minimal_matching(g);
    std::vector<char> in_sym(g.edges.size(), 0);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        in_sym[e] = g.contains(p, e) != g.contains(pmin, e);
    std::vector<char> enclosed(g.tile_count(), 0);
    for (int t = 0; t < g.tile_count(); ++t) {
        int verdict = -1;
        for (int s = 0; s < 4; ++s) {
            int e = g.tiles[t].edge[s];
            if (g.edges[e].gluing) continue;
            if (verdict == -1)
                verdict = in_sym[e];
            else if (verdict != in_sym[e])
                throw error("height: tile boundary edges disagree on enclosure");
        }
        enclosed[t] = static_cast<char>(verdict == 1);
    }
    return enclosed;
}

/// Height vector: entry k counts enclosed tiles whose diagonal is arc k
/// (length = number of mutable arcs).
inline std::vector<Int> height_vector(const SnakeGraph& g, int n_mutable, const PerfectMatching& p) {
    if (!g.is_perfect_matching(p)) throw error("height: not a perfect matching");
    std::vector<Int> h(n_mutable, 0);
    if (g.tile_count() == 0) return h;
    auto enclosed = enclosed_tiles(g, p);
    for (int t = 0; t < g.tile_count(); ++t)
        if (enclosed[t]) ++h[g.tiles[t].diagonal];
    return h;
}

/// Heights of every matching by integrating +-1 per-tile increments along
/// twist paths from P_-; path-independence is checked on every non-tree edge.
inline std::map<PerfectMatching, std::vector<Int>> height_table_by_twists(const SnakeGraph& g, int n_mutable) {
    std::map<PerfectMatching, std::vector<Int>> table;
    if (g.tile_count() == 0) {
        table[{0}] = std::vector<Int>(n_mutable, 0);
        return table;
    }
    TwistGraph tg = twist_graph(g);
    std::vector<std::vector<Int>> per_tile(tg.nodes.size());
    std::vector<char> seen(tg.nodes.size(), 0);
    int start = tg.index.at(minimal_matching(g));
    per_tile[start] = std::vector<Int>(g.tile_count(), 0);
    seen[start] = 1;
    std::vector<int> queue{start};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int i = queue[qi];
        for (const auto& l : tg.links) {
            int j = l[0] == i ? l[1] : l[1] == i ? l[0] : -1;
            if (j < 0) continue;
            // twisting a cw pair raises the tile, a ccw pair lowers it
            std::vector<Int> h = per_tile[i];
            h[l[2]] += detail::pair_is_ccw(g, tg.nodes[i], l[2]) ? -1 : 1;
            if (!seen[j]) {
                seen[j] = 1;
                per_tile[j] = std::move(h);
                queue.push_back(j);
            } else if (per_tile[j] != h) {
                throw error("height by twists: path-dependent result");
            }
        }
    }
    for (size_t i = 0; i < tg.nodes.size(); ++i) {
        if (!seen[i]) throw error("height by twists: twist graph is disconnected");
        std::vector<Int> h(n_mutable, 0);
        for (int t = 0; t < g.tile_count(); ++t) h[g.tiles[t].diagonal] += per_tile[i][t];
        table[tg.nodes[i]] = std::move(h);
    }
    return table;
}

inline std::vector<Int> height_vector_by_twists(const SnakeGraph& g, int n_mutable, const PerfectMatching& p) {
    return height_table_by_twists(g, n_mutable).at(p);
}

/// Per-mutable-arc matching statistics.
struct MatchingStatistics {
    std::vector<Int> weight;    // # P-edges labeled tau_i
    std::vector<Int> crossing;  // # crossings of gamma with tau_i
    std::vector<Int> height;
};

inline MatchingStatistics matching_statistics(const SnakeGraph& g, int n_mutable, const PerfectMatching& p) {
    MatchingStatistics st;
    st.weight.assign(n_mutable, 0);
    st.crossing.assign(n_mutable, 0);
    for (int e : p) {
        int a = g.edges[e].arc;
        if (a < n_mutable) ++st.weight[a];
    }
    for (int a : g.crossings) ++st.crossing[a];
    st.height = height_vector(g, n_mutable, p);
    return st;
}

/// Omega(p_s, P) for the (0-based) tile s: the signed, d-scaled difference of
/// same-label counts after/before the tile, positive when the matching holds
/// the counterclockwise pair.
inline Int omega(const SnakeGraph& g, const std::vector<Int>& arc_d, const PerfectMatching& p, int s) {
    if (!can_twist(g, p, s)) throw error("omega: tile is not twistable");
    int tau = g.tiles[s].diagonal;
    Int sign = detail::pair_is_ccw(g, p, s) ? 1 : -1;
    Int m_plus = 0, m_minus = 0;
    for (int t = 0; t < static_cast<int>(g.crossings.size()); ++t) {
        if (g.crossings[t] != tau) continue;
        if (t > s) ++m_plus;
        if (t < s) ++m_minus;
    }
    auto pair = matching_edges_on_tile(g, p, s);
    int lo = std::min(g.edges[pair[0]].pos_key, g.edges[pair[1]].pos_key);
    int hi = std::max(g.edges[pair[0]].pos_key, g.edges[pair[1]].pos_key);
    Int n_plus = 0, n_minus = 0;
    for (int e : p) {
        if (e == pair[0] || e == pair[1] || g.edges[e].arc != tau) continue;
        if (g.edges[e].pos_key > hi) ++n_plus;
        if (g.edges[e].pos_key < lo) ++n_minus;
    }
    return sign * (n_plus - m_plus - n_minus + m_minus) * arc_d[tau];
}

/// v over all matchings: v(P_-) = 0, v(P) - v(mu_p P) = Omega(p, P); every
/// closed cycle in the twist graph and v(P_+) = 0 are re-verified.
struct ValuationTable {
    std::vector<PerfectMatching> matchings;
    std::map<PerfectMatching, Int> v;
};

inline ValuationTable valuation(const SnakeGraph& g, const std::vector<Int>& arc_d) {
    ValuationTable out;
    if (g.tile_count() == 0) {
        out.matchings = {{0}};
        out.v[{0}] = 0;
        return out;
    }
    TwistGraph tg = twist_graph(g);
    out.matchings = tg.nodes;
    std::vector<Int> val(tg.nodes.size(), 0);
    std::vector<char> seen(tg.nodes.size(), 0);
    int start = tg.index.at(minimal_matching(g));
    seen[start] = 1;
    std::vector<int> queue{start};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int i = queue[qi];
        for (const auto& l : tg.links) {
            int j = l[0] == i ? l[1] : l[1] == i ? l[0] : -1;
            if (j < 0) continue;
            Int vj = val[i] - omega(g, arc_d, tg.nodes[i], l[2]);
            if (!seen[j]) {
                seen[j] = 1;
                val[j] = vj;
                queue.push_back(j);
            } else if (val[j] != vj) {
                throw error("valuation: inconsistent cycle through tile " + std::to_string(l[2] + 1));
            }
        }
    }
    for (char s : seen)
        if (!s) throw error("valuation: twist graph is disconnected");
    if (val[tg.index.at(maximal_matching(g))] != 0) throw error("valuation: v(P_+) != 0");
    for (size_t i = 0; i < tg.nodes.size(); ++i) out.v[tg.nodes[i]] = val[i];
    return out;
}

/// Frozen-row image of a height vector: sum_k m_k btilde_{.k}.
inline std::vector<Int> frozen_image(const ExtendedExchangeMatrix& btilde, const std::vector<Int>& height) {
    std::vector<Int> img(btilde.m() - btilde.n, 0);
    for (size_t i = 0; i < img.size(); ++i)
        for (int k = 0; k < btilde.n; ++k) img[i] += height[k] * btilde.entries(btilde.n + static_cast<int>(i), k);
    return img;
}

/// Componentwise minimum over all matchings of the frozen-row image of the
/// height vector (the tropical denominator).
inline std::vector<Int> tropical_shift(const SnakeGraph& g, int n_mutable, const ExtendedExchangeMatrix& btilde,
                                       const std::vector<PerfectMatching>& matchings) {
    std::vector<Int> shift;
    for (const PerfectMatching& q : matchings) {
        auto img = frozen_image(btilde, height_vector(g, n_mutable, q));
        if (shift.empty())
            shift = img;
        else
            for (size_t i = 0; i < shift.size(); ++i) shift[i] = std::min(shift[i], img[i]);
    }
    return shift;
}

/// a(P): mutable coordinates from edge counts minus crossing counts, frozen
/// coordinates from the btilde-transported height vector minus the shift.
/// Boundary-arc labels contribute nothing.
inline ExponentVector exponent_vector(const SnakeGraph& g, int n_mutable, const PerfectMatching& p,
                                      const ExtendedExchangeMatrix& btilde, const std::vector<Int>& shift) {
    if (btilde.n != n_mutable) throw error("exponent_vector: seed/triangulation rank mismatch");
    ExponentVector a(btilde.m(), 0);
    for (int e : p) {
        int arc = g.edges[e].arc;
        if (arc < n_mutable) ++a[arc];
    }
    for (int c : g.crossings) --a[c];
    auto img = frozen_image(btilde, height_vector(g, n_mutable, p));
    for (int i = btilde.n; i < btilde.m(); ++i) a[i] = img[i - btilde.n] - shift[i - btilde.n];
    return a;
}

/// x_gamma = sum_P x^{a(P)} with positive integer coefficients.
inline std::map<ExponentVector, Int> commutative_expansion(const Triangulation& t, const CrossingSequence& c,
                                                           const QuantumSeed& seed) {
    SnakeGraph g = build_snake_graph(t, c);
    auto matchings = enumerate_matchings(g);
    auto shift = tropical_shift(g, t.mutable_count(), seed.btilde, matchings);
    std::map<ExponentVector, Int> out;
    for (const auto& p : matchings) ++out[exponent_vector(g, t.mutable_count(), p, seed.btilde, shift)];
    return out;
}

/// X_gamma = sum_P q^{v(P)/2} X^{a(P)}.
inline TorusElement quantum_expansion(const Triangulation& t, const CrossingSequence& c, const QuantumSeed& seed) {
    SnakeGraph g = build_snake_graph(t, c);
    auto matchings = enumerate_matchings(g);
    auto shift = tropical_shift(g, t.mutable_count(), seed.btilde, matchings);
    ValuationTable val = valuation(g, arc_symmetrizer(t));
    TorusElement out;
    for (const auto& p : matchings)
        out.add_term(exponent_vector(g, t.mutable_count(), p, seed.btilde, shift), val.v.at(p), 1);
    return out;
}

}  // namespace qcl
