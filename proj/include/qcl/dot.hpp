#pragma once

#include <string>

#include "qcl/snake.hpp"

namespace qcl {

/// Graphviz rendering of a snake graph: one cluster per tile, the diagonal
/// dashed, matching edges (if given) bold. Deterministic output.
inline std::string to_dot(const SnakeGraph& g, const Triangulation& tri, const PerfectMatching* matching = nullptr) {
    std::string out = "graph snake {\n  node [shape=point];\n";
    auto vname = [](int v) { return "v" + std::to_string(v); };
    if (g.tile_count() == 0) {
        out += "  " + vname(0) + " -- " + vname(1) + " [label=\"" + tri.arcs[g.edges[0].arc].label +
               "\", id=\"e0\"";
        if (matching && g.contains(*matching, 0)) out += ", style=bold";
        out += "];\n}\n";
        return out;
    }
    for (int t = 0; t < g.tile_count(); ++t) {
        const Tile& tile = g.tiles[t];
        out += "  subgraph cluster_t" + std::to_string(t + 1) + " {\n";
        out += "    label=\"G(p" + std::to_string(t + 1) + ")\";\n";
        for (int v : tile.vertex) out += "    " + vname(v) + ";\n";
        out += "    " + vname(tile.vertex[0]) + " -- " + vname(tile.vertex[2]) + " [label=\"" +
               tri.arcs[tile.diagonal].label + "\", style=dashed];\n";
        out += "  }\n";
    }
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const SnakeEdge& edge = g.edges[e];
        out += "  " + vname(edge.v1) + " -- " + vname(edge.v2) + " [label=\"" + tri.arcs[edge.arc].label +
               "\", id=\"e" + std::to_string(e) + "\"";
        if (matching && g.contains(*matching, e)) out += ", style=bold";
        out += "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace qcl
