#pragma once

#include <utility>
#include <vector>

#include "qcl/scenario.hpp"

namespace qcl::testing {

/// Triangulated polygon from an explicit chord set; chords become the mutable
/// arcs in the given order, boundary sides follow.
struct PolygonFixture {
    Triangulation tri;
    std::map<std::pair<int, int>, int> arc_of;

    int side(int u, int w) const {
        if (u > w) std::swap(u, w);
        return arc_of.at({u, w});
    }
};

inline PolygonFixture polygon_fixture(int n, const std::vector<std::pair<int, int>>& chords) {
    PolygonFixture f;
    for (auto [a, b] : chords) {
        if (a > b) std::swap(a, b);
        f.arc_of[{a, b}] = static_cast<int>(f.tri.arcs.size());
        f.tri.arcs.push_back(Arc{"c" + std::to_string(a) + "_" + std::to_string(b), 1, false, false});
    }
    for (int v = 0; v < n; ++v) {
        int u = v, w = (v + 1) % n;
        if (u > w) std::swap(u, w);
        f.arc_of[{u, w}] = static_cast<int>(f.tri.arcs.size());
        f.tri.arcs.push_back(Arc{"s" + std::to_string(u) + "_" + std::to_string(w), 1, true, false});
    }
    auto has_edge = [&](int u, int w) {
        if (u > w) std::swap(u, w);
        return f.arc_of.count({u, w}) != 0;
    };
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                if (has_edge(u, v) && has_edge(u, w) && has_edge(v, w))
                    // clockwise side order for u < v < w on a ccw polygon
                    f.tri.triangles.push_back(Triangle{{f.side(u, w), f.side(w, v), f.side(v, u)}});
    f.tri.validate();
    return f;
}

/// Zig-zag triangulated (d+3)-gon plus the arc crossing all d chords.
struct ZigZagFixture {
    Triangulation tri;
    CrossingSequence seq;
    QuantumSeed seed;
};

inline ZigZagFixture zigzag_fixture(int d) {
    int n = d + 3;
    std::vector<std::pair<int, int>> chords;
    int lo = 1, hi = n - 1;
    for (int i = 0; i < d; ++i) {
        chords.push_back({lo, hi});
        if (i % 2 == 0)
            --hi;
        else
            ++lo;
    }
    PolygonFixture f = polygon_fixture(n, chords);
    ZigZagFixture z;
    z.tri = f.tri;
    for (int i = 0; i < d; ++i) z.seq.crossings.push_back(i);
    // Delta_0 is the triangle at vertex 0
    for (int t = 0; t < static_cast<int>(z.tri.triangles.size()); ++t)
        if (z.tri.triangle_has_side(t, f.side(0, 1)) && z.tri.triangle_has_side(t, f.side(0, n - 1)))
            z.seq.start_triangle = t;
    z.seed = build_principal_quantization(signed_adjacency(z.tri), weight_symmetrizer(z.tri));
    return z;
}

/// Edge list (id, v1, v2) of a snake graph, for the generic matcher.
inline std::vector<std::array<int, 3>> edge_list(const SnakeGraph& g) {
    std::vector<std::array<int, 3>> out;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) out.push_back({e, g.edges[e].v1, g.edges[e].v2});
    return out;
}

}  // namespace qcl::testing
