#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qcl/expansion.hpp"
#include "qcl/snake.hpp"

namespace qcl {

/// Crossing sequences of a full cluster reached from the base seed by the
/// mutations in `path`; arcs[k] is the arc occupying direction k, expressed
/// against the base triangulation.
struct FlipAnnotation {
    std::vector<int> path;
    std::vector<CrossingSequence> arcs;
};

struct NamedArc {
    std::string name;
    CrossingSequence seq;
};

struct Scenario {
    std::string name;
    Triangulation tri;
    QuantumSeed seed;
    std::vector<NamedArc> named_arcs;
    std::vector<FlipAnnotation> flips;

    const CrossingSequence& arc(const std::string& name) const {
        for (const auto& a : named_arcs)
            if (a.name == name) return a.seq;
        throw error("scenario '" + this->name + "': unknown named arc '" + name + "'");
    }

    /// Crossing sequence of a base arc (d = 0).
    CrossingSequence base_arc(int direction) const {
        CrossingSequence c;
        c.arc = direction;
        return c;
    }

    /// The annotation whose path is `path`, or null.
    const FlipAnnotation* find_flip(const std::vector<int>& path) const {
        for (const auto& f : flips)
            if (f.path == path) return &f;
        return nullptr;
    }

    void validate() const {
        tri.validate();
        seed.validate();
        if (seed.n() != tri.mutable_count()) throw error("scenario '" + name + "': seed rank != mutable arc count");
        for (const auto& a : named_arcs) build_snake_graph(tri, a.seq);
        for (const auto& f : flips) {
            if (static_cast<int>(f.arcs.size()) != seed.n())
                throw error("scenario '" + name + "': flip annotation must list all mutable arcs");
            for (int k : f.path)
                if (k < 0 || k >= seed.n()) throw error("scenario '" + name + "': flip direction out of range");
            for (const auto& c : f.arcs) build_snake_graph(tri, c);
        }
    }
};

// ---------------------------------------------------------------------------
// JSON serialization. Files written by serialize_scenario re-parse to the
// same value and re-serialize byte-identically.

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson crossing_to_json(const CrossingSequence& c) {
    ojson j;
    j["crossings"] = c.crossings;
    if (c.arc >= 0) j["arc"] = c.arc;
    if (c.pending_loop) j["pending_loop"] = true;
    if (c.start_triangle >= 0) j["start_triangle"] = c.start_triangle;
    return j;
}

inline CrossingSequence crossing_from_json(const ojson& j) {
    CrossingSequence c;
    c.crossings = j.at("crossings").get<std::vector<int>>();
    if (j.contains("arc")) c.arc = j.at("arc").get<int>();
    if (j.contains("pending_loop")) c.pending_loop = j.at("pending_loop").get<bool>();
    if (j.contains("start_triangle")) c.start_triangle = j.at("start_triangle").get<int>();
    return c;
}

inline ojson matrix_to_json(const IntMatrix& m) {
    ojson rows = ojson::array();
    for (int r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix matrix_from_json(const ojson& j) {
    int rows = static_cast<int>(j.size());
    int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
    IntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j.at(r).size()) != cols) throw error("scenario: ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<Int>();
    }
    return m;
}

}  // namespace detail

inline std::string serialize_scenario(const Scenario& s) {
    using detail::ojson;
    ojson j;
    j["version"] = 1;
    j["name"] = s.name;
    ojson arcs = ojson::array();
    for (const auto& a : s.tri.arcs) {
        ojson ja;
        ja["label"] = a.label;
        ja["weight"] = a.weight;
        if (a.boundary) ja["boundary"] = true;
        if (a.pending) ja["pending"] = true;
        arcs.push_back(std::move(ja));
    }
    j["arcs"] = std::move(arcs);
    ojson tris = ojson::array();
    for (const auto& t : s.tri.triangles) tris.push_back(std::vector<int>(t.sides.begin(), t.sides.end()));
    j["triangles"] = std::move(tris);
    ojson seed;
    seed["n"] = s.seed.n();
    seed["btilde"] = detail::matrix_to_json(s.seed.btilde.entries);
    seed["lambda"] = detail::matrix_to_json(s.seed.lambda.entries);
    j["seed"] = std::move(seed);
    ojson named = ojson::array();
    for (const auto& a : s.named_arcs) {
        ojson ja = detail::crossing_to_json(a.seq);
        ja["name"] = a.name;
        named.push_back(std::move(ja));
    }
    j["named_arcs"] = std::move(named);
    ojson flips = ojson::array();
    for (const auto& f : s.flips) {
        ojson jf;
        jf["path"] = f.path;
        ojson fa = ojson::array();
        for (const auto& c : f.arcs) fa.push_back(detail::crossing_to_json(c));
        jf["arcs"] = std::move(fa);
        flips.push_back(std::move(jf));
    }
    j["flips"] = std::move(flips);
    return j.dump(2) + "\n";
}

inline Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<string>",
                                    bool strict_seed_checks = true) {
    using detail::ojson;
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // report the line of the failure for hand-edited files
        size_t line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw error(origin + ":" + std::to_string(line) + ": " + e.what());
    }
    try {
        if (j.at("version").get<int>() != 1) throw error("unsupported scenario version");
        Scenario s;
        s.name = j.at("name").get<std::string>();
        for (const auto& ja : j.at("arcs")) {
            Arc a;
            a.label = ja.at("label").get<std::string>();
            a.weight = ja.at("weight").get<int>();
            a.boundary = ja.value("boundary", false);
            a.pending = ja.value("pending", false);
            s.tri.arcs.push_back(std::move(a));
        }
        for (const auto& jt : j.at("triangles")) {
            Triangle t;
            auto v = jt.get<std::vector<int>>();
            if (v.size() != 3) throw error("triangle needs exactly 3 sides");
            std::copy(v.begin(), v.end(), t.sides.begin());
            s.tri.triangles.push_back(t);
        }
        const auto& js = j.at("seed");
        s.seed.btilde.n = js.at("n").get<int>();
        s.seed.btilde.entries = detail::matrix_from_json(js.at("btilde"));
        s.seed.lambda.entries = detail::matrix_from_json(js.at("lambda"));
        auto comp = check_compatibility(s.seed.btilde, s.seed.lambda);
        if (!comp.ok) {
            if (strict_seed_checks) throw error("incompatible (btilde, lambda): " + comp.message);
            std::fprintf(stderr, "warning: incompatible (btilde, lambda): %s\n", comp.message.c_str());
            IntMatrix prod = s.seed.btilde.entries.transpose() * s.seed.lambda.entries;
            for (int i = 0; i < s.seed.n(); ++i) s.seed.symmetrizer.push_back(prod(i, i) > 0 ? prod(i, i) : 1);
        } else {
            s.seed.symmetrizer = comp.symmetrizer;
        }
        for (const auto& ja : j.at("named_arcs")) {
            NamedArc a;
            a.name = ja.at("name").get<std::string>();
            a.seq = detail::crossing_from_json(ja);
            s.named_arcs.push_back(std::move(a));
        }
        if (j.contains("flips"))
            for (const auto& jf : j.at("flips")) {
                FlipAnnotation f;
                f.path = jf.at("path").get<std::vector<int>>();
                for (const auto& jc : jf.at("arcs")) f.arcs.push_back(detail::crossing_from_json(jc));
                s.flips.push_back(std::move(f));
            }
        if (strict_seed_checks) {
            s.validate();
        } else {
            try {
                s.validate();
            } catch (const error& e) {
                std::fprintf(stderr, "warning: %s\n", e.what());
            }
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw error(origin + ": " + e.what());
    }
}

inline Scenario parse_scenario(const std::string& path, bool strict_seed_checks = true) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path, strict_seed_checks);
}

// ---------------------------------------------------------------------------
// Polygon fan scenarios. Vertices 0..n-1 counterclockwise, fan apex 0;
// mutable arc k is the chord (0, k+2); boundary arcs follow.

/// A chord (a,b) of the polygon, a < b, non-adjacent endpoints.
using Chord = std::pair<int, int>;

struct PolygonGeometry {
    int n = 0;                   // polygon vertex count
    std::vector<Chord> cluster;  // current chords, indexed by seed direction

    static PolygonGeometry fan(int n) {
        PolygonGeometry g;
        g.n = n;
        for (int k = 2; k <= n - 2; ++k) g.cluster.push_back({0, k});
        return g;
    }

    /// Crossing sequence of an arbitrary chord against the base fan.
    CrossingSequence crossing_sequence(Chord c) const {
        auto [a, b] = c;
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= n || b - a < 2 || (a == 0 && b == n - 1))
            throw error("polygon: not an interior chord");
        CrossingSequence out;
        if (a == 0) {
            out.arc = b - 2;  // a base fan arc
            return out;
        }
        for (int k = a + 1; k < b; ++k) out.crossings.push_back(k - 2);
        // Delta_0 is the fan triangle (0, a, a+1); needed explicitly when only
        // one arc is crossed.
        out.start_triangle = a - 1;
        return out;
    }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        if (v - u == 1 || (u == 0 && v == n - 1)) return true;  // polygon side
        for (const auto& [a, b] : cluster)
            if (a == u && b == v) return true;
        return false;
    }

    /// All triangles of the current triangulation, as vertex triples u<v<w.
    std::vector<std::array<int, 3>> triangles() const {
        std::vector<std::array<int, 3>> out;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                if (!has_edge(u, v)) continue;
                for (int w = v + 1; w < n; ++w)
                    if (has_edge(u, w) && has_edge(v, w)) out.push_back({u, v, w});
            }
        if (static_cast<int>(out.size()) != n - 2) throw error("polygon: triangulation is inconsistent");
        return out;
    }

    /// Flips the chord in seed direction k, replacing it in place.
    void flip(int k) {
        Chord c = cluster.at(k);
        std::vector<int> others;
        for (const auto& t : triangles()) {
            bool on = false;
            int third = -1;
            for (int v : t)
                if (v == c.first || v == c.second)
                    on = true;
            if (std::count(t.begin(), t.end(), c.first) && std::count(t.begin(), t.end(), c.second)) {
                for (int v : t)
                    if (v != c.first && v != c.second) third = v;
                others.push_back(third);
            }
            (void)on;
        }
        if (others.size() != 2) throw error("polygon: chord is not flippable");
        Chord repl{std::min(others[0], others[1]), std::max(others[0], others[1])};
        cluster[k] = repl;
    }
};

/// Fan triangulation of an n-gon, principal quantization with D = identity,
/// crossing sequences of every diagonal, depth-1 flip annotations.
inline Scenario generate_polygon(int n_vertices, int fan_apex = 0) {
    if (n_vertices < 4) throw error("generate_polygon: need at least 4 vertices");
    if (fan_apex != 0) throw error("generate_polygon: only apex 0 is supported");
    int n = n_vertices;
    Scenario s;
    s.name = "polygon" + std::to_string(n);

    // arc indices: 0..n-4 the fan chords (0,k+2); then boundary sides
    // (0,1),(1,2),..,(n-2,n-1),(0,n-1)
    std::map<std::pair<int, int>, int> arc_of;
    for (int k = 2; k <= n - 2; ++k) {
        arc_of[{0, k}] = k - 2;
        Arc a;
        a.label = "d" + std::to_string(0) + "_" + std::to_string(k);
        s.tri.arcs.push_back(a);
    }
    for (int v = 0; v < n; ++v) {
        int u = v, w = (v + 1) % n;
        if (u > w) std::swap(u, w);
        Arc a;
        a.label = "s" + std::to_string(u) + "_" + std::to_string(w);
        a.boundary = true;
        arc_of[{u, w}] = static_cast<int>(s.tri.arcs.size());
        s.tri.arcs.push_back(a);
    }
    auto side = [&](int u, int w) {
        if (u > w) std::swap(u, w);
        return arc_of.at({u, w});
    };
    // fan triangle (0, k, k+1); clockwise side order for u<v<w is (u,w),(w,v),(v,u)
    for (int k = 1; k <= n - 2; ++k)
        s.tri.triangles.push_back(Triangle{{side(0, k + 1), side(k, k + 1), side(0, k)}});

    IntMatrix b = signed_adjacency(s.tri);
    s.seed = build_principal_quantization(b, std::vector<Int>(s.tri.mutable_count(), 1));

    PolygonGeometry geo = PolygonGeometry::fan(n);
    for (int a = 1; a < n - 1; ++a)
        for (int bb = a + 2; bb < n; ++bb) {
            NamedArc arc;
            arc.name = "c" + std::to_string(a) + "_" + std::to_string(bb);
            arc.seq = geo.crossing_sequence({a, bb});
            s.named_arcs.push_back(std::move(arc));
        }
    for (int k = 0; k < s.tri.mutable_count(); ++k) {
        PolygonGeometry g2 = geo;
        g2.flip(k);
        FlipAnnotation f;
        f.path = {k};
        for (const Chord& c : g2.cluster) f.arcs.push_back(g2.crossing_sequence(c));
        s.flips.push_back(std::move(f));
    }
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Bundled orbifold scenario: a disk with two marked boundary points and two
// weight-2 orbifold points. One interior triangle carries both pending arcs;
// the outer triangle has two boundary sides. The named arc gamma winds around
// both orbifold points.

inline Scenario disk_with_two_orbifold_points() {
    Scenario s;
    s.name = "disk_o2";
    s.tri.arcs = {
        Arc{"1", 2, false, true},  // pending
        Arc{"2", 2, false, true},  // pending
        Arc{"3", 1, false, false},
        Arc{"b1", 1, true, false},
        Arc{"b2", 1, true, false},
    };
    s.tri.triangles = {Triangle{{0, 1, 2}}, Triangle{{2, 3, 4}}};
    s.seed = build_principal_quantization(signed_adjacency(s.tri), weight_symmetrizer(s.tri));
    NamedArc gamma;
    gamma.name = "gamma";
    gamma.seq.crossings = {2, 0, 1, 0, 1, 0, 2};
    s.named_arcs.push_back(std::move(gamma));

    // Flip path reaching gamma in direction 1 after mutations (1,2,3,1); the
    // intermediate arcs' crossing sequences were identified by matching their
    // expansions against the mutation oracle.
    auto seq = [](std::vector<int> crossings) {
        CrossingSequence c;
        c.crossings = std::move(crossings);
        return c;
    };
    s.flips.push_back(FlipAnnotation{{0}, {seq({0}), s.base_arc(1), s.base_arc(2)}});
    s.flips.push_back(FlipAnnotation{{0, 1}, {seq({0}), seq({0, 1, 0}), s.base_arc(2)}});
    s.flips.push_back(FlipAnnotation{{0, 1, 2}, {seq({0}), seq({0, 1, 0}), seq({0, 1, 0, 2})}});
    s.flips.push_back(
        FlipAnnotation{{0, 1, 2, 0}, {seq({2, 0, 1, 0, 1, 0, 2}), seq({0, 1, 0}), seq({0, 1, 0, 2})}});
    s.validate();
    return s;
}

}  // namespace qcl
