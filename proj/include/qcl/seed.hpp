#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcl/matrix.hpp"

namespace qcl {

/// Extended exchange matrix: m x n, rows 0..n-1 mutable, n..m-1 frozen.
struct ExtendedExchangeMatrix {
    IntMatrix entries;
    int n = 0;

    int m() const { return entries.rows(); }

    void validate() const {
        if (n < 1 || entries.rows() < n || entries.cols() != n)
            throw error("extended exchange matrix: need m >= n >= 1 and n columns");
    }

    /// Column k of the m x n matrix.
    std::vector<Int> column(int k) const {
        std::vector<Int> c(m());
        for (int i = 0; i < m(); ++i) c[i] = entries(i, k);
        return c;
    }

    std::vector<Int> column_positive_part(int k) const {
        auto c = column(k);
        for (auto& v : c) v = positive_part(v);
        return c;
    }

    std::vector<Int> column_negative_part(int k) const {
        auto c = column(k);
        for (auto& v : c) v = positive_part(-v);
        return c;
    }
};

/// Skew-symmetric m x m form; Lambda(a,b) = a^t Lambda b.
struct LambdaForm {
    IntMatrix entries;

    int m() const { return entries.rows(); }

    void validate() const {
        if (!entries.is_skew_symmetric()) throw error("lambda form: matrix is not skew-symmetric");
    }

    Int apply(const std::vector<Int>& a, const std::vector<Int>& b) const {
        if (static_cast<int>(a.size()) != m() || static_cast<int>(b.size()) != m())
            throw error("lambda form: vector dimension mismatch");
        Int s = 0;
        for (int i = 0; i < m(); ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < m(); ++j) s += a[i] * entries(i, j) * b[j];
        }
        return s;
    }
};

struct CompatibilityResult {
    bool ok = false;
    std::vector<Int> symmetrizer;  // d_1..d_n when ok
    int row = -1, col = -1;        // first violating entry of B^t * Lambda when not ok
    std::string message;
};

/// Checks (B~)^t Lambda = (D 0) with D diagonal positive; returns D's diagonal on success.
inline CompatibilityResult check_compatibility(const ExtendedExchangeMatrix& btilde, const LambdaForm& lambda) {
    btilde.validate();
    lambda.validate();
    if (lambda.m() != btilde.m()) throw error("check_compatibility: lambda is not m x m");
    IntMatrix prod = btilde.entries.transpose() * lambda.entries;  // n x m
    CompatibilityResult res;
    for (int i = 0; i < btilde.n; ++i)
        for (int j = 0; j < btilde.m(); ++j) {
            Int v = prod(i, j);
            bool good = (i == j) ? v > 0 : v == 0;
            if (!good) {
                res.row = i;
                res.col = j;
                res.message = "B^t*Lambda entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") = " + std::to_string(v) + (i == j ? " is not positive" : " is not zero");
                return res;
            }
        }
    res.ok = true;
    res.symmetrizer.resize(btilde.n);
    for (int i = 0; i < btilde.n; ++i) res.symmetrizer[i] = prod(i, i);
    return res;
}

/// Compatible pair plus its symmetrizer d^T.
struct QuantumSeed {
    ExtendedExchangeMatrix btilde;
    LambdaForm lambda;
    std::vector<Int> symmetrizer;

    int n() const { return btilde.n; }
    int m() const { return btilde.m(); }

    void validate() const {
        auto res = check_compatibility(btilde, lambda);
        if (!res.ok) throw error("quantum seed: incompatible pair: " + res.message);
        if (res.symmetrizer != symmetrizer) throw error("quantum seed: stored symmetrizer disagrees with B^t*Lambda");
    }
};

/// Principal-style quantization of a skew-symmetrizable B with symmetrizer D:
/// B~ = (B^t I)^t, Lambda = ((0 -D) (D -DB)).
inline QuantumSeed build_principal_quantization(const IntMatrix& b, const std::vector<Int>& d) {
    int n = b.rows();
    if (b.cols() != n) throw error("build_principal_quantization: B must be square");
    if (static_cast<int>(d.size()) != n) throw error("build_principal_quantization: D size mismatch");
    for (Int v : d)
        if (v <= 0) throw error("build_principal_quantization: D entries must be positive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[i] * b(i, j) != -d[j] * b(j, i)) throw error("build_principal_quantization: D*B is not skew-symmetric");

    QuantumSeed seed;
    seed.btilde.n = n;
    seed.btilde.entries = IntMatrix(2 * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) seed.btilde.entries(i, j) = b(i, j);
    for (int i = 0; i < n; ++i) seed.btilde.entries(n + i, i) = 1;

    seed.lambda.entries = IntMatrix(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        seed.lambda.entries(i, n + i) = -d[i];
        seed.lambda.entries(n + i, i) = d[i];
        for (int j = 0; j < n; ++j) seed.lambda.entries(n + i, n + j) = -d[i] * b(i, j);
    }
    seed.symmetrizer = d;
    seed.validate();
    return seed;
}

/// Matrix mutation in direction k (0-based).
inline ExtendedExchangeMatrix mutate_matrix(const ExtendedExchangeMatrix& btilde, int k) {
    btilde.validate();
    if (k < 0 || k >= btilde.n) throw error("mutate_matrix: direction out of range");
    ExtendedExchangeMatrix out = btilde;
    for (int i = 0; i < btilde.m(); ++i)
        for (int j = 0; j < btilde.n; ++j) {
            if (i == k || j == k)
                out.entries(i, j) = -btilde.entries(i, j);
            else
                out.entries(i, j) = btilde.entries(i, j) +
                                    positive_part(btilde.entries(i, k)) * positive_part(btilde.entries(k, j)) -
                                    positive_part(-btilde.entries(i, k)) * positive_part(-btilde.entries(k, j));
        }
    return out;
}

/// Lambda mutation in direction k; the new column is Lambda(e_i, -e_k + sum_l [b_lk]_+ e_l).
inline LambdaForm mutate_lambda(const ExtendedExchangeMatrix& btilde, const LambdaForm& lambda, int k) {
    if (k < 0 || k >= btilde.n) throw error("mutate_lambda: direction out of range");
    if (lambda.m() != btilde.m()) throw error("mutate_lambda: dimension mismatch");
    int m = btilde.m();
    std::vector<Int> target(m, 0);
    target[k] = -1;
    for (int l = 0; l < m; ++l) target[l] += positive_part(btilde.entries(l, k));
    LambdaForm out = lambda;
    for (int i = 0; i < m; ++i) {
        if (i == k) continue;
        Int v = 0;
        for (int l = 0; l < m; ++l) v += lambda.entries(i, l) * target[l];
        out.entries(i, k) = v;
        out.entries(k, i) = -v;
    }
    return out;
}

/// Mutates a whole seed; re-verifies compatibility with the unchanged symmetrizer.
inline QuantumSeed mutate_seed(const QuantumSeed& seed, int k) {
    QuantumSeed out;
    out.btilde = mutate_matrix(seed.btilde, k);
    out.lambda = mutate_lambda(seed.btilde, seed.lambda, k);
    out.symmetrizer = seed.symmetrizer;
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Triangulations of unpunctured orbifolds (weight-2 orbifold points only).

struct Arc {
    std::string label;
    int weight = 1;  // 2 exactly for pending arcs
    bool boundary = false;
    bool pending = false;
};

/// Sides in clockwise cyclic order as embedded in the oriented orbifold.
struct Triangle {
    std::array<int, 3> sides{};  // arc indices
};

struct Triangulation {
    std::vector<Arc> arcs;  // non-boundary arcs first; index = position in the seed ordering
    std::vector<Triangle> triangles;

    int arc_count() const { return static_cast<int>(arcs.size()); }

    int mutable_count() const {
        int n = 0;
        while (n < arc_count() && !arcs[n].boundary) ++n;
        return n;
    }

    int find_arc(const std::string& label) const {
        for (int i = 0; i < arc_count(); ++i)
            if (arcs[i].label == label) return i;
        throw error("unknown arc label '" + label + "'");
    }

    std::vector<int> triangles_on(int arc) const {
        std::vector<int> out;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
            for (int s = 0; s < 3; ++s)
                if (triangles[t].sides[s] == arc) {
                    out.push_back(t);
                    break;
                }
        return out;
    }

    bool triangle_has_side(int t, int arc) const {
        const auto& s = triangles[t].sides;
        return s[0] == arc || s[1] == arc || s[2] == arc;
    }

    /// Arc following `arc` in the clockwise cyclic order of triangle t.
    int clockwise_next(int t, int arc) const {
        const auto& s = triangles[t].sides;
        int count = 0, pos = -1;
        for (int i = 0; i < 3; ++i)
            if (s[i] == arc) {
                ++count;
                pos = i;
            }
        if (count != 1)
            throw error("triangle " + std::to_string(t) + " does not contain arc '" + arcs[arc].label +
                        "' exactly once");
        return s[(pos + 1) % 3];
    }

    void validate() const {
        if (triangles.empty()) throw error("triangulation: empty triangle list");
        int n = mutable_count();
        for (int i = n; i < arc_count(); ++i)
            if (!arcs[i].boundary) throw error("triangulation: non-boundary arc '" + arcs[i].label +
                                               "' listed after a boundary arc");
        for (int i = 0; i < arc_count(); ++i) {
            const Arc& a = arcs[i];
            if (a.pending && a.weight != 2)
                throw error("triangulation: pending arc '" + a.label + "' must have weight 2");
            if (!a.pending && a.weight != 1)
                throw error("triangulation: ordinary arc '" + a.label + "' must have weight 1");
            if (a.boundary && a.pending) throw error("triangulation: boundary arc '" + a.label + "' cannot be pending");
        }
        std::vector<int> side_count(arc_count(), 0);
        for (const auto& t : triangles) {
            for (int s : t.sides) {
                if (s < 0 || s >= arc_count()) throw error("triangulation: triangle side index out of range");
                ++side_count[s];
            }
            // self-folded triangles are excluded in the unpunctured setting
            if (t.sides[0] == t.sides[1] && t.sides[1] == t.sides[2])
                throw error("triangulation: self-folded triangle at arc '" + arcs[t.sides[0]].label + "'");
        }
        for (int i = 0; i < arc_count(); ++i) {
            int expected = (arcs[i].boundary || arcs[i].pending) ? 1 : 2;
            if (side_count[i] != expected)
                throw error("triangulation: arc '" + arcs[i].label + "' appears as a side of " +
                            std::to_string(side_count[i]) + " triangles, expected " + std::to_string(expected));
        }
    }
};

/// Signed adjacency matrix B^T over the mutable arcs.
inline IntMatrix signed_adjacency(const Triangulation& t) {
    t.validate();
    int n = t.mutable_count();
    IntMatrix b(n, n);
    for (const auto& tri : t.triangles) {
        for (int s = 0; s < 3; ++s) {
            int tau = tri.sides[s];
            int next = tri.sides[(s + 1) % 3];  // next follows tau clockwise
            if (tau < n && next < n && tau != next) {
                b(tau, next) += t.arcs[next].weight;
                b(next, tau) -= t.arcs[tau].weight;
            }
        }
    }
    return b;
}

/// Weight diagonal of the mutable arcs; diag(w) * B^T is skew-symmetric.
inline std::vector<Int> weight_symmetrizer(const Triangulation& t) {
    std::vector<Int> d(t.mutable_count());
    for (int i = 0; i < t.mutable_count(); ++i) d[i] = t.arcs[i].weight;
    return d;
}

}  // namespace qcl
