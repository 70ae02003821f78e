#pragma once

#include <string>
#include <vector>

#include "qcl/expansion.hpp"
#include "qcl/poly.hpp"
#include "qcl/scenario.hpp"

namespace qcl {

struct CheckResult {
    bool pass = false;
    std::string name;
    std::string scenario;
    std::string detail;  // first differing term on failure
};

inline std::string format_check(const CheckResult& r) {
    std::string s = (r.pass ? "PASS " : "FAIL ") + r.name + " " + r.scenario;
    if (!r.pass && !r.detail.empty()) s += ": " + r.detail;
    return s;
}

namespace detail {

/// First term present in x but not matching y (for failure reports).
inline std::string first_difference(const TorusElement& x, const TorusElement& y) {
    for (const auto& [a, qh] : x.terms) {
        auto it = y.terms.find(a);
        if (it == y.terms.end() || it->second != qh)
            return "(" + render_coefficient(qh) + ")*" + render_exponent_vector(a);
    }
    for (const auto& [a, qh] : y.terms)
        if (!x.terms.count(a)) return "missing (" + render_coefficient(qh) + ")*" + render_exponent_vector(a);
    return "";
}

/// Quantum expansions (in the base torus) of all cluster variables of the
/// seed reached by `path`, plus the frozen monomials; also returns that seed.
struct ClusterExpansions {
    QuantumSeed seed_t;
    std::vector<TorusElement> vars;  // size m
};

inline ClusterExpansions cluster_expansions(const Scenario& s, const std::vector<int>& path) {
    ClusterExpansions out;
    out.seed_t = s.seed;
    for (int k : path) out.seed_t = mutate_seed(out.seed_t, k);
    const FlipAnnotation* ann = path.empty() ? nullptr : s.find_flip(path);
    if (!path.empty() && !ann) throw error("scenario '" + s.name + "': no flip annotation for requested path");
    for (int i = 0; i < s.seed.n(); ++i) {
        CrossingSequence c = ann ? ann->arcs[i] : s.base_arc(i);
        out.vars.push_back(quantum_expansion(s.tri, c, s.seed));
    }
    for (int i = s.seed.n(); i < s.seed.m(); ++i) {
        ExponentVector e(s.seed.m(), 0);
        e[i] = 1;
        out.vars.push_back(monomial(e));
    }
    return out;
}

/// Normalized monomial X(t)^b for b >= 0, expressed in the base torus:
/// q^{-(1/2) sum_{i<j} Lambda(t)_{ij} b_i b_j} * ordered product of the
/// seed-t variables' expansions.
inline TorusElement normalized_power(const ClusterExpansions& ce, const LambdaForm& base_lambda,
                                     const std::vector<Int>& b) {
    int m = ce.seed_t.m();
    Int pre = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pre -= ce.seed_t.lambda.entries(i, j) * b[i] * b[j];
    TorusElement prod = torus_identity(m);
    for (int i = 0; i < m; ++i)
        for (Int r = 0; r < b[i]; ++r) prod = multiply(prod, ce.vars[i], base_lambda);
    return prod.shifted(pre);
}

}  // namespace detail

/// X_a X_b = q^{Lambda(t)_{ab}} X_b X_a for all variable pairs of the seed
/// reached by `path`, with products taken in the base torus.
inline CheckResult check_quasi_commutation(const Scenario& s, const std::vector<int>& path) {
    CheckResult res;
    res.name = "quasi-commutation[" + std::to_string(path.size()) + "-step]";
    res.scenario = s.name;
    auto ce = detail::cluster_expansions(s, path);
    for (int a = 0; a < s.seed.m(); ++a)
        for (int b = a + 1; b < s.seed.m(); ++b) {
            TorusElement lhs = multiply(ce.vars[a], ce.vars[b], s.seed.lambda);
            TorusElement rhs = multiply(ce.vars[b], ce.vars[a], s.seed.lambda)
                                   .shifted(2 * ce.seed_t.lambda.entries(a, b));
            if (!(lhs == rhs)) {
                res.detail = "pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "): " +
                             detail::first_difference(lhs, rhs);
                return res;
            }
        }
    res.pass = true;
    return res;
}

/// Division-free exchange check for the last flip of `path`:
/// X_{tau'} X_tau = q^{Lambda(t)(-e_k+b_+, e_k)/2} X(t)^{b_+}
///                + q^{Lambda(t)(-e_k+b_-, e_k)/2} X(t)^{b_-}.
inline CheckResult check_exchange_relation(const Scenario& s, const std::vector<int>& path) {
    CheckResult res;
    res.scenario = s.name;
    if (path.empty()) throw error("check_exchange_relation: empty flip path");
    int k = path.back();
    res.name = "exchange[k=" + std::to_string(k + 1) + ", depth=" + std::to_string(path.size()) + "]";
    std::vector<int> parent(path.begin(), path.end() - 1);
    auto ce = detail::cluster_expansions(s, parent);

    const FlipAnnotation* ann = s.find_flip(path);
    if (!ann) throw error("scenario '" + s.name + "': no flip annotation for requested path");
    TorusElement x_new = quantum_expansion(s.tri, ann->arcs[k], s.seed);

    TorusElement lhs = multiply(x_new, ce.vars[k], s.seed.lambda);
    TorusElement rhs;
    for (int sign : {+1, -1}) {
        std::vector<Int> b(ce.seed_t.m());
        for (int i = 0; i < ce.seed_t.m(); ++i) b[i] = positive_part(sign * ce.seed_t.btilde.entries(i, k));
        std::vector<Int> expo = b;
        expo[k] -= 1;
        ExponentVector ek(ce.seed_t.m(), 0);
        ek[k] = 1;
        Int twist = ce.seed_t.lambda.apply(expo, ek);  // exponent of q^{1/2}
        rhs = rhs + detail::normalized_power(ce, s.seed.lambda, b).shifted(twist);
    }
    if (lhs == rhs) {
        res.pass = true;
    } else {
        res.detail = detail::first_difference(lhs, rhs);
    }
    return res;
}

/// Ground-truth commutative expansions by iterated mutation along `path`;
/// returns the mutated cluster's variables in the initial ones.
inline std::vector<CommPoly> commutative_oracle(const Scenario& s, const std::vector<int>& path) {
    CommutativeSeedState st = CommutativeSeedState::initial(s.seed.btilde);
    for (int k : path) st = commutative_mutate(st, k);
    return st.vars;
}

/// commutative_expansion (matching formula) against the mutation oracle for
/// every mutable arc of the cluster reached by `path`.
inline CheckResult check_commutative_oracle(const Scenario& s, const std::vector<int>& path) {
    CheckResult res;
    res.name = "commutative-oracle[" + std::to_string(path.size()) + "-step]";
    res.scenario = s.name;
    auto oracle = commutative_oracle(s, path);
    const FlipAnnotation* ann = path.empty() ? nullptr : s.find_flip(path);
    if (!path.empty() && !ann) throw error("scenario '" + s.name + "': no flip annotation for requested path");
    for (int i = 0; i < s.seed.n(); ++i) {
        CrossingSequence c = ann ? ann->arcs[i] : s.base_arc(i);
        auto formula = commutative_expansion(s.tri, c, s.seed);
        if (!(formula == oracle[i])) {
            std::string diff;
            for (const auto& [a, coeff] : formula)
                if (!oracle[i].count(a) || oracle[i].at(a) != coeff) {
                    diff = std::to_string(coeff) + "*" + render_exponent_vector(a);
                    break;
                }
            if (diff.empty())
                for (const auto& [a, coeff] : oracle[i])
                    if (!formula.count(a)) {
                        diff = "missing " + std::to_string(coeff) + "*" + render_exponent_vector(a);
                        break;
                    }
            res.detail = "variable " + std::to_string(i + 1) + ": " + diff;
            return res;
        }
    }
    res.pass = true;
    return res;
}

/// Coefficients in N[q^{+-1/2}] and bar-invariance.
inline CheckResult check_positivity_and_bar(const TorusElement& x, const std::string& scenario,
                                            const std::string& what) {
    CheckResult res;
    res.name = "positivity-bar[" + what + "]";
    res.scenario = scenario;
    for (const auto& [a, qh] : x.terms)
        for (const auto& [e, c] : qh)
            if (c < 0) {
                res.detail = "negative coefficient at (" + render_coefficient(qh) + ")*" + render_exponent_vector(a);
                return res;
            }
    if (!(bar(x) == x)) {
        res.detail = "not bar-invariant: " + detail::first_difference(bar(x), x);
        return res;
    }
    res.pass = true;
    return res;
}

/// The full per-scenario suite: quasi-commutation and valuation-backed
/// expansions for the base and every annotated cluster, exchange relations
/// and oracle agreement for every annotated path, positivity/bar for every
/// named arc.
inline std::vector<CheckResult> run_verification(const Scenario& s) {
    std::vector<CheckResult> out;
    auto guard = [&](const std::string& name, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const error& e) {
            out.push_back(CheckResult{false, name, s.name, e.what()});
        }
    };
    guard("quasi-commutation", [&] { return check_quasi_commutation(s, {}); });
    guard("commutative-oracle", [&] { return check_commutative_oracle(s, {}); });
    for (const auto& f : s.flips) {
        guard("quasi-commutation", [&] { return check_quasi_commutation(s, f.path); });
        guard("exchange", [&] { return check_exchange_relation(s, f.path); });
        guard("commutative-oracle", [&] { return check_commutative_oracle(s, f.path); });
    }
    for (const auto& a : s.named_arcs) {
        guard("positivity-bar[" + a.name + "]", [&] {
            TorusElement x = quantum_expansion(s.tri, a.seq, s.seed);
            CheckResult pb = check_positivity_and_bar(x, s.name, a.name);
            if (!pb.pass) return pb;
            // q=1 coherence rides along: both paths must agree exactly
            auto comm = commutative_expansion(s.tri, a.seq, s.seed);
            if (!(specialize_q1(x) == comm))
                return CheckResult{false, "q1-coherence[" + a.name + "]", s.name, "q=1 specialization mismatch"};
            return pb;
        });
    }
    return out;
}

}  // namespace qcl
