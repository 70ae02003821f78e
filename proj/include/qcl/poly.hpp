#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcl/seed.hpp"
#include "qcl/torus.hpp"

namespace qcl {

/// Commutative Laurent polynomial: exponent vector in Z^m -> nonzero coefficient.
using CommPoly = std::map<ExponentVector, Int>;

inline CommPoly comm_monomial(const ExponentVector& a, Int c = 1) {
    CommPoly p;
    if (c != 0) p.emplace(a, c);
    return p;
}

inline void comm_add_into(CommPoly& into, const ExponentVector& a, Int c) {
    if (c == 0) return;
    auto it = into.find(a);
    if (it == into.end()) {
        into.emplace(a, c);
    } else {
        it->second += c;
        if (it->second == 0) into.erase(it);
    }
}

inline CommPoly comm_add(const CommPoly& x, const CommPoly& y) {
    CommPoly out = x;
    for (const auto& [a, c] : y) comm_add_into(out, a, c);
    return out;
}

inline CommPoly comm_mul(const CommPoly& x, const CommPoly& y) {
    CommPoly out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            if (a.size() != b.size()) throw error("comm_mul: dimension mismatch");
            ExponentVector s(a.size());
            for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            comm_add_into(out, s, ca * cb);
        }
    return out;
}

inline CommPoly comm_pow(const CommPoly& x, Int e) {
    if (e < 0) throw error("comm_pow: negative exponent");
    if (x.empty()) {
        if (e == 0) throw error("comm_pow: 0^0");
        return {};
    }
    CommPoly out = comm_monomial(ExponentVector(x.begin()->first.size(), 0));
    for (Int i = 0; i < e; ++i) out = comm_mul(out, x);
    return out;
}

/// Exact division by iterated leading-term elimination under lexicographic
/// order; a remainder is an integrity error (the Laurent phenomenon
/// guarantees exactness for valid inputs).
inline CommPoly comm_divide_exact(CommPoly num, const CommPoly& den) {
    if (den.empty()) throw error("comm_divide_exact: division by zero");
    auto lt = den.rbegin();  // lex-largest term
    CommPoly quotient;
    size_t steps = 0, limit = 4 * (num.size() + 1) * (den.size() + 1) + (1u << 22);
    while (!num.empty()) {
        auto lf = num.rbegin();
        if (lf->second % lt->second != 0) throw error("comm_divide_exact: non-exact division (coefficient)");
        ExponentVector qa(lf->first.size());
        for (size_t i = 0; i < qa.size(); ++i) qa[i] = lf->first[i] - lt->first[i];
        Int qc = lf->second / lt->second;
        comm_add_into(quotient, qa, qc);
        for (const auto& [b, cb] : den) {
            ExponentVector s(qa.size());
            for (size_t i = 0; i < qa.size(); ++i) s[i] = qa[i] + b[i];
            comm_add_into(num, s, -qc * cb);
        }
        if (++steps > limit) throw error("comm_divide_exact: non-exact division (no termination)");
    }
    return quotient;
}

inline std::string render_comm(const CommPoly& p) {
    if (p.empty()) return "0";
    std::string s;
    for (const auto& [a, c] : p) {
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        Int ac = c < 0 ? -c : c;
        if (ac != 1) s += std::to_string(ac) + "*";
        s += render_exponent_vector(a);
    }
    return s;
}

/// Commutative cluster-variable state: expansions of the current cluster in
/// the initial variables x_1..x_m (frozen variables never mutate).
struct CommutativeSeedState {
    ExtendedExchangeMatrix btilde;
    std::vector<CommPoly> vars;  // size m

    static CommutativeSeedState initial(const ExtendedExchangeMatrix& btilde) {
        btilde.validate();
        CommutativeSeedState st;
        st.btilde = btilde;
        for (int i = 0; i < btilde.m(); ++i) {
            ExponentVector e(btilde.m(), 0);
            e[i] = 1;
            st.vars.push_back(comm_monomial(e));
        }
        return st;
    }
};

/// One commutative mutation in direction k:
/// x_k' = (prod x_i^{[b_ik]+} + prod x_i^{[-b_ik]+}) / x_k, division exact.
inline CommutativeSeedState commutative_mutate(const CommutativeSeedState& st, int k) {
    if (k < 0 || k >= st.btilde.n) throw error("commutative_mutate: direction out of range");
    int m = st.btilde.m();
    CommPoly plus = comm_monomial(ExponentVector(m, 0));
    CommPoly minus = plus;
    for (int i = 0; i < m; ++i) {
        Int b = st.btilde.entries(i, k);
        if (b > 0) plus = comm_mul(plus, comm_pow(st.vars[i], b));
        if (b < 0) minus = comm_mul(minus, comm_pow(st.vars[i], -b));
    }
    CommutativeSeedState out;
    out.btilde = mutate_matrix(st.btilde, k);
    out.vars = st.vars;
    out.vars[k] = comm_divide_exact(comm_add(plus, minus), st.vars[k]);
    return out;
}

}  // namespace qcl
