#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcl/seed.hpp"

namespace qcl {

/// Laurent polynomial in q^{1/2}: exponent of q^{1/2} -> nonzero coefficient.
using QHalfLaurent = std::map<Int, Int>;

using ExponentVector = std::vector<Int>;

inline void qh_add(QHalfLaurent& into, Int half_exponent, Int coeff) {
    if (coeff == 0) return;
    auto it = into.find(half_exponent);
    if (it == into.end()) {
        into.emplace(half_exponent, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) into.erase(it);
    }
}

/// Element of the quantum torus: sum of normalized monomials with
/// Z[q^{+-1/2}] coefficients. Term order is lexicographic on exponents.
struct TorusElement {
    std::map<ExponentVector, QHalfLaurent> terms;

    bool operator==(const TorusElement& o) const = default;
    bool is_zero() const { return terms.empty(); }

    void add_term(const ExponentVector& a, Int half_exponent, Int coeff) {
        if (coeff == 0) return;
        auto& qh = terms[a];
        qh_add(qh, half_exponent, coeff);
        if (qh.empty()) terms.erase(a);
    }

    TorusElement operator+(const TorusElement& o) const {
        TorusElement out = *this;
        for (const auto& [a, qh] : o.terms)
            for (const auto& [e, c] : qh) out.add_term(a, e, c);
        return out;
    }

    /// Multiplies by q^{k/2}.
    TorusElement shifted(Int half_exponent) const {
        TorusElement out;
        for (const auto& [a, qh] : terms) {
            QHalfLaurent s;
            for (const auto& [e, c] : qh) s.emplace(e + half_exponent, c);
            out.terms.emplace(a, std::move(s));
        }
        return out;
    }
};

/// The normalized monomial X^a (coefficient 1).
inline TorusElement monomial(const ExponentVector& a) {
    TorusElement x;
    x.add_term(a, 0, 1);
    return x;
}

inline TorusElement torus_identity(int m) { return monomial(ExponentVector(m, 0)); }

/// Product in the quantum torus: X^a X^b = q^{Lambda(a,b)/2} X^{a+b},
/// extended bilinearly over Z[q^{+-1/2}].
inline TorusElement multiply(const TorusElement& x, const TorusElement& y, const LambdaForm& lambda) {
    TorusElement out;
    for (const auto& [a, qa] : x.terms)
        for (const auto& [b, qb] : y.terms) {
            if (a.size() != b.size() || static_cast<int>(a.size()) != lambda.m())
                throw error("multiply: exponent dimension mismatch");
            Int twist = lambda.apply(a, b);  // exponent of q^{1/2}
            ExponentVector sum(a.size());
            for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
            for (const auto& [ea, ca] : qa)
                for (const auto& [eb, cb] : qb) out.add_term(sum, ea + eb + twist, ca * cb);
        }
    return out;
}

/// Bar involution: q^{1/2} -> q^{-1/2}; normalized monomials are fixed.
inline TorusElement bar(const TorusElement& x) {
    TorusElement out;
    for (const auto& [a, qh] : x.terms) {
        QHalfLaurent neg;
        for (const auto& [e, c] : qh) neg.emplace(-e, c);
        out.terms.emplace(a, std::move(neg));
    }
    return out;
}

/// Evaluation at q^{1/2} = 1; zero results dropped.
inline std::map<ExponentVector, Int> specialize_q1(const TorusElement& x) {
    std::map<ExponentVector, Int> out;
    for (const auto& [a, qh] : x.terms) {
        Int s = 0;
        for (const auto& [e, c] : qh) s += c;
        if (s != 0) out.emplace(a, s);
    }
    return out;
}

/// q^{1/2}-exponent n(lambda) of an ordered product of the exchange monomials
/// Pi_{+-} = X^{-e_tau + (b_tau)_{+-}}: Z_1...Z_d = q^{n/2} X^{sum}.
/// signs[i] = true picks Pi_+, false picks Pi_-.
inline Int product_sequence_q_exponent(const std::vector<bool>& signs, const QuantumSeed& seed, int tau) {
    if (tau < 0 || tau >= seed.n()) throw error("product_sequence_q_exponent: direction out of range");
    ExponentVector plus(seed.m()), minus(seed.m());
    for (int i = 0; i < seed.m(); ++i) {
        plus[i] = positive_part(seed.btilde.entries(i, tau));
        minus[i] = positive_part(-seed.btilde.entries(i, tau));
    }
    plus[tau] -= 1;
    minus[tau] -= 1;
    TorusElement prod = torus_identity(seed.m());
    for (bool s : signs) prod = multiply(prod, monomial(s ? plus : minus), seed.lambda);
    if (prod.terms.size() != 1) throw error("product_sequence_q_exponent: product is not a single term");
    const QHalfLaurent& qh = prod.terms.begin()->second;
    if (qh.size() != 1 || qh.begin()->second != 1)
        throw error("product_sequence_q_exponent: coefficient is not a power of q^{1/2}");
    return qh.begin()->first;
}

// ---------------------------------------------------------------------------
// Canonical text rendering.

/// "q^{3/2}", "q", "q^{-1}", "1" for a single power of q^{1/2}.
inline std::string render_q_power(Int half_exponent) {
    if (half_exponent == 0) return "1";
    if (half_exponent == 2) return "q";
    if (half_exponent % 2 == 0) return "q^" + std::to_string(half_exponent / 2);
    return "q^(" + std::to_string(half_exponent) + "/2)";
}

/// Coefficient as a signed sum of q^{k/2}, highest exponent first.
inline std::string render_coefficient(const QHalfLaurent& qh) {
    if (qh.empty()) return "0";
    std::string s;
    for (auto it = qh.rbegin(); it != qh.rend(); ++it) {
        auto [e, c] = *it;
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        Int ac = c < 0 ? -c : c;
        if (ac != 1 || e == 0) s += std::to_string(ac);
        if (e != 0) {
            if (ac != 1) s += "*";
            s += render_q_power(e);
        }
    }
    return s;
}

inline std::string render_exponent_vector(const ExponentVector& a) {
    std::string s = "x^(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

/// Deterministic canonical rendering: terms in lexicographic exponent order.
inline std::string render(const TorusElement& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [a, qh] : x.terms) {
        if (!s.empty()) s += " + ";
        bool trivial = qh.size() == 1 && qh.begin()->first == 0 && qh.begin()->second == 1;
        if (trivial)
            s += render_exponent_vector(a);
        else
            s += "(" + render_coefficient(qh) + ")*" + render_exponent_vector(a);
    }
    return s;
}

}  // namespace qcl
