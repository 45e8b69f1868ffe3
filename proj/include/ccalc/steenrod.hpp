#pragma once
// Mod-2 binomial arithmetic (negative upper indices included), brute-force
// verification sweeps for the binomial identities underlying the mod-2
// operation formulas, and the families Steenrod squares with their corollary
// relations evaluated on user-supplied ledgers.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ccalc/charclass.hpp"
#include "ccalc/gring.hpp"

namespace ccalc {

// ---- Mod-2 binomials ----------------------------------------------------------

// Lucas reduction for n >= 0; negative n is first folded through the exact
// negation identity binom(n,k) = (-1)^k binom(k-n-1,k).
inline int binom_mod2(long long n, long long k) {
    if (k < 0) fail("NegativeK", "binomial lower index must be >= 0");
    if (n < 0) n = k - n - 1;
    if (k > n) return 0;
    return (n & k) == k ? 1 : 0;
}

// ---- Identity verification sweeps ----------------------------------------------

struct VerificationRange {
    int u_lo = 0, u_hi = 0;
    int v_lo = 0, v_hi = 0;
    int j_lo = 0, j_hi = 0;
    int k_lo = 0, k_hi = 0;
    int l_lo = 0, l_hi = 0;
    int m_lo = 0, m_hi = 0;
    int d_lo = 0, d_hi = 0;
    int aprime_margin = 0; // sweep a' from its lower bound to bound + margin

    static VerificationRange vzero_default() {
        VerificationRange r;
        r.u_lo = -20, r.u_hi = 20, r.j_lo = 0, r.j_hi = 12;
        return r;
    }
    static VerificationRange recur5_default() {
        VerificationRange r;
        r.u_lo = -15, r.u_hi = 15, r.v_lo = -15, r.v_hi = 15, r.j_lo = 0, r.j_hi = 10;
        return r;
    }
    static VerificationRange recur3_default() {
        VerificationRange r;
        r.k_lo = 0, r.k_hi = 6, r.l_lo = 0, r.l_hi = 6, r.m_lo = 0, r.m_hi = 6;
        r.d_lo = -3, r.d_hi = 8, r.aprime_margin = 6;
        return r;
    }
};

struct VerificationReport {
    std::string identity;
    long long cases = 0;
    std::vector<std::string> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};

// Optional per-case sink for tabular output: (parameter tuple, lhs, rhs).
using RowSink = std::function<void(const std::string&, int, int)>;

namespace detail {

inline void require_span(int lo, int hi, const std::string& what) {
    if (lo > hi) fail("BadRange", "empty range for " + what);
}

} // namespace detail

// sum_l binom(u+l, j-l) binom(2l-1, l) = binom(u+1, j) mod 2.
inline VerificationReport verify_vzero(const VerificationRange& r, const RowSink& sink = {}) {
    detail::require_span(r.u_lo, r.u_hi, "u");
    detail::require_span(r.j_lo, r.j_hi, "j");
    if (r.j_lo < 0) fail("BadRange", "j must stay >= 0");
    VerificationReport rep{"vzero", 0, {}};
    for (int u = r.u_lo; u <= r.u_hi; ++u)
        for (int j = r.j_lo; j <= r.j_hi; ++j) {
            int lhs = 0;
            for (int l = 0; l <= j; ++l) lhs ^= binom_mod2(u + l, j - l) & binom_mod2(2 * l - 1, l);
            int rhs = binom_mod2(u + 1, j);
            std::string params = "u=" + std::to_string(u) + ",j=" + std::to_string(j);
            if (sink) sink(params, lhs, rhs);
            if (lhs != rhs) rep.counterexamples.push_back(params);
            ++rep.cases;
        }
    return rep;
}

// sum_l binom(u+l, j-l) binom(v-l, l) = binom(u+v+1, j) mod 2.
inline VerificationReport verify_recur5(const VerificationRange& r, const RowSink& sink = {}) {
    detail::require_span(r.u_lo, r.u_hi, "u");
    detail::require_span(r.v_lo, r.v_hi, "v");
    detail::require_span(r.j_lo, r.j_hi, "j");
    if (r.j_lo < 0) fail("BadRange", "j must stay >= 0");
    VerificationReport rep{"recur5", 0, {}};
    for (int u = r.u_lo; u <= r.u_hi; ++u)
        for (int v = r.v_lo; v <= r.v_hi; ++v)
            for (int j = r.j_lo; j <= r.j_hi; ++j) {
                int lhs = 0;
                for (int l = 0; l <= j; ++l)
                    lhs ^= binom_mod2(u + l, j - l) & binom_mod2(v - l, l);
                int rhs = binom_mod2(u + v + 1, j);
                std::string params = "u=" + std::to_string(u) + ",v=" + std::to_string(v) +
                                     ",j=" + std::to_string(j);
                if (sink) sink(params, lhs, rhs);
                if (lhs != rhs) rep.counterexamples.push_back(params);
                ++rep.cases;
            }
    return rep;
}

// With f^m_{k,l} = binom(d-1-m+l+k, l):
// sum_{l'} f^{m+l'}_{k, l-l'} binom(a'+d-1-m-l', l') = binom(a'-k, l) mod 2,
// for every a' >= max(k, -d+1+m+l).
inline VerificationReport verify_recur3(const VerificationRange& r, const RowSink& sink = {}) {
    detail::require_span(r.k_lo, r.k_hi, "k");
    detail::require_span(r.l_lo, r.l_hi, "l");
    detail::require_span(r.m_lo, r.m_hi, "m");
    detail::require_span(r.d_lo, r.d_hi, "d");
    if (r.k_lo < 0 || r.l_lo < 0 || r.m_lo < 0) fail("BadRange", "k, l, m must stay >= 0");
    if (r.aprime_margin < 0) fail("BadRange", "a' margin must be >= 0");
    VerificationReport rep{"recur3", 0, {}};
    for (int k = r.k_lo; k <= r.k_hi; ++k)
        for (int l = r.l_lo; l <= r.l_hi; ++l)
            for (int m = r.m_lo; m <= r.m_hi; ++m)
                for (int d = r.d_lo; d <= r.d_hi; ++d) {
                    int lo = std::max(k, -d + 1 + m + l);
                    for (int ap = lo; ap <= lo + r.aprime_margin; ++ap) {
                        int lhs = 0;
                        for (int lp = 0; lp <= l; ++lp)
                            lhs ^= binom_mod2(d - 1 - (m + lp) + (l - lp) + k, l - lp) &
                                   binom_mod2(ap + d - 1 - m - lp, lp);
                        int rhs = binom_mod2(ap - k, l);
                        std::string params = "k=" + std::to_string(k) + ",l=" + std::to_string(l) +
                                             ",m=" + std::to_string(m) + ",d=" + std::to_string(d) +
                                             ",a'=" + std::to_string(ap);
                        if (sink) sink(params, lhs, rhs);
                        if (lhs != rhs) rep.counterexamples.push_back(params);
                        ++rep.cases;
                    }
                }
    return rep;
}

// ---- The SW ledger --------------------------------------------------------------

struct SWLedger {
    RingPtr ring;
    int d = 0;      // complex index of the family Dirac bundle
    int b_plus = 1; // rank of H^+
    std::vector<Element> segre_D;      // [k] = s_k(D), s_0 = 1
    std::map<int, Element> sw_classes; // m -> SW_m
    RealBundleClass hplus;
};

// deg SW_m = 2m - degree_shift(L).
inline int degree_shift(const SWLedger& L) { return 2 * L.d - L.b_plus - 1; }

inline Element ledger_sw(const SWLedger& L, int m) {
    auto it = L.sw_classes.find(m);
    return it == L.sw_classes.end() ? elem_zero(L.ring) : it->second;
}

inline Element ledger_s(const SWLedger& L, int k) { return list_at(L.ring, L.segre_D, k); }

inline void validate_ledger(const SWLedger& L) {
    if (L.b_plus < 1) fail("BadSchema", "b_plus must be a positive integer");
    for (size_t k = 0; k < L.segre_D.size(); ++k)
        detail::require_class_degree(L.ring, L.segre_D[k], 2 * int(k), "s" + std::to_string(k));
    int shift = degree_shift(L);
    for (auto& [m, e] : L.sw_classes) {
        if (m < 0) fail("BadSchema", "SW indices must be >= 0");
        if (e.ring != L.ring) fail("RingMismatch", "SW class from a different ring");
        if (!e.is_zero() && !is_homogeneous_of(e, 2 * m - shift))
            fail("DegreeMismatch", "SW_" + std::to_string(m) + " must sit in degree " +
                                       std::to_string(2 * m - shift));
    }
    if (L.hplus.ring != L.ring) fail("RingMismatch", "H+ lives in a different ring");
    validate_real_bundle(L.hplus);
}

inline Json ledger_to_json(const SWLedger& L) {
    Json sd = Json::array();
    for (auto& s : L.segre_D) sd.push_back(elem_to_json(s));
    Json sw = Json::object();
    for (auto& [m, e] : L.sw_classes) sw[std::to_string(m)] = elem_to_json(e);
    return Json{{"d", L.d},
                {"b_plus", L.b_plus},
                {"segre_D", sd},
                {"sw_classes", sw},
                {"hplus", real_bundle_to_json(L.hplus)}};
}

inline SWLedger ledger_from_json(const RingPtr& ring, const Json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("b_plus"))
        fail("BadSchema", "ledger wants {\"d\",\"b_plus\",\"segre_D\",\"sw_classes\",\"hplus\"}");
    if (!j["d"].is_number_integer() || !j["b_plus"].is_number_integer())
        fail("BadSchema", "d and b_plus must be integers");
    SWLedger L;
    L.ring = ring;
    L.d = j["d"].get<int>();
    L.b_plus = j["b_plus"].get<int>();
    if (j.contains("segre_D")) {
        if (!j["segre_D"].is_array()) fail("BadSchema", "\"segre_D\" must be an array");
        for (auto& e : j["segre_D"]) L.segre_D.push_back(elem_from_json(ring, e));
    }
    if (j.contains("sw_classes")) {
        if (!j["sw_classes"].is_object())
            fail("BadSchema", "\"sw_classes\" must map index strings to elements");
        for (auto& [key, val] : j["sw_classes"].items()) {
            size_t used = 0;
            int m = 0;
            try {
                m = std::stoi(key, &used);
            } catch (const std::exception&) {
                fail("BadSchema", "SW index is not an integer: '" + key + "'");
            }
            if (used != key.size()) fail("BadSchema", "SW index is not an integer: '" + key + "'");
            L.sw_classes[m] = elem_from_json(ring, val);
        }
    }
    L.hplus = j.contains("hplus") ? real_bundle_from_json(ring, j["hplus"])
                                  : RealBundleClass{ring, 0, {}, std::nullopt, std::nullopt};
    validate_ledger(L);
    return L;
}

// ---- Families Steenrod squares ----------------------------------------------------

// Sq^i(SW_m) for i = 2j or 2j+1:
//   sum_{l=0}^{j} sum_{k=0}^{j-l} binom(d-1-m+l+k, l) s_k(D) w_{2j-2l-2k(+1)}(H+) SW_{m+l},
// the odd case replacing each w_{2i} by w_{2i+1}.
inline Element sq(const SWLedger& L, int i, int m) {
    if (L.ring->coeff != Coeff::Z2) fail("NotMod2Ring", "Steenrod squares need a mod-2 ring");
    if (i < 0 || m < 0) fail("BadRange", "Sq index and SW index must be >= 0");
    int j = i / 2, parity = i % 2;
    Element out = elem_zero(L.ring);
    for (int l = 0; l <= j; ++l)
        for (int k = 0; k + l <= j; ++k) {
            if (!binom_mod2(L.d - 1 - m + l + k, l)) continue;
            Element term = ledger_s(L, k) * bundle_w(L.hplus, 2 * (j - l - k) + parity) *
                           ledger_sw(L, m + l);
            out = out + term;
        }
    return out;
}

struct LabeledClass {
    std::string description;
    Element value;
};

// Vanishing screens: families-realizable ledgers satisfy Sq^i(SW_m) = 0 whenever
// i exceeds the degree of SW_m. Nonzero entries certify non-realizability.
inline std::vector<LabeledClass> realizability_relations(const SWLedger& L) {
    if (L.ring->coeff != Coeff::Z2) fail("NotMod2Ring", "screens need a mod-2 ring");
    std::vector<LabeledClass> out;
    int shift = degree_shift(L);
    for (int m = 0; 2 * m - shift <= L.ring->trunc; ++m) {
        int deg = 2 * m - shift; // degree of SW_m; negative means SW_m = 0
        for (int j = std::max(0, deg / 2 + 1); deg + 2 * j <= L.ring->trunc; ++j)
            for (int i = 2 * j; i <= 2 * j + 1; ++i) {
                if (deg + i > L.ring->trunc) continue;
                out.push_back({"Sq^" + std::to_string(i) + "(SW_" + std::to_string(m) + ")",
                               sq(L, i, m)});
            }
    }
    return out;
}

// With b+ = 2p+1, p = 2^a p' (p' odd), trivial w(H+), and m = d-p-1:
// SW_{m+2^b} + s_{2^b}(D) SW_m for 0 <= b < a, and s_{2^a}(D) SW_m, all of
// which vanish for ledgers of genuine families.
inline std::vector<LabeledClass> power_of_two_relations(const SWLedger& L, int a, int p_prime) {
    if (L.ring->coeff != Coeff::Z2) fail("NotMod2Ring", "relations need a mod-2 ring");
    if (L.b_plus % 2 == 0) fail("PreconditionViolated", "b_plus must be odd");
    int p = (L.b_plus - 1) / 2;
    if (a < 0 || a > 30 || p_prime < 1 || p_prime % 2 == 0 ||
        (static_cast<long long>(p_prime) << a) != p)
        fail("PreconditionViolated",
             "factorization 2^" + std::to_string(a) + " * " + std::to_string(p_prime) +
                 " does not equal p = " + std::to_string(p) + " with odd cofactor");
    if (!(total_sw(L.hplus) == elem_one(L.ring)))
        fail("PreconditionViolated", "H+ must have trivial Stiefel-Whitney classes");
    int m = L.d - p - 1;
    if (m < 0) fail("PreconditionViolated", "needs d - p - 1 >= 0");
    std::vector<LabeledClass> out;
    for (int b = 0; b < a; ++b) {
        int step = 1 << b;
        out.push_back({"SW_" + std::to_string(m + step) + " + s_" + std::to_string(step) +
                           "(D)*SW_" + std::to_string(m),
                       ledger_sw(L, m + step) + ledger_s(L, step) * ledger_sw(L, m)});
    }
    int top = 1 << a;
    out.push_back({"s_" + std::to_string(top) + "(D)*SW_" + std::to_string(m),
                   ledger_s(L, top) * ledger_sw(L, m)});
    return out;
}

// When b+ = 3 mod 4 and the ordinary mod-2 invariant is odd, a smooth family
// forces c_1(D) = w_2(H+) mod 2; a nonzero discrepancy obstructs existence.
struct ObstructionReport {
    bool applicable = false; // false when the parity hypothesis is vacuous
    bool obstructed = false;
    Element discrepancy;
};

inline ObstructionReport w2_obstruction(const SWLedger& L, int sw_parity) {
    if (L.ring->coeff != Coeff::Z2) fail("NotMod2Ring", "obstruction needs a mod-2 ring");
    if (L.b_plus % 4 != 3)
        fail("WrongBPlusResidue", "needs b_plus = 2p+1 with p odd, got b_plus = " +
                                      std::to_string(L.b_plus));
    ObstructionReport rep;
    rep.discrepancy = elem_zero(L.ring);
    if (sw_parity % 2 == 0) return rep;
    rep.applicable = true;
    rep.discrepancy = ledger_s(L, 1) + bundle_w(L.hplus, 2); // c_1 = s_1 mod 2
    rep.obstructed = !rep.discrepancy.is_zero();
    return rep;
}

// If every SW_j with j > 0 is even and SW_0 is odd (in the balanced case
// 2d - b+ - 1 = 0), then w(H+) s(D) = 1; checked degree by degree.
struct ChernCheckReport {
    bool pass = false;
    int first_failure_degree = -1;
    Element discrepancy;
};

inline ChernCheckReport sw_equals_chern_check(const SWLedger& L) {
    if (L.ring->coeff != Coeff::Z2) fail("NotMod2Ring", "check needs a mod-2 ring");
    if (degree_shift(L) != 0) fail("PreconditionViolated", "needs 2d - b_plus - 1 = 0");
    if (!(ledger_sw(L, 0) == elem_one(L.ring)))
        fail("PreconditionViolated", "SW_0 must be odd");
    for (auto& [m, e] : L.sw_classes)
        if (m > 0 && !e.is_zero())
            fail("PreconditionViolated", "SW_" + std::to_string(m) + " must be even");
    Element total_s = elem_zero(L.ring);
    for (auto& s : L.segre_D) total_s = total_s + s;
    ChernCheckReport rep;
    rep.discrepancy = total_sw(L.hplus) * total_s - elem_one(L.ring);
    rep.pass = rep.discrepancy.is_zero();
    if (!rep.pass) {
        int lo = L.ring->trunc + 1;
        for (auto& [mono, c] : rep.discrepancy.terms) {
            (void)c;
            lo = std::min(lo, L.ring->mono_degree(mono));
        }
        rep.first_failure_degree = lo;
    }
    return rep;
}

} // namespace ccalc
