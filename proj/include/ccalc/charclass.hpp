#pragma once
// Characteristic-class calculus for virtual bundles described by rank plus a
// list of classes: Chern/Segre/Stiefel-Whitney data, Todd and A-hat classes
// generated from their defining one-variable series, the Chern character,
// circle-equivariant classes, and the projective-bundle pushforward.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccalc/gring.hpp"
#include "ccalc/io.hpp"

namespace ccalc {

// ---- Bundle data ------------------------------------------------------------

struct ComplexBundleClass {
    RingPtr ring;
    int rank = 0;               // virtual bundles may have negative rank
    std::vector<Element> chern; // chern[i] = c_{i+1}, homogeneous of degree 2(i+1)
};

struct RealBundleClass {
    RingPtr ring;
    int rank = 0;
    std::vector<Element> sw; // sw[i] = w_{i+1}, homogeneous of degree i+1
    std::optional<std::vector<Element>> pontryagin; // [i] = p_{i+1}, degree 4(i+1)
    std::optional<Element> kappa; // integral lift of w_2, degree 2
};

namespace detail {

inline bool zero_or_homogeneous(const Element& e, int d) {
    for (auto& [m, c] : e.terms) {
        (void)c;
        if (e.ring->mono_degree(m) != d) return false;
    }
    return true;
}

inline void require_class_degree(const RingPtr& ring, const Element& e, int d,
                                 const std::string& what) {
    if (e.ring != ring) fail("RingMismatch", what + " lives in a different ring");
    if (!zero_or_homogeneous(e, d))
        fail("DegreeMismatch", what + " must be homogeneous of degree " + std::to_string(d));
}

} // namespace detail

inline void validate_complex_bundle(const ComplexBundleClass& V) {
    for (size_t i = 0; i < V.chern.size(); ++i)
        detail::require_class_degree(V.ring, V.chern[i], 2 * int(i + 1),
                                     "c" + std::to_string(i + 1));
}

// c_j with c_0 = 1 and classes beyond the stored list equal to 0.
inline Element bundle_c(const ComplexBundleClass& V, int j) {
    if (j == 0) return elem_one(V.ring);
    if (j < 0 || j > int(V.chern.size())) return elem_zero(V.ring);
    return V.chern[size_t(j - 1)];
}

inline Element bundle_w(const RealBundleClass& W, int j) {
    if (j == 0) return elem_one(W.ring);
    if (j < 0 || j > int(W.sw.size())) return elem_zero(W.ring);
    return W.sw[size_t(j - 1)];
}

inline Element bundle_p(const RealBundleClass& W, int j) {
    if (!W.pontryagin) fail("MissingPontryagin", "bundle carries no Pontryagin classes");
    if (j == 0) return elem_one(W.ring);
    if (j < 0 || j > int(W.pontryagin->size())) return elem_zero(W.ring);
    return (*W.pontryagin)[size_t(j - 1)];
}

// Soft validation: returns human-readable warnings, never throws for these.
inline std::vector<std::string> validate_real_bundle(const RealBundleClass& W) {
    std::vector<std::string> warnings;
    for (size_t i = 0; i < W.sw.size(); ++i)
        detail::require_class_degree(W.ring, W.sw[i], int(i + 1), "w" + std::to_string(i + 1));
    if (W.pontryagin)
        for (size_t i = 0; i < W.pontryagin->size(); ++i)
            detail::require_class_degree(W.ring, (*W.pontryagin)[i], 4 * int(i + 1),
                                         "p" + std::to_string(i + 1));
    if (W.kappa) detail::require_class_degree(W.kappa->ring, *W.kappa, 2, "kappa");
    if (W.rank >= 0)
        for (size_t i = 0; i < W.sw.size(); ++i)
            if (int(i + 1) > W.rank && !W.sw[i].is_zero())
                warnings.push_back("w" + std::to_string(i + 1) + " is nonzero but the rank is " +
                                   std::to_string(W.rank));
    if (W.kappa && W.kappa->ring == W.ring && W.ring->coeff == Coeff::Z2 &&
        !(*W.kappa == bundle_w(W, 2)))
        warnings.push_back("kappa does not reduce to w2");
    return warnings;
}

// ---- Total-class series and Segre classes -----------------------------------

inline Element total_chern(const ComplexBundleClass& V) {
    Element t = elem_one(V.ring);
    for (auto& c : V.chern) t = t + c;
    return t;
}

inline Element total_sw(const RealBundleClass& W) {
    Element t = elem_one(W.ring);
    for (auto& w : W.sw) t = t + w;
    return t;
}

// Inverts a total class given as the list of its graded pieces,
// entry j in degree 2j with entry 0 a unit; returns the same shape.
inline std::vector<Element> total_class_inverse(const RingPtr& ring,
                                                const std::vector<Element>& cls) {
    Element total = elem_zero(ring);
    for (size_t j = 0; j < cls.size(); ++j) {
        detail::require_class_degree(ring, cls[j], 2 * int(j), "entry " + std::to_string(j));
        total = total + cls[j];
    }
    Element inv = elem_invert(total);
    std::vector<Element> out;
    for (int j = 0; 2 * j <= ring->trunc; ++j) out.push_back(graded_part(inv, 2 * j));
    return out;
}

// Segre classes: the multiplicative inverse of the total Chern class,
// returned as [s_0, s_1, ...] with s_j in degree 2j, out to the truncation.
inline std::vector<Element> segre(const ComplexBundleClass& V) {
    validate_complex_bundle(V);
    Element inv = elem_invert(total_chern(V));
    std::vector<Element> out;
    for (int j = 0; 2 * j <= V.ring->trunc; ++j) out.push_back(graded_part(inv, 2 * j));
    return out;
}

inline Element list_at(const RingPtr& ring, const std::vector<Element>& v, int j) {
    if (j < 0 || j >= int(v.size())) return elem_zero(ring);
    return v[size_t(j)];
}

// ---- Polynomials in the equivariant variable x (degree 2) -------------------

struct EquivariantPoly {
    RingPtr ring;
    std::map<int, Element> coeffs; // x-power -> nonzero Element
};

inline EquivariantPoly ep_zero(const RingPtr& r) { return EquivariantPoly{r, {}}; }

inline void ep_set(EquivariantPoly& p, int power, const Element& e) {
    if (power < 0) fail("BadRange", "negative x-power");
    if (e.ring != p.ring) fail("RingMismatch", "coefficient from a different ring");
    if (e.is_zero())
        p.coeffs.erase(power);
    else
        p.coeffs[power] = e;
}

inline Element ep_coeff(const EquivariantPoly& p, int power) {
    auto it = p.coeffs.find(power);
    return it == p.coeffs.end() ? elem_zero(p.ring) : it->second;
}

inline bool operator==(const EquivariantPoly& a, const EquivariantPoly& b) {
    return a.ring == b.ring && a.coeffs == b.coeffs;
}

inline EquivariantPoly ep_add(const EquivariantPoly& a, const EquivariantPoly& b) {
    if (a.ring != b.ring) fail("RingMismatch", "polynomials over different rings");
    EquivariantPoly out = a;
    for (auto& [k, e] : b.coeffs) ep_set(out, k, ep_coeff(out, k) + e);
    return out;
}

inline EquivariantPoly ep_scale(const EquivariantPoly& a, const Element& e) {
    EquivariantPoly out = ep_zero(a.ring);
    for (auto& [k, c] : a.coeffs) ep_set(out, k, c * e);
    return out;
}

// Multiply by x^k.
inline EquivariantPoly ep_shift(const EquivariantPoly& a, int k) {
    EquivariantPoly out = ep_zero(a.ring);
    for (auto& [p, c] : a.coeffs) ep_set(out, p + k, c);
    return out;
}

inline EquivariantPoly ep_mul(const EquivariantPoly& a, const EquivariantPoly& b) {
    if (a.ring != b.ring) fail("RingMismatch", "polynomials over different rings");
    EquivariantPoly out = ep_zero(a.ring);
    for (auto& [p, c] : a.coeffs)
        for (auto& [q, d] : b.coeffs) ep_set(out, p + q, ep_coeff(out, p + q) + c * d);
    return out;
}

inline EquivariantPoly ep_one(const RingPtr& r) {
    EquivariantPoly p = ep_zero(r);
    ep_set(p, 0, elem_one(r));
    return p;
}

inline Json ep_to_json(const EquivariantPoly& p) {
    Json arr = Json::array();
    for (auto& [k, e] : p.coeffs) arr.push_back(Json::array({k, elem_to_json(e)}));
    return Json{{"coeffs", arr}};
}

inline EquivariantPoly ep_from_json(const RingPtr& r, const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        fail("BadSchema", "equivariant polynomial wants {\"coeffs\":[[power,element],...]}");
    EquivariantPoly p = ep_zero(r);
    for (auto& pair : j["coeffs"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
            fail("BadSchema", "coefficient entries are [power, element] pairs");
        int k = pair[0].get<int>();
        if (k < 0) fail("BadSchema", "negative x-power");
        ep_set(p, k, ep_coeff(p, k) + elem_from_json(r, pair[1]));
    }
    return p;
}

inline std::string ep_to_text(const EquivariantPoly& p) {
    if (p.coeffs.empty()) return "0";
    std::string out;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        if (!out.empty()) out += " + ";
        std::string c = elem_to_text(it->second);
        if (it->first == 0) {
            out += c;
            continue;
        }
        std::string xs = it->first == 1 ? "x" : "x^" + std::to_string(it->first);
        if (c == "1") {
            out += xs;
        } else {
            bool wrap = it->second.terms.size() > 1;
            out += (wrap ? "(" + c + ")" : c) + "*" + xs;
        }
    }
    return out;
}

// ---- Equivariant Euler and Chern classes ------------------------------------

// x^a + c_1 x^{a-1} + ... + c_a for a bundle twisted fiberwise by weight one.
inline EquivariantPoly equivariant_euler(int a, const ComplexBundleClass& V) {
    validate_complex_bundle(V);
    int nonzero = 0;
    for (size_t i = 0; i < V.chern.size(); ++i)
        if (!V.chern[i].is_zero()) nonzero = int(i + 1);
    if (a < 0 || a < nonzero)
        fail("RankTooSmall", "rank " + std::to_string(a) + " cannot carry c" +
                                 std::to_string(nonzero));
    EquivariantPoly e = ep_zero(V.ring);
    ep_set(e, a, elem_one(V.ring));
    for (int j = 1; j <= a; ++j) ep_set(e, a - j, bundle_c(V, j));
    return e;
}

// j-th equivariant Chern class of a weight-one twist of a virtual bundle with
// dual-description rank aprime: sum over l of binom(aprime-l, j-l) s_l x^{j-l},
// with s_l treated as zero for l > aprime so every binomial has a non-negative
// upper index.
inline EquivariantPoly equivariant_chern(const RingPtr& ring, int aprime,
                                         const std::vector<Element>& segre_D, int j) {
    if (aprime < 0) fail("NegativeRank", "rank parameter must be >= 0");
    if (j < 0) fail("BadRange", "class index must be >= 0");
    EquivariantPoly out = ep_zero(ring);
    for (int l = 0; l <= j && l <= aprime; ++l) {
        Element s = list_at(ring, segre_D, l);
        detail::require_class_degree(ring, s, 2 * l, "s" + std::to_string(l));
        Rat b(binom_int(Int(aprime - l), Int(j - l)));
        ep_set(out, j - l, ep_coeff(out, j - l) + s * b);
    }
    return out;
}

// ---- Projective-bundle pushforward ------------------------------------------

// Pushforward of x^j along the sphere/projective bundle of a rank-a bundle,
// acting on the canonical rank-one module generator: zero below x^{a-1}, then
// the Segre classes in order.
inline Element projective_pushforward(const RingPtr& ring, int a,
                                      const std::vector<Element>& segre_V, int j) {
    if (a < 1) fail("BadRange", "bundle rank must be >= 1");
    if (j < 0) fail("BadRange", "x-power must be >= 0");
    if (j < a - 1) return elem_zero(ring);
    return list_at(ring, segre_V, j - (a - 1));
}

// Independent route to the same number: adjoin x with the defining relation
// x^a = -(c_1 x^{a-1} + ... + c_a), reduce x^j to normal form, and read off
// the coefficient of x^{a-1}.
inline Element pushforward_rewrite_oracle(const RingPtr& ring, int a,
                                          const std::vector<Element>& chern_V, int j) {
    if (a < 1) fail("BadRange", "bundle rank must be >= 1");
    if (j < 0) fail("BadRange", "x-power must be >= 0");
    if (int(chern_V.size()) > a) fail("RankTooSmall", "more Chern classes than the rank");
    const int n = ring->gen_count();

    RingPresentation p;
    p.coeff = ring->coeff;
    p.gens = ring->gens;
    p.gens.push_back({"@x", 2});
    for (auto& r : ring->rules) {
        RewriteRule rr;
        rr.gen = r.gen;
        rr.power = r.power;
        for (auto& [m, c] : r.rhs) {
            Mono me = m;
            me.push_back(0);
            rr.rhs[me] = c;
        }
        p.rules.push_back(rr);
    }
    RewriteRule grothendieck;
    grothendieck.gen = n;
    grothendieck.power = a;
    for (int i = 1; i <= a; ++i) {
        const Element& ci = list_at(ring, chern_V, i - 1);
        detail::require_class_degree(ring, ci, 2 * i, "c" + std::to_string(i));
        for (auto& [m, c] : ci.terms) {
            Mono me = m;
            me.push_back(a - i);
            grothendieck.rhs[me] -= c; // map default-constructs missing entries to 0
        }
    }
    p.rules.push_back(grothendieck);
    p.trunc = ring->trunc + 2 * (a - 1);
    RingPtr ext = ring_new(p);

    Mono xj(size_t(n + 1), 0);
    xj[size_t(n)] = j;
    Element reduced = elem_from_terms(ext, TermMap{{xj, Rat(1)}});

    TermMap picked;
    for (auto& [m, c] : reduced.terms) {
        if (m[size_t(n)] != a - 1) continue;
        Mono base(m.begin(), m.end() - 1);
        picked[base] = c;
    }
    return elem_from_terms(ring, std::move(picked));
}

// ---- Newton power sums and multiplicative sequences --------------------------

// Power sums p_1..p_kmax of the formal roots from elementary symmetric data
// e[0]=e_1, e[1]=e_2, ... (entries beyond the list are zero).
inline std::vector<Element> newton_power_sums(const RingPtr& ring,
                                              const std::vector<Element>& e, int kmax) {
    auto ei = [&](int i) { return list_at(ring, e, i - 1); };
    std::vector<Element> p; // p[k-1] = p_k
    for (int k = 1; k <= kmax; ++k) {
        Element pk = ei(k) * Rat(k % 2 ? 1 : -1) * Rat(k);
        for (int i = 1; i < k; ++i) pk = pk + ei(i) * p[size_t(k - i - 1)] * Rat(i % 2 ? 1 : -1);
        p.push_back(pk);
    }
    return p;
}

// exp(sum_k log_coeffs[k] * p_k): the multiplicative sequence with one-variable
// series f, evaluated on roots with the given power sums. log_coeffs must be
// the log of f, so f(0) = 1 and no rank term is needed.
inline Element multiplicative_sequence(const RingPtr& ring, const RationalSeries& log_coeffs,
                                       const std::vector<Element>& power_sums) {
    if (ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    Element acc = elem_zero(ring);
    for (int k = 1; k <= int(power_sums.size()); ++k)
        acc = acc + power_sums[size_t(k - 1)] * log_coeffs.coeff(k);
    return series_exp(acc);
}

// x / (1 - e^{-x}) as a rational series.
inline RationalSeries todd_series(int trunc) {
    std::vector<Rat> v; // (1 - e^{-x}) / x
    for (int k = 0; k <= trunc; ++k) v.push_back(Rat(k % 2 ? -1 : 1, factorial(k + 1)));
    return series_invert(rs_make(0, trunc, std::move(v)));
}

// (sqrt z / 2) / sinh(sqrt z / 2) as a series in z (z = square of a root).
inline RationalSeries ahat_series(int trunc) {
    std::vector<Rat> v; // sinh(x/2) / (x/2), collected in z = x^2
    for (int k = 0; k <= trunc; ++k) v.push_back(Rat(1, ipow(4, k) * factorial(2 * k + 1)));
    return series_invert(rs_make(0, trunc, std::move(v)));
}

// ---- Chern character, Todd class, A-hat class -------------------------------

inline Element chern_character(const ComplexBundleClass& V) {
    if (V.ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    validate_complex_bundle(V);
    int kmax = V.ring->trunc / 2;
    std::vector<Element> p = newton_power_sums(V.ring, V.chern, kmax);
    Element ch = elem_const(V.ring, V.rank);
    for (int k = 1; k <= kmax; ++k) ch = ch + p[size_t(k - 1)] * Rat(1, factorial(k));
    return ch;
}

inline Element todd_class(const ComplexBundleClass& V) {
    if (V.ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    validate_complex_bundle(V);
    int kmax = V.ring->trunc / 2;
    RationalSeries lg = rs_log(todd_series(kmax));
    return multiplicative_sequence(V.ring, lg, newton_power_sums(V.ring, V.chern, kmax));
}

inline Element ahat_class(const RealBundleClass& W) {
    if (W.ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    if (!W.pontryagin) fail("MissingPontryagin", "A-hat needs Pontryagin classes");
    for (size_t i = 0; i < W.pontryagin->size(); ++i)
        detail::require_class_degree(W.ring, (*W.pontryagin)[i], 4 * int(i + 1),
                                     "p" + std::to_string(i + 1));
    int kmax = W.ring->trunc / 4;
    RationalSeries lg = rs_log(ahat_series(kmax));
    return multiplicative_sequence(W.ring, lg, newton_power_sums(W.ring, *W.pontryagin, kmax));
}

// Coefficients Td_j of x^j in the Todd series evaluated on roots shifted by x:
// log Td = sum_k lambda_k (rank * x^k + sum_{i>=1} binom(k,i) x^{k-i} p_i).
inline std::vector<Element> equivariant_todd(const ComplexBundleClass& V, int max_j) {
    if (V.ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    if (max_j < 0) fail("BadRange", "max_j must be >= 0");
    validate_complex_bundle(V);
    const RingPtr& ring = V.ring;
    int pmax = ring->trunc / 2;
    int kmax = max_j + pmax;
    RationalSeries lambda = rs_log(todd_series(kmax));
    std::vector<Element> p = newton_power_sums(ring, V.chern, pmax);

    FormalSeries logtd = fs_zero(ring, 'x', max_j);
    for (int k = 1; k <= kmax; ++k) {
        Rat lk = lambda.coeff(k);
        if (lk == 0) continue;
        if (k <= max_j) fs_set(logtd, k, logtd.coeff(k) + elem_const(ring, lk * Rat(V.rank)));
        for (int i = 1; i <= pmax && i <= k; ++i) {
            if (k - i > max_j) continue;
            Rat w = lk * Rat(binom_int(Int(k), Int(i)));
            fs_set(logtd, k - i, logtd.coeff(k - i) + p[size_t(i - 1)] * w);
        }
    }
    FormalSeries td = series_exp(logtd);
    std::vector<Element> out;
    for (int j = 0; j <= max_j; ++j) out.push_back(td.coeff(j));
    return out;
}

// ---- Conversions between mu-classes and SW-classes ---------------------------

namespace detail {

// Entries of a class family f_m must be homogeneous with degrees in a common
// arithmetic progression deg f_m = base + 2m.
inline void require_family_degrees(const RingPtr& ring, const std::vector<Element>& f,
                                   const std::string& what) {
    bool have_base = false;
    int base = 0;
    for (size_t m = 0; m < f.size(); ++m) {
        if (f[m].ring != ring) fail("RingMismatch", what + " entries live in different rings");
        if (f[m].is_zero()) continue;
        int d = max_degree(f[m]);
        if (!is_homogeneous_of(f[m], d))
            fail("DegreeMismatch", what + "[" + std::to_string(m) + "] is not homogeneous");
        int b = d - 2 * int(m);
        if (have_base && b != base)
            fail("DegreeMismatch", what + " degrees do not step by two");
        base = b;
        have_base = true;
    }
}

} // namespace detail

// SW_m = sum_l mu_{m-l} s_l: Cauchy product against the total Segre list.
inline std::vector<Element> mu_to_sw(const std::vector<Element>& mu,
                                     const std::vector<Element>& segre_V) {
    if (mu.empty()) return {};
    const RingPtr& ring = mu.front().ring;
    detail::require_family_degrees(ring, mu, "mu");
    for (size_t l = 0; l < segre_V.size(); ++l)
        detail::require_class_degree(ring, segre_V[l], 2 * int(l), "s" + std::to_string(l));
    size_t n = mu.size() + (segre_V.empty() ? 1 : segre_V.size()) - 1;
    std::vector<Element> sw(n, elem_zero(ring));
    for (size_t j = 0; j < mu.size(); ++j)
        for (size_t l = 0; l < segre_V.size(); ++l) sw[j + l] = sw[j + l] + mu[j] * segre_V[l];
    return sw;
}

// mu_m = sum_l SW_{m-l} c_l: the inverse Cauchy product, using the Chern list.
inline std::vector<Element> sw_to_mu(const std::vector<Element>& sw,
                                     const std::vector<Element>& chern_V) {
    if (sw.empty()) return {};
    const RingPtr& ring = sw.front().ring;
    detail::require_family_degrees(ring, sw, "sw");
    for (size_t l = 0; l < chern_V.size(); ++l)
        detail::require_class_degree(ring, chern_V[l], 2 * int(l), "c" + std::to_string(l));
    size_t n = sw.size() + (chern_V.empty() ? 1 : chern_V.size()) - 1;
    std::vector<Element> mu(n, elem_zero(ring));
    for (size_t j = 0; j < sw.size(); ++j)
        for (size_t l = 0; l < chern_V.size(); ++l) mu[j + l] = mu[j + l] + sw[j] * chern_V[l];
    return mu;
}

// ---- JSON ---------------------------------------------------------------------

inline Json complex_bundle_to_json(const ComplexBundleClass& V) {
    Json arr = Json::array();
    for (auto& c : V.chern) arr.push_back(elem_to_json(c));
    return Json{{"rank", V.rank}, {"chern", arr}};
}

inline ComplexBundleClass complex_bundle_from_json(const RingPtr& ring, const Json& j) {
    if (!j.is_object() || !j.contains("rank") || !j["rank"].is_number_integer())
        fail("BadSchema", "complex bundle wants {\"rank\":n,\"chern\":[...]}");
    ComplexBundleClass V{ring, j["rank"].get<int>(), {}};
    if (j.contains("chern")) {
        if (!j["chern"].is_array()) fail("BadSchema", "\"chern\" must be an array");
        for (auto& c : j["chern"]) V.chern.push_back(elem_from_json(ring, c));
    }
    validate_complex_bundle(V);
    return V;
}

inline Json real_bundle_to_json(const RealBundleClass& W) {
    Json out{{"rank", W.rank}};
    Json arr = Json::array();
    for (auto& w : W.sw) arr.push_back(elem_to_json(w));
    out["sw"] = arr;
    if (W.pontryagin) {
        Json pj = Json::array();
        for (auto& p : *W.pontryagin) pj.push_back(elem_to_json(p));
        out["pontryagin"] = pj;
    }
    if (W.kappa) out["kappa"] = elem_to_json(*W.kappa);
    return out;
}

inline RealBundleClass real_bundle_from_json(const RingPtr& ring, const Json& j) {
    if (!j.is_object() || !j.contains("rank") || !j["rank"].is_number_integer())
        fail("BadSchema", "real bundle wants {\"rank\":n,\"sw\":[...],...}");
    RealBundleClass W{ring, j["rank"].get<int>(), {}, std::nullopt, std::nullopt};
    if (j.contains("sw")) {
        if (!j["sw"].is_array()) fail("BadSchema", "\"sw\" must be an array");
        for (auto& w : j["sw"]) W.sw.push_back(elem_from_json(ring, w));
    }
    if (j.contains("pontryagin")) {
        if (!j["pontryagin"].is_array()) fail("BadSchema", "\"pontryagin\" must be an array");
        std::vector<Element> p;
        for (auto& e : j["pontryagin"]) p.push_back(elem_from_json(ring, e));
        W.pontryagin = std::move(p);
    }
    if (j.contains("kappa")) W.kappa = elem_from_json(ring, j["kappa"]);
    validate_real_bundle(W);
    return W;
}

} // namespace ccalc
