#pragma once
// K-theoretic side of the calculus: exact rational coefficient series
// (a_{p,l}, c_{j,d}, n(d,m,p)), divisibility certificates with a difference-
// operator table, symmetric-power characters via Adams operations, the
// character of the K-theoretic SW classes, and the K-theoretic wall jump.

#include <algorithm>
#include <vector>

#include "ccalc/charclass.hpp"
#include "ccalc/steenrod.hpp"

namespace ccalc {

// ---- Coefficient series -----------------------------------------------------------

// Coefficients a_{p,l} of y^{p+l} in (log(1-y))^p.  Defined for every integer
// p: with h(y) = -log(1-y)/y (a unit series), a_{p,l} = (-1)^p [y^l] h(y)^p.
inline RationalSeries a_coeffs(int p, int count) {
    if (count < 1) fail("BadRange", "count must be >= 1");
    std::vector<Rat> hv;
    for (int k = 0; k < count; ++k) hv.push_back(Rat(1, k + 1));
    RationalSeries hp = rs_pow(rs_make(0, count - 1, std::move(hv)), p);
    Rat sign(p % 2 != 0 ? -1 : 1);
    std::vector<Rat> c;
    for (int l = 0; l < count; ++l) c.push_back(sign * hp.coeff(l));
    return rs_make(p, p + count - 1, std::move(c));
}

// Coefficient of x^j in (x / (1 - e^{-x}))^d.
inline Rat todd_coeff(int d, int j) {
    if (d < 1) fail("BadRange", "d must be >= 1");
    if (j < 0) fail("BadRange", "j must be >= 0");
    return rs_pow(todd_series(j), d).coeff(j);
}

// ---- Index numbers n(d, m, p), two routes ------------------------------------------

namespace detail {

// Closed form (-1)^p sum_l a_{p,l} binom(m + d - p - l - 1, m), with the
// series data passed in so ledgers can reuse it.  n = d - p - 1 may exceed
// the natural range when p < 0 (sphere-base variant); the formula still
// applies with Laurent coefficients.
inline Rat n_closed(const RationalSeries& a, int p, int n, int m) {
    Rat acc(0);
    for (int l = 0; l <= n; ++l)
        acc += a.coeff(p + l) * Rat(binom_int(Int(m) + Int(n - l), Int(m)));
    return acc * Rat(p % 2 != 0 ? -1 : 1);
}

// Coefficient of x^n in (x / (1 - e^{-x}))^d e^{mx}.
inline Rat n_residue(int d, int n, int m) {
    RationalSeries td = rs_pow(todd_series(n), d);
    std::vector<Rat> ev;
    for (int k = 0; k <= n; ++k) ev.push_back(Rat(ipow(m, k), factorial(k)));
    return rs_mul(td, rs_make(0, n, std::move(ev))).coeff(n);
}

} // namespace detail

inline Rat n_dmp(int d, int m, int p) {
    if (d < 1) fail("BadRange", "d must be >= 1");
    if (p < 0 || p > d - 1) fail("BadRange", "p must satisfy 0 <= p <= d-1");
    if (m < 0) fail("BadRange", "m must be >= 0");
    int n = d - p - 1;
    Rat closed = detail::n_closed(a_coeffs(p, n + 1), p, n, m);
    Rat residue = detail::n_residue(d, n, m);
    if (closed != residue)
        fail("RouteDisagreement", "closed form " + rat_str(closed) + " vs series coefficient " +
                                      rat_str(residue) + " at d=" + std::to_string(d) +
                                      ",m=" + std::to_string(m) + ",p=" + std::to_string(p));
    return closed;
}

// ---- Divisibility certificates -----------------------------------------------------

struct DivisibilityLedger {
    int d = 0, p = 0, r = 0; // r > 0: even-sphere base S^{2r}
    int p_eff = 0;           // p - r
    int n = 0;               // d - p_eff - 1
    std::vector<Int> denominators;
    Int lcm = 1;
    // rows k = 0..n+1: the forward differences Delta^k q at m = 0..n+1,
    // where q(m) is the index polynomial; the last row must vanish.
    std::vector<std::vector<Rat>> delta_table;
};

inline DivisibilityLedger divisibility_ledger(int d, int p, int r = 0) {
    if (d < 1) fail("BadRange", "d must be >= 1");
    if (p < 0 || p > d - 1) fail("BadRange", "p must satisfy 0 <= p <= d-1");
    if (r < 0) fail("BadRange", "r must be >= 0");
    DivisibilityLedger L;
    L.d = d;
    L.p = p;
    L.r = r;
    L.p_eff = p - r;
    L.n = d - L.p_eff - 1;
    RationalSeries a = a_coeffs(L.p_eff, L.n + 1);
    for (int l = 0; l <= L.n; ++l) {
        Int dv = den(a.coeff(L.p_eff + l));
        L.denominators.push_back(dv);
        L.lcm = boost::multiprecision::lcm(L.lcm, dv);
    }
    int width = L.n + 2;
    std::vector<Rat> row;
    for (int m = 0; m < width + L.n + 1; ++m)
        row.push_back(detail::n_closed(a, L.p_eff, L.n, m));
    for (int k = 0; k <= L.n + 1; ++k) {
        L.delta_table.emplace_back(row.begin(), row.begin() + width);
        std::vector<Rat> next;
        for (size_t i = 0; i + 1 < row.size(); ++i) next.push_back(row[i + 1] - row[i]);
        row = std::move(next);
    }
    return L;
}

// Value of the index polynomial recorded in the ledger's first table row, at
// arbitrary m (the table itself only shows a window).
inline Rat ledger_q(const DivisibilityLedger& L, int m) {
    return detail::n_closed(a_coeffs(L.p_eff, L.n + 1), L.p_eff, L.n, m);
}

inline Json divisibility_to_json(const DivisibilityLedger& L) {
    Json dens = Json::array();
    for (auto& v : L.denominators) dens.push_back(v.str());
    Json table = Json::array();
    for (auto& row : L.delta_table) {
        Json jr = Json::array();
        for (auto& q : row) jr.push_back(rat_str(q));
        table.push_back(jr);
    }
    return Json{{"d", L.d},           {"p", L.p},           {"r", L.r},
                {"p_eff", L.p_eff},   {"n", L.n},           {"denominators", dens},
                {"lcm", L.lcm.str()}, {"delta_table", table}};
}

// ---- K-classes through their Chern character ---------------------------------------

struct KClass {
    Element ch;
};

inline KClass kclass_make(const Element& ch) {
    if (ch.ring->coeff != Coeff::Q) fail("NonRationalRing", "K-classes need rational coefficients");
    for (int k = 1; k <= ch.ring->trunc; k += 2)
        if (!graded_part(ch, k).is_zero())
            fail("DegreeMismatch", "K-class characters live in even degrees");
    return {ch};
}

inline Rat k_rank(const KClass& w) { return constant_term(w.ch); }

// Adams operation: k^i on the degree-2i part.
inline KClass k_adams(const KClass& w, int k) {
    Element out = elem_zero(w.ch.ring);
    for (int i = 0; 2 * i <= w.ch.ring->trunc; ++i)
        out = out + graded_part(w.ch, 2 * i) * Rat(ipow(k, i));
    return {out};
}

// Dual: (-1)^i on the degree-2i part.
inline KClass k_dual(const KClass& w) {
    Element out = elem_zero(w.ch.ring);
    for (int i = 0; 2 * i <= w.ch.ring->trunc; ++i)
        out = out + graded_part(w.ch, 2 * i) * Rat(i % 2 ? -1 : 1);
    return {out};
}

// Characters of Sym^m(W) for m = 0..trunc_t, via
// sum_m Ch(Sym^m W) t^m = exp( sum_{k>=1} Ch(psi^k W) t^k / k ).
inline std::vector<KClass> sym_series(const KClass& W, int rank_W, int trunc_t) {
    const RingPtr& ring = W.ch.ring;
    if (ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    if (trunc_t < 0) fail("BadRange", "trunc_t must be >= 0");
    if (constant_term(W.ch) != Rat(rank_W))
        fail("BadSchema", "declared rank disagrees with the degree-0 character");
    FormalSeries arg = fs_zero(ring, 't', trunc_t);
    for (int k = 1; k <= trunc_t; ++k) fs_set(arg, k, k_adams(W, k).ch * Rat(1, k));
    FormalSeries e = series_exp(arg);
    std::vector<KClass> out;
    for (int m = 0; m <= trunc_t; ++m) out.push_back(KClass{e.coeff(m)});
    return out;
}

// Chern classes recovered from a total Segre list (s_0 = 1 at index 0).
inline std::vector<Element> chern_from_segre(const RingPtr& ring,
                                             const std::vector<Element>& segre_D) {
    std::vector<Element> inv = total_class_inverse(ring, segre_D);
    if (inv.empty()) return {};
    return std::vector<Element>(inv.begin() + 1, inv.end());
}

// S_m of the rank-d class with the given Segre data: Sym^m of the dual for
// m >= 0, plus (-1)^{d-1} Sym^{-m-d} tensored with the determinant line for
// m <= -d; zero in the window between.  The determinant factor is what the
// fibrewise duality hands back: with rank bookkeeping q_0 = 1 and the window
// q_{-1} = .. = q_{-(d-1)} = 0, the Koszul relation
// sum_i (-1)^i Lambda^i(W*) q_{m-i} = 0 forces q_{-d} = (-1)^{d-1} det(W),
// and the pushforward route below confirms every deeper coefficient.
inline KClass s_m_class(const RingPtr& ring, const std::vector<Element>& segre_D, int d, int m) {
    ComplexBundleClass D{ring, d, chern_from_segre(ring, segre_D)};
    KClass chD = kclass_make(chern_character(D));
    Element acc = elem_zero(ring);
    if (m >= 0) acc = acc + sym_series(k_dual(chD), d, m)[size_t(m)].ch;
    if (m <= -d) {
        int mm = -m - d;
        Element det_tw = series_exp(bundle_c(D, 1));
        acc = acc + sym_series(chD, d, mm)[size_t(mm)].ch * det_tw *
                        Rat((d - 1) % 2 != 0 ? -1 : 1);
    }
    return KClass{acc};
}

// ---- Pushforward lemma, verified two ways ------------------------------------------

struct SymPushReport {
    int a = 0, aprime = 0, m = 0, trunc = 0;
    Element lhs, rhs;
    std::vector<int> mismatched_degrees;
    bool pass() const { return mismatched_degrees.empty(); }
};

// Left: the K-pushforward of xi^m (1 - xi^{-1})^{a'} from the projectivised
// bundle, computed at character level by integrating the x-series
// e^{mx}(1-e^{-x})^{a'} Td-of-vertical-tangent against x^N -> s_{N-(a-1)}(V).
// Right: S_m(V - trivial^{a'}) from the symmetric-power branches.
inline SymPushReport verify_sym_pushforward(const RingPtr& ring, int a,
                                            const std::vector<Element>& chern_V, int aprime,
                                            int m, int trunc) {
    if (a < 2) fail("PreconditionViolated", "ambient rank must be >= 2");
    if (aprime < 0) fail("BadRange", "aprime must be >= 0");
    if (trunc < 0) fail("BadRange", "trunc must be >= 0");
    ComplexBundleClass V{ring, a, chern_V};
    std::vector<Element> seg = segre(V);
    int nmax = (a - 1) + ring->trunc / 2;

    std::vector<Element> td = equivariant_todd(V, nmax);
    std::vector<Rat> ev;
    for (int k = 0; k <= nmax; ++k) ev.push_back(Rat(ipow(m, k), factorial(k)));
    std::vector<Rat> om{Rat(0)}; // 1 - e^{-x}
    for (int k = 1; k <= nmax; ++k) om.push_back(Rat(k % 2 ? 1 : -1, factorial(k)));
    RationalSeries scalar =
        rs_mul(rs_make(0, nmax, std::move(ev)), rs_pow(rs_make(0, nmax, std::move(om)), aprime));

    Element lhs = elem_zero(ring);
    for (int N = a - 1; N <= nmax; ++N) {
        Element cN = elem_zero(ring);
        for (int j = 0; j <= std::min(N, int(td.size()) - 1); ++j)
            cN = cN + td[size_t(j)] * scalar.coeff(N - j);
        lhs = lhs + cN * projective_pushforward(ring, a, seg, N);
    }
    Element rhs = s_m_class(ring, seg, a - aprime, m).ch;

    SymPushReport rep{a, aprime, m, trunc, lhs, rhs, {}};
    for (int deg = 0; deg <= trunc; ++deg)
        if (!(graded_part(lhs, deg) == graded_part(rhs, deg)))
            rep.mismatched_degrees.push_back(deg);
    return rep;
}

// ---- Character of the K-theoretic SW classes ---------------------------------------

// e^{-kappa/2} Ahat(H+)^{-1} sum_j Td_j(D) sum_k (m^k / k!) SW_{j+k}, where
// Td_j(D) is the x^j coefficient of the shifted Todd class of D.
inline Element ch_swk(const SWLedger& L, const Element& kappa, const Element& ahat_hplus,
                      const std::vector<Element>& Td_list, int m) {
    const RingPtr& ring = L.ring;
    if (ring->coeff != Coeff::Q) fail("NonRationalRing", "needs a rational ledger");
    detail::require_class_degree(ring, kappa, 2, "kappa");
    int max_sw = -1;
    for (auto& [idx, e] : L.sw_classes) {
        (void)e;
        max_sw = std::max(max_sw, idx);
    }
    Element core = elem_zero(ring);
    for (int j = 0; j < int(Td_list.size()); ++j)
        for (int k = 0; j + k <= max_sw; ++k)
            core = core + Td_list[size_t(j)] *
                              (ledger_sw(L, j + k) * Rat(ipow(m, k), factorial(k)));
    return series_exp(kappa * Rat(-1, 2)) * elem_invert(ahat_hplus) * core;
}

// Character of the K-theoretic wall jump:
// e^{-kappa/2} Ahat(H+)^{-1} obs Ch(S_m(D)).
inline Element k_wall_difference(int m, int d, const Element& obs, const Element& kappa,
                                 const Element& ahat_hplus,
                                 const std::vector<Element>& segre_D) {
    const RingPtr& ring = obs.ring;
    if (ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    detail::require_class_degree(ring, kappa, 2, "kappa");
    Element s_m = s_m_class(ring, segre_D, d, m).ch;
    return series_exp(kappa * Rat(-1, 2)) * elem_invert(ahat_hplus) * obs * s_m;
}

} // namespace ccalc
