#pragma once
// Chamber-difference computations: the families wall-crossing formula, the
// sphere-bundle obstruction algebra (rank-two module over the base with basis
// {1, tau}), and the unparametrised b+=1 wall crossing over the Jacobian
// torus, with an independent expansion oracle.

#include <bit>
#include <map>
#include <string>
#include <vector>

#include "ccalc/charclass.hpp"
#include "ccalc/gring.hpp"

namespace ccalc {

// ---- Families wall-crossing formula -------------------------------------------

// Chamber difference of SW_m: zero below the threshold, then the obstruction
// class times the Segre classes in order.
inline Element wall_difference(int m, int d, const Element& obs,
                               const std::vector<Element>& segre_D) {
    if (m < 0) fail("BadRange", "SW index must be >= 0");
    if (m < d - 1) return elem_zero(obs.ring);
    return obs * list_at(obs.ring, segre_D, m - (d - 1));
}

// ---- Sphere-bundle obstruction algebra ------------------------------------------

struct SBContext {
    RingPtr ring;
    int b_plus = 1;
    Element e_phi, e_psi, lambda; // all of degree b_plus - 1
};

inline void validate_sb_context(const SBContext& c) {
    if (c.b_plus < 1) fail("BadSchema", "b_plus must be a positive integer");
    detail::require_class_degree(c.ring, c.e_phi, c.b_plus - 1, "e_phi");
    detail::require_class_degree(c.ring, c.e_psi, c.b_plus - 1, "e_psi");
    detail::require_class_degree(c.ring, c.lambda, c.b_plus - 1, "lambda");
}

inline bool sb_context_eq(const SBContext& a, const SBContext& b) {
    return a.ring == b.ring && a.b_plus == b.b_plus && a.e_phi == b.e_phi &&
           a.e_psi == b.e_psi && a.lambda == b.lambda;
}

// alpha + beta * tau, coefficients written on the left.
struct SphereBundleElement {
    SBContext ctx;
    Element alpha, beta;
};

inline SphereBundleElement sb_make(const SBContext& ctx, const Element& alpha,
                                   const Element& beta) {
    if (alpha.ring != ctx.ring || beta.ring != ctx.ring)
        fail("RingMismatch", "components must live in the context ring");
    return {ctx, alpha, beta};
}

inline SphereBundleElement sb_base(const SBContext& ctx, const Element& e) {
    return sb_make(ctx, e, elem_zero(ctx.ring));
}

inline SphereBundleElement sb_tau(const SBContext& ctx) {
    return sb_make(ctx, elem_zero(ctx.ring), elem_one(ctx.ring));
}

// phi_*(1) = tau + e_phi; psi_*(1) rewritten in the tau basis via
// tau_psi = tau - lambda.
inline SphereBundleElement sb_phi_push(const SBContext& ctx) {
    return sb_make(ctx, ctx.e_phi, elem_one(ctx.ring));
}
inline SphereBundleElement sb_psi_push(const SBContext& ctx) {
    return sb_make(ctx, ctx.e_psi - ctx.lambda, elem_one(ctx.ring));
}

inline void require_same_context(const SphereBundleElement& a, const SphereBundleElement& b) {
    if (!sb_context_eq(a.ctx, b.ctx)) fail("ContextMismatch", "sphere-bundle contexts differ");
}

inline SphereBundleElement sb_add(const SphereBundleElement& a, const SphereBundleElement& b) {
    require_same_context(a, b);
    return {a.ctx, a.alpha + b.alpha, a.beta + b.beta};
}

namespace detail {

// Sign collected when a base class of degree k moves past tau (degree b+-1):
// multiply the degree-k part by (-1)^{(b+-1)k}.
inline Element sgn_tau(const SBContext& ctx, const Element& e) {
    if (ctx.b_plus % 2 == 1) return e; // tau has even degree
    Element out = elem_zero(ctx.ring);
    for (int k = 0; k <= ctx.ring->trunc; ++k)
        out = out + graded_part(e, k) * Rat(k % 2 ? -1 : 1);
    return out;
}

} // namespace detail

// Module multiplication with tau^2 = (-1)^{b+} e_phi tau.
inline SphereBundleElement sb_mul(const SphereBundleElement& u, const SphereBundleElement& v) {
    require_same_context(u, v);
    const SBContext& c = u.ctx;
    Rat tausq(c.b_plus % 2 ? -1 : 1);
    Element alpha = u.alpha * v.alpha;
    Element beta = u.alpha * v.beta + u.beta * detail::sgn_tau(c, v.alpha) +
                   u.beta * detail::sgn_tau(c, v.beta) * tausq * c.e_phi;
    return {c, alpha, beta};
}

// Gysin pushforward to the base: pi_*(tau) = 1 and pi_* pi^* = 0.
inline Element sb_pushforward(const SphereBundleElement& u) { return u.beta; }

// Pushforward along the fiberwise antipodal map: base classes pick up the
// fiber degree (-1)^{b+}, while tau maps to tau + e_phi.
inline SphereBundleElement sb_antipodal(const SphereBundleElement& u) {
    Rat s(u.ctx.b_plus % 2 ? -1 : 1);
    return {u.ctx, u.alpha * s + u.beta * u.ctx.e_phi, u.beta};
}

// Obs(phi,psi) = pi_*( phi_*(1) * (-psi)_*(1) ), evaluated symbolically in the
// tau basis; equals lambda + e_phi - e_psi.
inline Element obs_from_algebra(const SBContext& ctx) {
    validate_sb_context(ctx);
    return sb_pushforward(sb_mul(sb_phi_push(ctx), sb_antipodal(sb_psi_push(ctx))));
}

struct ParityCheck {
    std::string claim;
    Element residual;
};

struct ParityReport {
    int b_plus = 0;
    std::vector<ParityCheck> checks;
    bool pass() const {
        for (auto& c : checks)
            if (!c.residual.is_zero()) return false;
        return true;
    }
};

// Consistency constraints on (e_phi, e_psi, lambda) by the parity of b+.
inline ParityReport parity_check(const SBContext& ctx) {
    validate_sb_context(ctx);
    Element obs = obs_from_algebra(ctx);
    ParityReport rep{ctx.b_plus, {}};
    if (ctx.b_plus % 2 == 0) {
        rep.checks.push_back({"e_phi - e_psi = 0", ctx.e_phi - ctx.e_psi});
        rep.checks.push_back({"Obs = lambda", obs - ctx.lambda});
    } else {
        rep.checks.push_back(
            {"2*lambda + e_phi - e_psi = 0", ctx.lambda * Rat(2) + ctx.e_phi - ctx.e_psi});
        rep.checks.push_back(
            {"2*Obs = e_phi - e_psi", obs * Rat(2) - (ctx.e_phi - ctx.e_psi)});
    }
    return rep;
}

// For trivialised H+ with fiber generator pulled back through each section:
// Obs = (-1)^{b+-1} (phi^*(nu) - psi^*(nu)).
inline Element obs_trivialized(int b_plus, const Element& phi_pull, const Element& psi_pull) {
    if (b_plus < 1) fail("BadSchema", "b_plus must be a positive integer");
    detail::require_class_degree(phi_pull.ring, phi_pull, b_plus - 1, "phi pullback");
    detail::require_class_degree(phi_pull.ring, psi_pull, b_plus - 1, "psi pullback");
    return (phi_pull - psi_pull) * Rat(b_plus % 2 ? 1 : -1);
}

// ---- Unparametrised wall crossing over the Jacobian torus -------------------------

struct TorusWallInput {
    int b1 = 0;
    int d = 0;
    std::vector<std::vector<long long>> M; // M[i][j] = triple product of c, y_i, y_j
};

inline void validate_torus_input(const TorusWallInput& in) {
    if (in.b1 <= 0 || in.b1 % 2 != 0)
        fail("OddB1", "b1 must be a positive even integer, got " + std::to_string(in.b1));
    if (in.b1 > 30) fail("BadRange", "b1 larger than 30 is not supported");
    if (int(in.M.size()) != in.b1) fail("NonAntisymmetricM", "M must be b1 x b1");
    for (int i = 0; i < in.b1; ++i) {
        if (int(in.M[i].size()) != in.b1) fail("NonAntisymmetricM", "M must be b1 x b1");
        for (int j = 0; j < in.b1; ++j)
            if (in.M[i][j] != -in.M[j][i])
                fail("NonAntisymmetricM", "M[" + std::to_string(i) + "][" + std::to_string(j) +
                                              "] != -M[" + std::to_string(j) + "][" +
                                              std::to_string(i) + "]");
    }
}

// Rational exterior algebra on x_1..x_b1 with top monomial x_1...x_b1
// (orientation: its integral over the torus is +1, in presentation order).
inline RingPtr torus_ring_q(int b1) {
    RingPresentation p;
    p.coeff = Coeff::Q;
    for (int i = 1; i <= b1; ++i) p.gens.push_back({"x" + std::to_string(i), 1});
    p.trunc = b1;
    return ring_new(p);
}

// The bigraded algebra from the 4-manifold side: monomials c^a vol^b y_S with
// torus-ring coefficients, cut down by X-degree > 4 and by the vanishing of
// any product of four distinct y's.
struct XMono {
    int c = 0, vol = 0;
    unsigned mask = 0;
    auto operator<=>(const XMono&) const = default;
};

struct XClass {
    RingPtr ring; // torus coefficients
    std::map<XMono, Element> terms;
};

inline int xc_degree(const XMono& m) { return 2 * m.c + 4 * m.vol + std::popcount(m.mask); }

inline XClass xc_zero(const RingPtr& r) { return XClass{r, {}}; }

inline void xc_set(XClass& x, const XMono& m, const Element& e) {
    if (e.is_zero() || xc_degree(m) > 4 || std::popcount(m.mask) >= 4)
        x.terms.erase(m);
    else
        x.terms[m] = e;
}

inline void xc_accum(XClass& x, const XMono& m, const Element& e) {
    if (xc_degree(m) > 4 || std::popcount(m.mask) >= 4) return;
    auto it = x.terms.find(m);
    Element sum = it == x.terms.end() ? e : it->second + e;
    if (sum.is_zero())
        x.terms.erase(m);
    else
        x.terms[m] = sum;
}

inline XClass xc_one(const RingPtr& r) {
    XClass x = xc_zero(r);
    xc_set(x, XMono{}, elem_one(r));
    return x;
}

inline XClass xc_add(const XClass& a, const XClass& b) {
    XClass out = a;
    for (auto& [m, e] : b.terms) xc_accum(out, m, e);
    return out;
}

inline XClass xc_scale(const XClass& a, const Rat& s) {
    XClass out = xc_zero(a.ring);
    for (auto& [m, e] : a.terms) xc_set(out, m, e * s);
    return out;
}

namespace detail {

// Flip the sign of the odd-degree graded parts.
inline Element parity_twist(const Element& e) {
    Element out = elem_zero(e.ring);
    for (int k = 0; k <= e.ring->trunc; ++k)
        out = out + graded_part(e, k) * Rat(k % 2 ? -1 : 1);
    return out;
}

// Sign of sorting the concatenation of two disjoint ascending index sets.
inline int merge_sign(unsigned a, unsigned b) {
    int inversions = 0;
    for (unsigned bb = b; bb; bb &= bb - 1) {
        unsigned bit = bb & ~(bb - 1);
        inversions += std::popcount(a & ~(bit | (bit - 1)));
    }
    return inversions % 2 ? -1 : 1;
}

} // namespace detail

inline XClass xc_mul(const XClass& a, const XClass& b) {
    if (a.ring != b.ring) fail("RingMismatch", "different coefficient rings");
    XClass out = xc_zero(a.ring);
    for (auto& [m1, e1] : a.terms)
        for (auto& [m2, e2] : b.terms) {
            if (m1.mask & m2.mask) continue; // repeated y vanishes
            XMono m{m1.c + m2.c, m1.vol + m2.vol, m1.mask | m2.mask};
            if (xc_degree(m) > 4 || std::popcount(m.mask) >= 4) continue;
            // move e2 (torus classes) past the y's of m1, then sort the y's
            Element coeff = e1 * (std::popcount(m1.mask) % 2 ? detail::parity_twist(e2) : e2);
            int sign = detail::merge_sign(m1.mask, m2.mask);
            xc_accum(out, m, sign < 0 ? -coeff : coeff);
        }
    return out;
}

inline XClass xc_exp(const XClass& a) {
    XClass acc = xc_one(a.ring);
    XClass term = xc_one(a.ring);
    for (int k = 1; k <= 4 + a.ring->trunc + 1; ++k) {
        term = xc_scale(xc_mul(term, a), Rat(1, k));
        if (term.terms.empty()) break;
        acc = xc_add(acc, term);
    }
    return acc;
}

// Omega = sum_i x_i y_i, the universal degree-2 class of the torus family.
inline XClass torus_omega(const RingPtr& ring, int b1) {
    XClass w = xc_zero(ring);
    for (int i = 0; i < b1; ++i)
        xc_set(w, XMono{0, 0, 1u << i}, elem_gen(ring, i));
    return w;
}

// Integration over the 4-manifold: picks the X-degree-4 part, with
// c^2 -> sigma + 8d, vol -> 1, c y_i y_j -> M[i][j], and four distinct
// y's already killed by the algebra.
inline Element integrate_X(const XClass& x, const TorusWallInput& in, const Rat& sigma) {
    Element out = elem_zero(x.ring);
    for (auto& [m, e] : x.terms) {
        if (xc_degree(m) != 4) continue;
        if (m.c == 2 && m.vol == 0 && m.mask == 0) {
            out = out + e * (sigma + Rat(8) * Rat(in.d));
        } else if (m.c == 0 && m.vol == 1 && m.mask == 0) {
            out = out + e;
        } else if (m.c == 1 && m.vol == 0 && std::popcount(m.mask) == 2) {
            int i = std::countr_zero(m.mask);
            int j = std::countr_zero(m.mask & (m.mask - 1));
            out = out + e * Rat(in.M[size_t(i)][size_t(j)]);
        }
    }
    return out;
}

// (c/2) (Omega^2 / 2): integrating it over X yields alpha.
inline XClass c_omega2_quarter(const RingPtr& ring, int b1) {
    XClass omega = torus_omega(ring, b1);
    XClass c = xc_zero(ring);
    xc_set(c, XMono{1, 0, 0}, elem_one(ring));
    return xc_scale(xc_mul(c, xc_mul(omega, omega)), Rat(1, 4));
}

inline Element torus_alpha(const RingPtr& ring, const TorusWallInput& in) {
    return integrate_X(c_omega2_quarter(ring, in.b1), in, 0);
}

// e^{c/2 + Omega} (1 - sigma/8 vol): reusable across inputs sharing b1.
inline XClass torus_expansion(const RingPtr& ring, int b1, const Rat& sigma) {
    XClass arg = torus_omega(ring, b1);
    xc_accum(arg, XMono{1, 0, 0}, elem_const(ring, Rat(1, 2)));
    XClass factor = xc_one(ring);
    xc_set(factor, XMono{0, 1, 0}, elem_const(ring, -sigma / 8));
    return xc_mul(xc_exp(arg), factor);
}

// Total Segre class of a virtual bundle from its Chern character:
// s = exp( sum_n (-1)^n p_n / n ) with p_n = n! ch_n.
inline Element segre_from_character(const Element& ch) {
    if (ch.ring->coeff != Coeff::Q) fail("NonRationalRing", "needs rational coefficients");
    Element acc = elem_zero(ch.ring);
    for (int n = 1; 2 * n <= ch.ring->trunc; ++n)
        acc = acc + graded_part(ch, 2 * n) * Rat((n % 2 ? -1 : 1) * factorial(n), n);
    return series_exp(acc);
}

struct TorusWallResult {
    RingPtr ring;
    Element alpha;
    Rat jump;
};

// Main route: alpha from the bigraded algebra, then the jump as the torus
// integral of (-alpha)^{b1/2} / (b1/2)!.
inline TorusWallResult unparam_wall_crossing(const RingPtr& ring, const TorusWallInput& in) {
    validate_torus_input(in);
    Element alpha = torus_alpha(ring, in);
    int p = in.b1 / 2;
    Rat jump = top_coefficient(elem_pow(-alpha, p)) / Rat(factorial(p));
    return {ring, alpha, jump};
}

inline TorusWallResult unparam_wall_crossing(const TorusWallInput& in) {
    validate_torus_input(in);
    return unparam_wall_crossing(torus_ring_q(in.b1), in);
}

// Character from the full expansion, checked at two signature values (the
// signature must cancel against the volume correction).
inline Element character_from_expansions(const XClass& at0, const XClass& at8,
                                         const TorusWallInput& in) {
    Element ch0 = integrate_X(at0, in, 0);
    Element ch8 = integrate_X(at8, in, 8);
    if (!(ch0 == ch8))
        fail("RouteDisagreement", "character depends on the signature; expansion is wrong");
    return ch0;
}

inline Element chern_character_D_torus(const RingPtr& ring, const TorusWallInput& in) {
    validate_torus_input(in);
    return character_from_expansions(torus_expansion(ring, in.b1, 0),
                                     torus_expansion(ring, in.b1, 8), in);
}

inline Element chern_character_D_torus(const TorusWallInput& in) {
    validate_torus_input(in);
    return chern_character_D_torus(torus_ring_q(in.b1), in);
}

// Oracle route for the jump: full expansion -> character -> general Segre
// class -> top-degree integral. No use of the alpha shortcut.
inline Rat oracle_jump_from_expansions(const XClass& at0, const XClass& at8,
                                       const TorusWallInput& in) {
    Element ch = character_from_expansions(at0, at8, in);
    Element s = segre_from_character(ch);
    return top_coefficient(graded_part(s, in.b1));
}

inline Rat unparam_wall_crossing_oracle(const RingPtr& ring, const TorusWallInput& in) {
    validate_torus_input(in);
    return oracle_jump_from_expansions(torus_expansion(ring, in.b1, 0),
                                       torus_expansion(ring, in.b1, 8), in);
}

inline Rat unparam_wall_crossing_oracle(const TorusWallInput& in) {
    validate_torus_input(in);
    return unparam_wall_crossing_oracle(torus_ring_q(in.b1), in);
}

// ---- JSON -----------------------------------------------------------------------

inline Json torus_input_to_json(const TorusWallInput& in) {
    Json m = Json::array();
    for (auto& row : in.M) {
        Json r = Json::array();
        for (auto v : row) r.push_back(v);
        m.push_back(r);
    }
    return Json{{"b1", in.b1}, {"d", in.d}, {"M", m}};
}

inline TorusWallInput torus_input_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("b1") || !j.contains("d") || !j.contains("M"))
        fail("BadSchema", "torus input wants {\"b1\":n,\"d\":d,\"M\":[[...],...]}");
    if (!j["b1"].is_number_integer() || !j["d"].is_number_integer() || !j["M"].is_array())
        fail("BadSchema", "b1 and d must be integers, M a matrix");
    TorusWallInput in;
    in.b1 = j["b1"].get<int>();
    in.d = j["d"].get<int>();
    for (auto& row : j["M"]) {
        if (!row.is_array()) fail("BadSchema", "M rows must be arrays");
        std::vector<long long> r;
        for (auto& v : row) {
            if (!v.is_number_integer()) fail("BadSchema", "M entries must be integers");
            r.push_back(v.get<long long>());
        }
        in.M.push_back(std::move(r));
    }
    validate_torus_input(in);
    return in;
}

} // namespace ccalc
