#pragma once
#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "expr.hpp"
#include "io.hpp"
#include "kdiv.hpp"
#include "wallcross.hpp"

namespace ccalc {

// Named end-to-end pipelines with machine-checkable reports.  Every report
// carries a "provenance" object naming the internal routes used and whether
// the cross-route checks passed, plus a top-level "ok" verdict: false means
// the pipeline ran but a sweep found counterexamples.  Disagreement between
// two routes that must match raises ScenarioFailure instead.

namespace detail {

inline void restrict_keys(const Json& params, std::initializer_list<const char*> allowed,
                          const std::string& scenario) {
    if (params.is_null()) return;
    if (!params.is_object()) fail("BadSchema", "scenario parameters must be a JSON object");
    for (auto& [key, val] : params.items()) {
        (void)val;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            fail("BadSchema", "unexpected parameter '" + key + "' for scenario " + scenario);
    }
}

inline int param_int(const Json& params, const std::string& key, int fallback) {
    if (params.is_null() || !params.contains(key)) return fallback;
    if (!params[key].is_number_integer()) fail("BadSchema", "'" + key + "' must be an integer");
    return params[key].get<int>();
}

// [lo, hi] pairs for the sweep ranges.
inline void param_span(const Json& params, const std::string& key, int& lo, int& hi) {
    if (params.is_null() || !params.contains(key)) return;
    const Json& v = params[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
        fail("BadSchema", "'" + key + "' must be [lo, hi]");
    lo = v[0].get<int>();
    hi = v[1].get<int>();
}

inline Json cross_check(const std::string& name, bool passed) {
    return Json{{"name", name}, {"passed", passed}};
}

inline Json provenance(std::vector<std::string> routes, Json checks) {
    Json r = Json::array();
    for (auto& s : routes) r.push_back(s);
    return Json{{"routes", r}, {"cross_checks", std::move(checks)}};
}

// Rethrow a two-route disagreement as a scenario failure, keeping the detail.
template <class F> auto guard_routes(F&& f) {
    try {
        return f();
    } catch (const CalcError& e) {
        if (e.code == "RouteDisagreement") fail("ScenarioFailure", e.what());
        throw;
    }
}

} // namespace detail

// Mod-2 cohomology of the two-torus: x, y in degree one with squares killed.
inline RingPtr torus_z2_ring() {
    RingPresentation p;
    p.coeff = Coeff::Z2;
    p.gens = {{"x", 1}, {"y", 1}};
    p.rules = {{0, 2, {}}, {1, 2, {}}};
    p.trunc = 2;
    return ring_new(p);
}

// The obstructed two-torus family: d=2, b+=3, trivial Segre data, odd SW_0,
// and w_2(H+) the volume class of the torus.
inline SWLedger k3_torus_ledger(const RingPtr& r) {
    SWLedger L;
    L.ring = r;
    L.d = 2;
    L.b_plus = 3;
    L.segre_D = {elem_one(r)};
    L.sw_classes[0] = elem_one(r);
    L.hplus = RealBundleClass{r, 3, {elem_zero(r), elem_gen(r, "x") * elem_gen(r, "y")},
                              std::nullopt, std::nullopt};
    validate_ledger(L);
    return L;
}

inline Json scenario_k3_torus(const Json& params) {
    detail::restrict_keys(params, {}, "k3-torus");
    RingPtr r = torus_z2_ring();
    Element direct = (elem_one(r) + elem_gen(r, "x")) *
                     (elem_one(r) + elem_gen(r, "x") + elem_gen(r, "y")) *
                     (elem_one(r) + elem_gen(r, "y"));
    Element parsed = eval_expr(r, "(1+x)*(1+x+y)*(1+y)");
    bool product_ok = parsed == direct;
    if (!product_ok) fail("ScenarioFailure", "expression route disagrees with the direct product");

    SWLedger L = k3_torus_ledger(r);
    ObstructionReport obs = w2_obstruction(L, 1);

    // The lowest realizability screen must reproduce the same discrepancy.
    Element screen = sq(L, 2, 0); // = (s_1 + w_2) SW_0 here
    bool screen_ok = screen == obs.discrepancy * ledger_sw(L, 0);
    if (!screen_ok) fail("ScenarioFailure", "Steenrod screen disagrees with the w2 comparison");

    Json checks = Json::array();
    checks.push_back(detail::cross_check("expression route equals direct product", product_ok));
    checks.push_back(detail::cross_check("Sq^2 screen matches w2 discrepancy", screen_ok));
    return Json{{"scenario", "k3-torus"},
                {"w_total", elem_to_text(direct, true)},
                {"w1", elem_to_text(graded_part(direct, 1), true)},
                {"w2", elem_to_text(graded_part(direct, 2), true)},
                {"obstructed", obs.applicable && obs.obstructed},
                {"discrepancy", elem_to_text(obs.discrepancy, true)},
                {"provenance", detail::provenance({"expression-evaluator", "direct-product",
                                                   "w2-comparison", "steenrod-screen"},
                                                  std::move(checks))},
                {"ok", true}};
}

// Shared by the point and sphere divisibility scenarios: ledger plus the
// two independent q(m) routes and the vanishing tail of the difference table.
inline Json divisibility_block(int d, int p, int r, Json& checks) {
    DivisibilityLedger L = divisibility_ledger(d, p, r);
    bool tail_zero = true;
    for (auto& v : L.delta_table.back())
        if (v != 0) tail_zero = false;
    bool q_match = true;
    for (int m = 0; m <= L.n + 3; ++m)
        if (ledger_q(L, m) != detail::n_residue(d, L.n, m)) q_match = false;
    std::string tag = "d=" + std::to_string(d) + ",p=" + std::to_string(p) +
                      (r ? ",r=" + std::to_string(r) : "");
    checks.push_back(detail::cross_check("difference table terminates (" + tag + ")", tail_zero));
    checks.push_back(detail::cross_check("closed form matches residue route (" + tag + ")", q_match));
    if (!tail_zero) fail("ScenarioFailure", "difference table fails to terminate for " + tag);
    if (!q_match) fail("ScenarioFailure", "q(m) routes disagree for " + tag);
    return divisibility_to_json(L);
}

inline Json scenario_point_divisibility(const Json& params) {
    detail::restrict_keys(params, {"d", "p"}, "point-divisibility");
    int d = detail::param_int(params, "d", 3);
    if (d < 1) fail("BadSchema", "'d' must be >= 1");
    bool single = !params.is_null() && params.contains("p");
    int p_only = detail::param_int(params, "p", 0);
    Json ledgers = Json::array();
    Json checks = Json::array();
    for (int p = single ? p_only : 0; p <= (single ? p_only : d - 1); ++p)
        ledgers.push_back(divisibility_block(d, p, 0, checks));
    return Json{{"scenario", "point-divisibility"},
                {"d", d},
                {"ledgers", std::move(ledgers)},
                {"provenance", detail::provenance({"closed-form-coefficients", "residue-extraction",
                                                   "finite-difference-certificate"},
                                                  std::move(checks))},
                {"ok", true}};
}

inline Json scenario_sphere_divisibility(const Json& params) {
    detail::restrict_keys(params, {"r", "d", "p"}, "sphere-divisibility");
    int r = detail::param_int(params, "r", 1);
    int d = detail::param_int(params, "d", 3);
    int p = detail::param_int(params, "p", 1);
    Json checks = Json::array();
    Json ledger = divisibility_block(d, p, r, checks);
    return Json{{"scenario", "sphere-divisibility"},
                {"r", r},
                {"d", d},
                {"p", p},
                {"ledger", std::move(ledger)},
                {"provenance", detail::provenance({"closed-form-coefficients", "residue-extraction",
                                                   "finite-difference-certificate"},
                                                  std::move(checks))},
                {"ok", true}};
}

inline Json scenario_b1_torus(const Json& params) {
    TorusWallInput in;
    if (params.is_null() || params.empty()) {
        in.b1 = 4;
        in.d = 1;
        in.M = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
        validate_torus_input(in);
    } else {
        detail::restrict_keys(params, {"b1", "d", "M"}, "b1-torus-wallcross");
        in = torus_input_from_json(params);
    }
    RingPtr ring = torus_ring_q(in.b1);
    TorusWallResult main = unparam_wall_crossing(ring, in);
    Rat oracle = detail::guard_routes([&] { return unparam_wall_crossing_oracle(ring, in); });
    bool jump_ok = main.jump == oracle;
    if (!jump_ok) fail("ScenarioFailure", "shortcut jump " + rat_str(main.jump) +
                                              " disagrees with the expansion oracle " +
                                              rat_str(oracle));
    Element ch = detail::guard_routes([&] { return chern_character_D_torus(ring, in); });
    bool alpha_ok = graded_part(ch, 2) == main.alpha;
    if (!alpha_ok) fail("ScenarioFailure", "degree-2 character disagrees with alpha");

    Json checks = Json::array();
    checks.push_back(detail::cross_check("shortcut jump equals expansion oracle", jump_ok));
    checks.push_back(detail::cross_check("degree-2 character equals alpha", alpha_ok));
    return Json{{"scenario", "b1-torus-wallcross"},
                {"input", torus_input_to_json(in)},
                {"alpha", elem_to_text(main.alpha)},
                {"jump", rat_str(main.jump)},
                {"oracle_jump", rat_str(oracle)},
                {"provenance", detail::provenance({"alpha-shortcut", "bigraded-expansion-two-sigma"},
                                                  std::move(checks))},
                {"ok", true}};
}

inline Json scenario_identity_sweeps(const Json& params) {
    detail::restrict_keys(params, {"vzero", "recur5", "recur3"}, "identity-sweeps");
    VerificationRange vz = VerificationRange::vzero_default();
    VerificationRange r5 = VerificationRange::recur5_default();
    VerificationRange r3 = VerificationRange::recur3_default();
    if (!params.is_null() && params.contains("vzero")) {
        const Json& q = params["vzero"];
        detail::restrict_keys(q, {"u", "j"}, "identity-sweeps.vzero");
        detail::param_span(q, "u", vz.u_lo, vz.u_hi);
        detail::param_span(q, "j", vz.j_lo, vz.j_hi);
    }
    if (!params.is_null() && params.contains("recur5")) {
        const Json& q = params["recur5"];
        detail::restrict_keys(q, {"u", "v", "j"}, "identity-sweeps.recur5");
        detail::param_span(q, "u", r5.u_lo, r5.u_hi);
        detail::param_span(q, "v", r5.v_lo, r5.v_hi);
        detail::param_span(q, "j", r5.j_lo, r5.j_hi);
    }
    if (!params.is_null() && params.contains("recur3")) {
        const Json& q = params["recur3"];
        detail::restrict_keys(q, {"k", "l", "m", "d", "aprime_margin"}, "identity-sweeps.recur3");
        detail::param_span(q, "k", r3.k_lo, r3.k_hi);
        detail::param_span(q, "l", r3.l_lo, r3.l_hi);
        detail::param_span(q, "m", r3.m_lo, r3.m_hi);
        detail::param_span(q, "d", r3.d_lo, r3.d_hi);
        r3.aprime_margin = detail::param_int(q, "aprime_margin", r3.aprime_margin);
    }

    Json identities = Json::array();
    Json checks = Json::array();
    long long total_cases = 0, total_bad = 0;
    auto add = [&](const VerificationReport& rep) {
        Json ce = Json::array();
        for (size_t i = 0; i < rep.counterexamples.size() && i < 20; ++i)
            ce.push_back(rep.counterexamples[i]);
        identities.push_back(Json{{"identity", rep.identity},
                                  {"cases", rep.cases},
                                  {"counterexamples", std::move(ce)},
                                  {"ok", rep.ok()}});
        checks.push_back(detail::cross_check(rep.identity + " sweep", rep.ok()));
        total_cases += rep.cases;
        total_bad += static_cast<long long>(rep.counterexamples.size());
    };
    add(verify_vzero(vz));
    add(verify_recur5(r5));
    add(verify_recur3(r3));
    return Json{{"scenario", "identity-sweeps"},
                {"identities", std::move(identities)},
                {"total_cases", total_cases},
                {"total_counterexamples", total_bad},
                {"provenance", detail::provenance({"term-by-term-convolution", "closed-form-binomial"},
                                                  std::move(checks))},
                {"ok", total_bad == 0}};
}

inline Json run_scenario(const std::string& name, const Json& params = Json()) {
    if (name == "k3-torus") return scenario_k3_torus(params);
    if (name == "sphere-divisibility") return scenario_sphere_divisibility(params);
    if (name == "point-divisibility") return scenario_point_divisibility(params);
    if (name == "b1-torus-wallcross") return scenario_b1_torus(params);
    if (name == "identity-sweeps") return scenario_identity_sweeps(params);
    fail("BadSchema", "unknown scenario '" + name +
                          "' (expected one of k3-torus, sphere-divisibility, point-divisibility, "
                          "b1-torus-wallcross, identity-sweeps)");
}

} // namespace ccalc
