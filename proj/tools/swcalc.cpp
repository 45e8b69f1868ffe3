#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccalc/scenarios.hpp"

using namespace ccalc;

namespace {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("BadSchema", "cannot open file: " + path);
    try {
        Json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        fail("BadSchema", "invalid JSON in " + path + ": " + e.what());
    }
}

RingPtr load_ring(const std::string& path) { return ring_from_json(load_json_file(path)); }

// Class lists on the command line name c_1 / s_1 / w_1 upward; the unit
// leading entry is implicit.
std::vector<Element> eval_list(const RingPtr& r, const std::vector<std::string>& exprs,
                               bool lead_one) {
    std::vector<Element> out;
    if (lead_one) out.push_back(elem_one(r));
    for (auto& s : exprs) out.push_back(eval_expr(r, s));
    return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// One element in the requested format.
int emit_element(const Element& e, const std::string& mode, const char* key = "value") {
    if (mode == "tsv") std::cout << elem_to_tsv(e);
    else if (mode == "text") std::cout << elem_to_text(e) << "\n";
    else print_json(Json{{key, elem_to_text(e)}, {"element", elem_to_json(e)}});
    return 0;
}

int emit_list(const std::vector<Element>& v, const std::string& mode, const char* key) {
    if (mode == "text") {
        for (size_t i = 0; i < v.size(); ++i)
            std::cout << key << "_" << i << " = " << elem_to_text(v[i]) << "\n";
    } else if (mode == "tsv") {
        for (size_t i = 0; i < v.size(); ++i) {
            std::string body = elem_to_tsv(v[i]);
            for (size_t pos = 0; pos < body.size();) {
                size_t nl = body.find('\n', pos);
                std::cout << key << "_" << i << "\t" << body.substr(pos, nl - pos) << "\n";
                pos = nl + 1;
            }
        }
    } else {
        Json arr = Json::array();
        for (auto& e : v) arr.push_back(Json{{"text", elem_to_text(e)}, {"element", elem_to_json(e)}});
        print_json(Json{{key, arr}});
    }
    return 0;
}

// "key=lo..hi" -> named span in a VerificationRange.
void apply_range(VerificationRange& r, const std::string& arg) {
    size_t eq = arg.find('=');
    size_t dots = arg.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        fail("BadSchema", "range must look like key=lo..hi, got '" + arg + "'");
    std::string key = arg.substr(0, eq);
    int lo = 0, hi = 0;
    try {
        lo = std::stoi(arg.substr(eq + 1, dots - eq - 1));
        hi = std::stoi(arg.substr(dots + 2));
    } catch (const std::exception&) {
        fail("BadSchema", "range bounds must be integers: '" + arg + "'");
    }
    if (key == "u") r.u_lo = lo, r.u_hi = hi;
    else if (key == "v") r.v_lo = lo, r.v_hi = hi;
    else if (key == "j") r.j_lo = lo, r.j_hi = hi;
    else if (key == "k") r.k_lo = lo, r.k_hi = hi;
    else if (key == "l") r.l_lo = lo, r.l_hi = hi;
    else if (key == "m") r.m_lo = lo, r.m_hi = hi;
    else if (key == "d") r.d_lo = lo, r.d_hi = hi;
    else if (key == "aprime") {
        if (lo != 0) fail("BadSchema", "a' ranges start at the per-case bound; use aprime=0..N");
        r.aprime_margin = hi;
    } else fail("BadSchema", "unknown range key '" + key + "'");
}

int emit_verification(const std::string& which, const VerificationRange& range,
                      const std::string& mode) {
    VerificationReport rep;
    RowSink sink;
    if (mode == "tsv")
        sink = [](const std::string& params, int lhs, int rhs) {
            std::cout << params << "\t" << lhs << "\t" << rhs << "\t"
                      << (lhs == rhs ? "pass" : "FAIL") << "\n";
        };
    if (which == "vzero") rep = verify_vzero(range, sink);
    else if (which == "recur5") rep = verify_recur5(range, sink);
    else rep = verify_recur3(range, sink);
    if (mode == "text") {
        std::cout << rep.identity << ": " << rep.cases << " cases, "
                  << rep.counterexamples.size() << " counterexamples\n";
        for (auto& c : rep.counterexamples) std::cout << "  " << c << "\n";
    } else if (mode != "tsv") {
        Json ce = Json::array();
        for (auto& c : rep.counterexamples) ce.push_back(c);
        print_json(Json{{"identity", rep.identity},
                        {"cases", rep.cases},
                        {"counterexamples", std::move(ce)},
                        {"ok", rep.ok()}});
    }
    return rep.ok() ? 0 : 1;
}

Json sym_push_json(const SymPushReport& rep) {
    Json mm = Json::array();
    for (int d : rep.mismatched_degrees) mm.push_back(d);
    return Json{{"a", rep.a},
                {"aprime", rep.aprime},
                {"m", rep.m},
                {"trunc", rep.trunc},
                {"lhs", elem_to_text(rep.lhs)},
                {"rhs", elem_to_text(rep.rhs)},
                {"mismatched_degrees", std::move(mm)},
                {"pass", rep.pass()}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact characteristic-class calculator for families invariants"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string ring_path, out_mode = "json", expr, ledger_path, params_path, input_path;
    std::string direction, obs_expr, kappa_expr = "0", ahat_expr = "1", kind = "a";
    std::string e_phi_expr = "0", e_psi_expr = "0", lambda_expr = "0", scenario_name;
    std::vector<std::string> chern_exprs, pont_exprs, segre_exprs, class_exprs, ref_exprs;
    std::vector<std::string> td_exprs, range_args, m_rows;
    int rank = 0, a_opt = -1, i_idx = 0, m_idx = 0, d_val = 1, p_val = 0, r_val = 0;
    int count = 8, trunc = 8, b_plus = 2, b1 = 4, aprime = 0, pow2_a = -1, pow2_pprime = 0;

    auto add_ring = [&](CLI::App* c, bool required = true) {
        auto* o = c->add_option("--ring", ring_path, "ring presentation file (JSON)");
        if (required) o->required();
    };
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", out_mode, "output format: json, tsv or text")
            ->check(CLI::IsMember({"json", "tsv", "text"}));
    };

    // ring eval
    auto* ring_cmd = app.add_subcommand("ring", "ring-level operations");
    auto* ring_eval = ring_cmd->add_subcommand("eval", "evaluate an expression to normal form");
    add_ring(ring_eval);
    add_out(ring_eval);
    ring_eval->add_option("--expr", expr, "expression over the ring generators")->required();
    ring_eval->callback([&] {
        RingPtr r = load_ring(ring_path);
        exit_code = emit_element(eval_expr(r, expr), out_mode);
    });

    // classes segre|euler|chern-char|todd|ahat
    auto* classes = app.add_subcommand("classes", "characteristic classes of bundle data");
    auto* cl_segre = classes->add_subcommand("segre", "total Segre list of a complex bundle");
    add_ring(cl_segre);
    add_out(cl_segre);
    cl_segre->add_option("--rank", rank, "bundle rank")->required();
    cl_segre->add_option("--chern", chern_exprs, "c_1, c_2, ... as expressions");
    cl_segre->callback([&] {
        RingPtr r = load_ring(ring_path);
        ComplexBundleClass V{r, rank, eval_list(r, chern_exprs, false)};
        exit_code = emit_list(segre(V), out_mode, "s");
    });

    auto* cl_euler = classes->add_subcommand("euler", "equivariant Euler polynomial");
    add_ring(cl_euler);
    add_out(cl_euler);
    cl_euler->add_option("--rank", rank, "bundle rank")->required();
    cl_euler->add_option("--a", a_opt, "equivariant rank (defaults to --rank)");
    cl_euler->add_option("--chern", chern_exprs, "c_1, c_2, ... as expressions");
    cl_euler->callback([&] {
        RingPtr r = load_ring(ring_path);
        ComplexBundleClass V{r, rank, eval_list(r, chern_exprs, false)};
        EquivariantPoly e = equivariant_euler(a_opt < 0 ? rank : a_opt, V);
        if (out_mode == "text") std::cout << ep_to_text(e) << "\n";
        else print_json(Json{{"euler", ep_to_json(e)}, {"text", ep_to_text(e)}});
    });

    auto* cl_ch = classes->add_subcommand("chern-char", "Chern character of a complex bundle");
    add_ring(cl_ch);
    add_out(cl_ch);
    cl_ch->add_option("--rank", rank, "bundle rank")->required();
    cl_ch->add_option("--chern", chern_exprs, "c_1, c_2, ... as expressions");
    cl_ch->callback([&] {
        RingPtr r = load_ring(ring_path);
        exit_code = emit_element(chern_character(ComplexBundleClass{r, rank, eval_list(r, chern_exprs, false)}),
                                 out_mode, "chern_character");
    });

    auto* cl_todd = classes->add_subcommand("todd", "Todd class, or the Todd series coefficients");
    add_ring(cl_todd, false);
    add_out(cl_todd);
    cl_todd->add_option("--rank", rank, "bundle rank (with --ring)");
    cl_todd->add_option("--chern", chern_exprs, "c_1, c_2, ... as expressions (with --ring)");
    cl_todd->add_option("--trunc", trunc, "series order in the one-variable mode");
    cl_todd->callback([&] {
        if (!ring_path.empty()) {
            RingPtr r = load_ring(ring_path);
            exit_code = emit_element(todd_class(ComplexBundleClass{r, rank, eval_list(r, chern_exprs, false)}),
                                     out_mode, "todd");
            return;
        }
        RationalSeries s = todd_series(trunc);
        Json c = Json::array();
        for (int k = 0; k <= s.trunc; ++k) c.push_back(rat_str(s.coeff(k)));
        print_json(Json{{"series", "todd"}, {"coeffs", std::move(c)}});
    });

    auto* cl_ahat = classes->add_subcommand("ahat", "A-hat class, or the A-hat series coefficients");
    add_ring(cl_ahat, false);
    add_out(cl_ahat);
    cl_ahat->add_option("--rank", rank, "real bundle rank (with --ring)");
    cl_ahat->add_option("--pontryagin", pont_exprs, "p_1, p_2, ... as expressions (with --ring)");
    cl_ahat->add_option("--trunc", trunc, "series order in the one-variable mode");
    cl_ahat->callback([&] {
        if (!ring_path.empty()) {
            RingPtr r = load_ring(ring_path);
            RealBundleClass W{r, rank, {}, eval_list(r, pont_exprs, false), std::nullopt};
            exit_code = emit_element(ahat_class(W), out_mode, "ahat");
            return;
        }
        RationalSeries s = ahat_series(trunc);
        Json c = Json::array();
        for (int k = 0; k <= s.trunc; ++k) c.push_back(rat_str(s.coeff(k)));
        print_json(Json{{"series", "ahat"}, {"coeffs", std::move(c)}});
    });

    // sw steenrod|relations|mu-convert
    auto* sw = app.add_subcommand("sw", "families invariants over a mod-2 ring");
    auto* sw_sq = sw->add_subcommand("steenrod", "Steenrod square of a ledger class");
    add_ring(sw_sq);
    add_out(sw_sq);
    sw_sq->add_option("--ledger", ledger_path, "ledger file (JSON)")->required();
    sw_sq->add_option("--i", i_idx, "square index")->required();
    sw_sq->add_option("--m", m_idx, "class index")->required();
    sw_sq->callback([&] {
        RingPtr r = load_ring(ring_path);
        SWLedger L = ledger_from_json(r, load_json_file(ledger_path));
        exit_code = emit_element(sq(L, i_idx, m_idx), out_mode, "sq");
    });

    auto* sw_rel = sw->add_subcommand("relations", "vanishing screens for a ledger");
    add_ring(sw_rel);
    add_out(sw_rel);
    sw_rel->add_option("--ledger", ledger_path, "ledger file (JSON)")->required();
    sw_rel->add_option("--pow2-a", pow2_a, "also run the power-of-two relations with p = 2^a p'");
    sw_rel->add_option("--pow2-pprime", pow2_pprime, "odd cofactor p' for --pow2-a");
    sw_rel->callback([&] {
        RingPtr r = load_ring(ring_path);
        SWLedger L = ledger_from_json(r, load_json_file(ledger_path));
        std::vector<LabeledClass> screens = realizability_relations(L);
        if (pow2_a >= 0)
            for (auto& lc : power_of_two_relations(L, pow2_a, pow2_pprime))
                screens.push_back(lc);
        bool all_zero = true;
        Json arr = Json::array();
        for (auto& lc : screens) {
            bool z = lc.value.is_zero();
            all_zero = all_zero && z;
            if (out_mode == "text")
                std::cout << (z ? "  zero  " : "NONZERO ") << lc.description << " = "
                          << elem_to_text(lc.value) << "\n";
            else
                arr.push_back(Json{{"relation", lc.description},
                                   {"value", elem_to_text(lc.value)},
                                   {"zero", z}});
        }
        if (out_mode != "text")
            print_json(Json{{"screens", std::move(arr)}, {"all_zero", all_zero}});
        exit_code = all_zero ? 0 : 1;
    });

    auto* sw_mu = sw->add_subcommand("mu-convert", "convert between mu- and SW-class families");
    add_ring(sw_mu);
    add_out(sw_mu);
    sw_mu->add_option("--direction", direction, "mu-to-sw or sw-to-mu")
        ->required()
        ->check(CLI::IsMember({"mu-to-sw", "sw-to-mu"}));
    sw_mu->add_option("--class", class_exprs, "family entries, lowest index first")->required();
    sw_mu->add_option("--ref", ref_exprs,
                      "s_1, s_2, ... (mu-to-sw) or c_1, c_2, ... (sw-to-mu); unit entry implied");
    sw_mu->callback([&] {
        RingPtr r = load_ring(ring_path);
        std::vector<Element> fam = eval_list(r, class_exprs, false);
        std::vector<Element> ref = eval_list(r, ref_exprs, true);
        std::vector<Element> out =
            direction == "mu-to-sw" ? mu_to_sw(fam, ref) : sw_to_mu(fam, ref);
        exit_code = emit_list(out, out_mode, direction == "mu-to-sw" ? "sw" : "mu");
    });

    // wall diff|obs|torus
    auto* wall = app.add_subcommand("wall", "wall-crossing differences and obstructions");
    auto* wl_diff = wall->add_subcommand("diff", "cohomological jump of SW_m across a wall");
    add_ring(wl_diff);
    add_out(wl_diff);
    wl_diff->add_option("--m", m_idx, "invariant index")->required();
    wl_diff->add_option("--d", d_val, "complex index of the family bundle")->required();
    wl_diff->add_option("--obs", obs_expr, "obstruction class expression")->required();
    wl_diff->add_option("--segre", segre_exprs, "s_1, s_2, ... as expressions; s_0 = 1 implied");
    wl_diff->callback([&] {
        RingPtr r = load_ring(ring_path);
        exit_code = emit_element(
            wall_difference(m_idx, d_val, eval_expr(r, obs_expr), eval_list(r, segre_exprs, true)),
            out_mode, "jump");
    });

    auto* wl_obs = wall->add_subcommand("obs", "obstruction class from the module algebra");
    add_ring(wl_obs);
    add_out(wl_obs);
    wl_obs->add_option("--b-plus", b_plus, "rank of H+")->required();
    wl_obs->add_option("--e-phi", e_phi_expr, "Euler class seen by phi");
    wl_obs->add_option("--e-psi", e_psi_expr, "Euler class seen by psi");
    wl_obs->add_option("--lambda", lambda_expr, "comparison class of the two trivialisations");
    wl_obs->callback([&] {
        RingPtr r = load_ring(ring_path);
        SBContext ctx{r, b_plus, eval_expr(r, e_phi_expr), eval_expr(r, e_psi_expr),
                      eval_expr(r, lambda_expr)};
        Element obs = obs_from_algebra(ctx);
        ParityReport parity = parity_check(ctx);
        Json checks = Json::array();
        for (auto& c : parity.checks)
            checks.push_back(Json{{"claim", c.claim},
                                  {"residual", elem_to_text(c.residual)},
                                  {"ok", c.residual.is_zero()}});
        if (out_mode == "text")
            std::cout << "obs = " << elem_to_text(obs) << "\nparity "
                      << (parity.pass() ? "pass" : "FAIL") << "\n";
        else
            print_json(Json{{"obs", elem_to_text(obs)},
                            {"element", elem_to_json(obs)},
                            {"parity", Json{{"b_plus", parity.b_plus},
                                            {"checks", std::move(checks)},
                                            {"pass", parity.pass()}}}});
        exit_code = parity.pass() ? 0 : 1;
    });

    auto* wl_torus = wall->add_subcommand("torus", "unparametrised wall crossing over the torus");
    add_out(wl_torus);
    wl_torus->add_option("--input", input_path, "input file {\"b1\",\"d\",\"M\"} (JSON)");
    wl_torus->add_option("--b1", b1, "first Betti number (with --m-row)");
    wl_torus->add_option("--d", d_val, "complex index of the family bundle");
    wl_torus->add_option("--m-row", m_rows, "one matrix row per flag, comma-separated entries");
    wl_torus->callback([&] {
        TorusWallInput in;
        if (!input_path.empty()) {
            in = torus_input_from_json(load_json_file(input_path));
        } else {
            in.b1 = b1;
            in.d = d_val;
            if (m_rows.empty()) {
                in.M.assign(size_t(std::max(b1, 0)), std::vector<long long>(size_t(std::max(b1, 0)), 0));
            } else {
                for (auto& row : m_rows) {
                    std::vector<long long> r;
                    size_t pos = 0;
                    while (pos <= row.size()) {
                        size_t comma = std::min(row.find(',', pos), row.size());
                        try {
                            r.push_back(std::stoll(row.substr(pos, comma - pos)));
                        } catch (const std::exception&) {
                            fail("BadSchema", "matrix entries must be integers: '" + row + "'");
                        }
                        pos = comma + 1;
                    }
                    in.M.push_back(std::move(r));
                }
            }
            validate_torus_input(in);
        }
        RingPtr ring = torus_ring_q(in.b1);
        TorusWallResult main_route = unparam_wall_crossing(ring, in);
        Rat oracle = unparam_wall_crossing_oracle(ring, in);
        bool agree = main_route.jump == oracle;
        if (out_mode == "text")
            std::cout << "alpha = " << elem_to_text(main_route.alpha) << "\njump = "
                      << rat_str(main_route.jump) << "\noracle = " << rat_str(oracle) << "\n";
        else
            print_json(Json{{"input", torus_input_to_json(in)},
                            {"alpha", elem_to_text(main_route.alpha)},
                            {"jump", rat_str(main_route.jump)},
                            {"oracle_jump", rat_str(oracle)},
                            {"routes_agree", agree}});
        exit_code = agree ? 0 : 1;
    });

    // kdiv coeffs|ndmp|ledger|swk
    auto* kdiv = app.add_subcommand("kdiv", "index numbers and divisibility ledgers");
    auto* kd_coeffs = kdiv->add_subcommand("coeffs", "log-power or shifted-Todd coefficients");
    kd_coeffs->add_option("--kind", kind, "a (log-power) or todd")
        ->check(CLI::IsMember({"a", "todd"}));
    kd_coeffs->add_option("--p", p_val, "log power (kind a)");
    kd_coeffs->add_option("--d", d_val, "Todd exponent (kind todd)");
    kd_coeffs->add_option("--count", count, "number of coefficients");
    kd_coeffs->callback([&] {
        Json c = Json::array();
        if (kind == "a") {
            RationalSeries s = a_coeffs(p_val, count);
            for (int k = s.min_power; k <= s.trunc; ++k) c.push_back(rat_str(s.coeff(k)));
            print_json(Json{{"kind", "a"}, {"p", p_val}, {"min_power", s.min_power},
                            {"coeffs", std::move(c)}});
        } else {
            for (int j = 0; j < count; ++j) c.push_back(rat_str(todd_coeff(d_val, j)));
            print_json(Json{{"kind", "todd"}, {"d", d_val}, {"coeffs", std::move(c)}});
        }
    });

    auto* kd_ndmp = kdiv->add_subcommand("ndmp", "index number by two agreeing routes");
    kd_ndmp->add_option("--d", d_val, "bundle rank")->required();
    kd_ndmp->add_option("--m", m_idx, "twist")->required();
    kd_ndmp->add_option("--p", p_val, "half of b+ - 1")->required();
    kd_ndmp->callback([&] {
        print_json(Json{{"d", d_val}, {"m", m_idx}, {"p", p_val},
                        {"value", rat_str(n_dmp(d_val, m_idx, p_val))}});
    });

    auto* kd_ledger = kdiv->add_subcommand("ledger", "denominator ledger with difference table");
    kd_ledger->add_option("--d", d_val, "bundle rank")->required();
    kd_ledger->add_option("--p", p_val, "half of b+ - 1")->required();
    kd_ledger->add_option("--r", r_val, "half the even-sphere dimension (0 = point base)");
    kd_ledger->callback([&] { print_json(divisibility_to_json(divisibility_ledger(d_val, p_val, r_val))); });

    auto* kd_swk = kdiv->add_subcommand("swk", "character of the K-theoretic invariant");
    add_ring(kd_swk);
    add_out(kd_swk);
    kd_swk->add_option("--ledger", ledger_path, "ledger file (JSON)")->required();
    kd_swk->add_option("--m", m_idx, "twist")->required();
    kd_swk->add_option("--kappa", kappa_expr, "degree-2 class of the spin-c structure");
    kd_swk->add_option("--ahat", ahat_expr, "A-hat class of H+ as an expression");
    kd_swk->add_option("--td", td_exprs, "Td_1, Td_2, ... as expressions; Td_0 = 1 implied");
    kd_swk->callback([&] {
        RingPtr r = load_ring(ring_path);
        SWLedger L = ledger_from_json(r, load_json_file(ledger_path));
        exit_code = emit_element(ch_swk(L, eval_expr(r, kappa_expr), eval_expr(r, ahat_expr),
                                        eval_list(r, td_exprs, true), m_idx),
                                 out_mode, "ch_swk");
    });

    // verify all|vzero|recur5|recur3|sym-push
    auto* verify = app.add_subcommand("verify", "identity sweeps and dual-route checks");
    for (const char* which : {"vzero", "recur5", "recur3"}) {
        auto* v = verify->add_subcommand(which, std::string("sweep the ") + which + " identity");
        add_out(v);
        v->add_option("--range", range_args, "key=lo..hi (repeatable)");
        v->callback([&, which] {
            VerificationRange range = std::string(which) == "vzero"
                                          ? VerificationRange::vzero_default()
                                          : (std::string(which) == "recur5"
                                                 ? VerificationRange::recur5_default()
                                                 : VerificationRange::recur3_default());
            for (auto& s : range_args) apply_range(range, s);
            exit_code = emit_verification(which, range, out_mode);
        });
    }

    auto* v_sym = verify->add_subcommand("sym-push", "pushforward lemma against the branch formula");
    add_ring(v_sym);
    add_out(v_sym);
    v_sym->add_option("--a", rank, "ambient bundle rank")->required();
    v_sym->add_option("--aprime", aprime, "trivial summand rank");
    v_sym->add_option("--m", m_idx, "twist")->required();
    v_sym->add_option("--chern", chern_exprs, "c_1, c_2, ... as expressions");
    v_sym->add_option("--trunc", trunc, "compare degrees 0..trunc");
    v_sym->callback([&] {
        RingPtr r = load_ring(ring_path);
        SymPushReport rep =
            verify_sym_pushforward(r, rank, eval_list(r, chern_exprs, false), aprime, m_idx, trunc);
        print_json(sym_push_json(rep));
        exit_code = rep.pass() ? 0 : 1;
    });

    auto* v_all = verify->add_subcommand("all", "all three sweeps plus a pushforward mini-sweep");
    add_out(v_all);
    v_all->callback([&] {
        Json parts = Json::array();
        bool ok = true;
        std::vector<std::pair<std::string, VerificationReport>> sweeps;
        sweeps.emplace_back("vzero", verify_vzero(VerificationRange::vzero_default()));
        sweeps.emplace_back("recur5", verify_recur5(VerificationRange::recur5_default()));
        sweeps.emplace_back("recur3", verify_recur3(VerificationRange::recur3_default()));
        for (auto& [name, rep] : sweeps) {
            parts.push_back(Json{{"identity", name}, {"cases", rep.cases}, {"ok", rep.ok()}});
            ok = ok && rep.ok();
        }
        long long push_cases = 0;
        bool push_ok = true;
        for (int a = 2; a <= 3; ++a) {
            RingPresentation p;
            p.trunc = 6;
            for (int i = 1; i <= a; ++i) p.gens.push_back({"c" + std::to_string(i), 2 * i});
            RingPtr r = ring_new(p);
            std::vector<Element> ch;
            for (int i = 0; i < a; ++i) ch.push_back(elem_gen(r, i));
            for (int ap = 0; ap <= 1; ++ap)
                for (int m = -(a + 1); m <= a + 1; ++m) {
                    ++push_cases;
                    push_ok = push_ok && verify_sym_pushforward(r, a, ch, ap, m, 6).pass();
                }
        }
        parts.push_back(Json{{"identity", "sym-push"}, {"cases", push_cases}, {"ok", push_ok}});
        ok = ok && push_ok;
        print_json(Json{{"verifications", std::move(parts)}, {"ok", ok}});
        exit_code = ok ? 0 : 1;
    });

    // scenario <name>
    auto* scen = app.add_subcommand("scenario", "run a named end-to-end pipeline");
    scen->add_option("name", scenario_name, "scenario name")->required();
    scen->add_option("--params", params_path, "parameter file (JSON)");
    scen->callback([&] {
        Json params;
        if (!params_path.empty()) params = load_json_file(params_path);
        Json report = run_scenario(scenario_name, params);
        print_json(report);
        exit_code = (!report.contains("ok") || report["ok"].get<bool>()) ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const CalcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (e.code == "RouteDisagreement" || e.code == "ScenarioFailure") ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
