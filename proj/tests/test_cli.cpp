#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "ccalc/scenarios.hpp"

using namespace ccalc;

namespace {

std::string expect_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const CalcError& e) {
        return e.code;
    }
    return "";
}

RingPtr exterior_q() {
    RingPresentation p;
    p.gens = {{"x", 1}, {"y", 1}};
    p.trunc = 4;
    return ring_new(p);
}

struct RunResult {
    int status = -1;
    std::string out;
};

// Drive the real binary; stderr is folded into the captured stream.
RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SWCALC_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = "/tmp/ccalc_cli_" + name;
    std::ofstream f(path);
    f << body;
    return path;
}

const char* torus_ring_src =
    R"({"gens":[["x",1],["y",1]],"coeff":"Z2","trunc":2,
        "rules":[["x",2,{"terms":[]}],["y",2,{"terms":[]}]]})";

const char* k3_ledger_src =
    R"({"d":2,"b_plus":3,"segre_D":[{"terms":[[[0,0],"1"]]}],
        "sw_classes":{"0":{"terms":[[[0,0],"1"]]}},
        "hplus":{"rank":3,"sw":[{"terms":[]},{"terms":[[[1,1],"1"]]}]}})";

} // namespace

TEST_CASE("expression evaluation") {
    RingPtr t2 = torus_z2_ring();
    Element xy = elem_gen(t2, "x") * elem_gen(t2, "y");
    CHECK(eval_expr(t2, "(1+x)*(1+x+y)*(1+y)") == elem_one(t2) + xy);
    CHECK(eval_expr(t2, "x^2").is_zero());

    RingPtr ext = exterior_q();
    CHECK(eval_expr(ext, "x*y + y*x").is_zero());
    CHECK(eval_expr(ext, "3/4 * x") == elem_gen(ext, "x") * Rat(3, 4));

    CHECK(expect_code([&] { eval_expr(ext, "x + z"); }) == "UnknownGenerator");
    CHECK(expect_code([&] { eval_expr(ext, "x +"); }) == "ParseError");
    CHECK(expect_code([&] { eval_expr(ext, "1/x"); }) == "ParseError");
    CHECK(expect_code([&] { eval_expr(ext, "x^y"); }) == "ParseError");
}

TEST_CASE("k3 torus scenario report") {
    Json rep = run_scenario("k3-torus");
    CHECK(rep["scenario"] == "k3-torus");
    CHECK(rep["w_total"] == "1+xy");
    CHECK(rep["w1"] == "0");
    CHECK(rep["w2"] == "xy");
    CHECK(rep["obstructed"] == true);
    CHECK(rep["discrepancy"] == "xy");
    CHECK(rep["ok"] == true);
    REQUIRE(rep.contains("provenance"));
    CHECK(rep["provenance"]["routes"].size() >= 2);
    for (auto& c : rep["provenance"]["cross_checks"]) CHECK(c["passed"] == true);
    CHECK(expect_code([] { run_scenario("k3-torus", Json{{"d", 2}}); }) == "BadSchema");
}

TEST_CASE("divisibility scenarios") {
    Json rep = run_scenario("point-divisibility", Json{{"d", 2}, {"p", 0}});
    REQUIRE(rep["ledgers"].size() == 1);
    const Json& led = rep["ledgers"][0];
    CHECK(led["n"] == 1);
    for (auto& den : led["denominators"]) CHECK(den == "1");
    CHECK(led["lcm"] == "1");
    CHECK(rep["ok"] == true);

    Json all = run_scenario("point-divisibility", Json{{"d", 3}});
    CHECK(all["ledgers"].size() == 3); // one ledger per p
    CHECK(all["ledgers"][1]["lcm"] == "2");

    Json sph = run_scenario("sphere-divisibility", Json{{"r", 1}, {"d", 3}, {"p", 1}});
    CHECK(sph["ledger"]["p_eff"] == 0);
    CHECK(sph["ok"] == true);

    CHECK(expect_code([] { run_scenario("point-divisibility", Json{{"q", 1}}); }) == "BadSchema");
    CHECK(expect_code([] { run_scenario("point-divisibility", Json{{"d", "three"}}); }) ==
          "BadSchema");
    CHECK(expect_code([] { run_scenario("no-such-scenario"); }) == "BadSchema");
}

TEST_CASE("torus wall-crossing scenario") {
    Json rep = run_scenario("b1-torus-wallcross");
    CHECK(rep["jump"] == "1/4");
    CHECK(rep["oracle_jump"] == "1/4");
    CHECK(rep["ok"] == true);

    // b1 = 2 with the only nonzero pairing: jump is the single Pfaffian entry.
    Json params{{"b1", 2}, {"d", 1}, {"M", Json::array({Json::array({0, 3}), Json::array({-3, 0})})}};
    Json rep2 = run_scenario("b1-torus-wallcross", params);
    CHECK(rep2["jump"] == "3/2");
    CHECK(rep2["ok"] == true);
}

TEST_CASE("identity sweep scenario") {
    Json params{{"vzero", Json{{"u", Json::array({-4, 4})}, {"j", Json::array({0, 3})}}},
                {"recur5", Json{{"u", Json::array({-3, 3})},
                                {"v", Json::array({-3, 3})},
                                {"j", Json::array({0, 3})}}},
                {"recur3", Json{{"k", Json::array({0, 2})},
                                {"l", Json::array({0, 2})},
                                {"m", Json::array({0, 2})},
                                {"d", Json::array({-1, 3})},
                                {"aprime_margin", 2}}}};
    Json rep = run_scenario("identity-sweeps", params);
    CHECK(rep["total_counterexamples"] == 0);
    CHECK(rep["total_cases"].get<long long>() > 0);
    CHECK(rep["ok"] == true);
    REQUIRE(rep["identities"].size() == 3);
    for (auto& id : rep["identities"]) CHECK(id["counterexamples"] == Json::array());
}

TEST_CASE("binary end to end") {
    std::string ring = write_temp("t2ring.json", torus_ring_src);
    std::string ledger = write_temp("k3ledger.json", k3_ledger_src);

    RunResult k3 = run_cli("scenario k3-torus");
    CHECK(k3.status == 0);
    CHECK(k3.out.find("\"obstructed\": true") != std::string::npos);

    RunResult led = run_cli("kdiv ledger --d 3 --p 1");
    CHECK(led.status == 0);
    CHECK(led.out.find("\"lcm\": \"2\"") != std::string::npos);

    RunResult ev = run_cli("ring eval --ring " + ring +
                           " --expr \"(1+x)*(1+x+y)*(1+y)\" --out text");
    CHECK(ev.status == 0);
    CHECK(ev.out == "1 + x*y\n");

    // Nonzero screen on the obstructed ledger: reported and flagged via exit 1.
    RunResult rel = run_cli("sw relations --ring " + ring + " --ledger " + ledger);
    CHECK(rel.status == 1);
    CHECK(rel.out.find("\"all_zero\": false") != std::string::npos);

    RunResult sq = run_cli("sw steenrod --ring " + ring + " --ledger " + ledger +
                           " --i 2 --m 0 --out text");
    CHECK(sq.status == 0);
    CHECK(sq.out == "x*y\n");

    RunResult tsv = run_cli("verify vzero --range u=-2..2 --range j=0..1 --out tsv");
    CHECK(tsv.status == 0);
    CHECK(tsv.out.find("u=-2,j=0\t1\t1\tpass\n") == 0);
    CHECK(tsv.out.find("FAIL") == std::string::npos);

    RunResult nd = run_cli("kdiv ndmp --d 3 --m 4 --p 0");
    CHECK(nd.status == 0);
    CHECK(nd.out.find("\"value\": \"15\"") != std::string::npos);

    CHECK(run_cli("scenario no-such-scenario").status == 2);
    CHECK(run_cli("ring eval --ring /nonexistent.json --expr 1").status == 2);
    CHECK(run_cli("ring eval --ring " + ring + " --expr \"x+q\"").status == 2);
    CHECK(run_cli("kdiv ledger --d 3").status == 2);
    CHECK(run_cli("--help").status == 0);
}
