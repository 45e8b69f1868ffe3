#pragma once
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gring.hpp"

namespace ccalc {

using Json = nlohmann::ordered_json;

// Canonical term order for all serialized output: degree, then lex.
inline std::vector<std::pair<Mono, Rat>> sorted_terms(const Element& a) {
    std::vector<std::pair<Mono, Rat>> v(a.terms.begin(), a.terms.end());
    std::stable_sort(v.begin(), v.end(), [&](const auto& x, const auto& y) {
        int dx = a.ring->mono_degree(x.first), dy = a.ring->mono_degree(y.first);
        if (dx != dy) return dx < dy;
        return x.first < y.first;
    });
    return v;
}

inline Json elem_to_json(const Element& a) {
    Json terms = Json::array();
    for (auto& [m, c] : sorted_terms(a)) {
        Json mono = Json::array();
        for (int e : m) mono.push_back(e);
        terms.push_back(Json::array({mono, rat_str(c)}));
    }
    return Json{{"terms", terms}};
}

inline Element elem_from_json(const RingPtr& r, const Json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        fail("BadSchema", "element must be {\"terms\": [...]}");
    TermMap t;
    for (auto& entry : j["terms"]) {
        if (!entry.is_array() || entry.size() != 2) fail("BadSchema", "element term must be [exponents, coeff]");
        Mono m;
        for (auto& e : entry[0]) {
            if (!e.is_number_integer()) fail("BadSchema", "exponent must be an integer");
            int v = e.get<int>();
            if (v < 0) fail("BadSchema", "negative exponent");
            m.push_back(v);
        }
        Rat c = entry[1].is_string() ? rat_parse(entry[1].get<std::string>())
                                     : (entry[1].is_number_integer() ? Rat(entry[1].get<long long>())
                                                                     : throw CalcError("BadSchema", "coefficient must be a string or integer"));
        if (int(m.size()) != r->gen_count()) fail("BadSchema", "exponent vector arity mismatch");
        t[m] += c;
    }
    return elem_from_terms(r, std::move(t));
}

// Human-readable rendering.  compact: "1+xy" (scenario reports); otherwise
// "1 + x*y".
inline std::string elem_to_text(const Element& a, bool compact = false) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : sorted_terms(a)) {
        std::string body;
        for (int i = 0; i < a.ring->gen_count(); ++i) {
            if (m[i] == 0) continue;
            if (!body.empty() && !compact) body += "*";
            body += a.ring->gens[i].name;
            if (m[i] > 1) body += "^" + std::to_string(m[i]);
        }
        Rat cc = c;
        bool neg = cc < 0;
        if (neg) cc = -cc;
        std::string cs = rat_str(cc);
        std::string term;
        if (body.empty()) term = cs;
        else if (cc == 1) term = body;
        else term = cs + (compact ? "" : "*") + body;
        if (first) out += (neg ? "-" : "") + term;
        else if (compact) out += (neg ? "-" : "+") + term;
        else out += (neg ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

inline std::string elem_to_tsv(const Element& a) {
    std::string out;
    for (auto& [m, c] : sorted_terms(a)) {
        std::string row;
        for (size_t i = 0; i < m.size(); ++i) row += (i ? "," : "") + std::to_string(m[i]);
        out += row + "\t" + rat_str(c) + "\n";
    }
    if (out.empty()) out = "\t0\n";
    return out;
}

inline Json ring_to_json(const RingPtr& r) {
    Json gens = Json::array();
    for (auto& g : r->gens) gens.push_back(Json::array({g.name, g.degree}));
    Json rules = Json::array();
    for (auto& rule : r->rules) {
        Json terms = Json::array();
        for (auto& [m, c] : rule.rhs) {
            Json mono = Json::array();
            for (int e : m) mono.push_back(e);
            terms.push_back(Json::array({mono, rat_str(c)}));
        }
        rules.push_back(Json::array({r->gens[rule.gen].name, rule.power, Json{{"terms", terms}}}));
    }
    Json j{{"coeff", coeff_name(r->coeff)}, {"gens", gens}, {"rules", rules}, {"trunc", r->trunc}};
    if (!r->top.empty()) {
        Json top = Json::array();
        for (int e : r->top) top.push_back(e);
        j["top"] = top;
    }
    return j;
}

inline RingPtr ring_from_json(const Json& j) {
    if (!j.is_object()) fail("BadSchema", "ring must be a JSON object");
    RingPresentation p;
    std::string tag = j.value("coeff", "Q");
    if (tag == "Z") p.coeff = Coeff::Z;
    else if (tag == "Q") p.coeff = Coeff::Q;
    else if (tag == "Z2") p.coeff = Coeff::Z2;
    else fail("BadSchema", "coeff must be one of Z, Q, Z2");
    if (!j.contains("gens") || !j["gens"].is_array()) fail("BadSchema", "ring needs a \"gens\" array");
    std::map<std::string, int> index;
    for (auto& g : j["gens"]) {
        if (!g.is_array() || g.size() != 2 || !g[0].is_string() || !g[1].is_number_integer())
            fail("BadSchema", "generator must be [name, degree]");
        index[g[0].get<std::string>()] = int(p.gens.size());
        p.gens.push_back({g[0].get<std::string>(), g[1].get<int>()});
    }
    if (!j.contains("trunc") || !j["trunc"].is_number_integer()) fail("BadSchema", "ring needs integer \"trunc\"");
    p.trunc = j["trunc"].get<int>();
    if (j.contains("rules")) {
        for (auto& rj : j["rules"]) {
            if (!rj.is_array() || rj.size() != 3 || !rj[0].is_string() || !rj[1].is_number_integer())
                fail("BadSchema", "rule must be [gen, power, element]");
            auto it = index.find(rj[0].get<std::string>());
            if (it == index.end()) fail("UnknownGenerator", "rule on unknown generator '" + rj[0].get<std::string>() + "'");
            RewriteRule rule;
            rule.gen = it->second;
            rule.power = rj[1].get<int>();
            if (!rj[2].is_object() || !rj[2].contains("terms")) fail("BadSchema", "rule replacement must be an element");
            for (auto& entry : rj[2]["terms"]) {
                if (!entry.is_array() || entry.size() != 2) fail("BadSchema", "rule term must be [exponents, coeff]");
                Mono m;
                for (auto& e : entry[0]) m.push_back(e.get<int>());
                if (m.size() != p.gens.size()) fail("BadSchema", "rule exponent vector arity mismatch");
                Rat c = entry[1].is_string() ? rat_parse(entry[1].get<std::string>()) : Rat(entry[1].get<long long>());
                rule.rhs[m] += c;
            }
            p.rules.push_back(std::move(rule));
        }
    }
    if (j.contains("top")) {
        Mono top;
        for (auto& e : j["top"]) top.push_back(e.get<int>());
        p.top = top;
    }
    return ring_new(std::move(p));
}

} // namespace ccalc
