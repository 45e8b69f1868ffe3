#pragma once
#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace ccalc {

enum class Coeff { Z, Q, Z2 };

inline std::string coeff_name(Coeff c) {
    switch (c) {
        case Coeff::Z: return "Z";
        case Coeff::Q: return "Q";
        default: return "Z2";
    }
}

struct Generator {
    std::string name;
    int degree = 0;
};

// Monomial = exponent vector in generator order; term map keys are monomials.
using Mono = std::vector<int>;
using TermMap = std::map<Mono, Rat>;

struct RewriteRule {
    int gen = 0;   // generator index
    int power = 1; // k >= 1: gen^k rewrites to rhs
    TermMap rhs;
};

struct RingPresentation {
    Coeff coeff = Coeff::Q;
    std::vector<Generator> gens;
    std::vector<RewriteRule> rules;
    int trunc = 0;
    std::optional<Mono> top; // designated top monomial; defaulted when all gens are odd
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct Element {
    RingPtr ring;
    TermMap terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Element& o) const { return ring == o.ring && terms == o.terms; }
};

// Later-declared generators weigh more: compare exponents from the highest
// index down.  Rewrite replacements must be strictly smaller than their
// left-hand side under this order, which makes reduction terminate.
inline int mono_cmp(const Mono& a, const Mono& b) {
    for (int i = int(a.size()) - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

class Ring {
public:
    Coeff coeff;
    std::vector<Generator> gens;
    std::vector<RewriteRule> rules;
    int trunc = 0;
    Mono top; // empty = no designated top monomial

    int gen_count() const { return int(gens.size()); }

    int gen_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) fail("UnknownGenerator", "no generator named '" + name + "'");
        return it->second;
    }
    bool has_gen(const std::string& name) const { return index_.count(name) != 0; }

    int mono_degree(const Mono& m) const {
        int d = 0;
        for (int i = 0; i < gen_count(); ++i) d += m[i] * gens[i].degree;
        return d;
    }

    bool gen_odd(int i) const { return gens[i].degree % 2 != 0; }

    // Coefficient arithmetic in the tagged ring.
    Rat coeff_norm(const Rat& q) const {
        if (coeff == Coeff::Z2) {
            if (den(q) % 2 == 0)
                fail("NonRationalCoefficients", "even denominator has no mod-2 meaning: " + rat_str(q));
            Int n = num(q) % 2;
            return n < 0 ? Rat(n + 2) : Rat(n);
        }
        if (coeff == Coeff::Z && den(q) != 1)
            fail("NonRationalCoefficients", "non-integral coefficient over Z: " + rat_str(q));
        return q;
    }

    bool coeff_is_unit(const Rat& q) const {
        switch (coeff) {
            case Coeff::Z: return q == 1 || q == -1;
            case Coeff::Q: return q != 0;
            default: return coeff_norm(q) == 1;
        }
    }

    // Koszul sign (as +1/-1) for multiplying sorted monomials a*b.
    int koszul_sign(const Mono& a, const Mono& b) const {
        if (coeff == Coeff::Z2) return 1;
        long s = 0, suffix = 0;
        // moving each odd block of b left past the odd tail of a
        for (int i = gen_count() - 1; i >= 0; --i) {
            if (gen_odd(i)) {
                s += long(b[i] % 2) * (suffix % 2);
                suffix += a[i];
            }
        }
        return s % 2 != 0 ? -1 : 1;
    }

    // Reduce a raw term map to normal form: degree truncation, automatic
    // odd-generator squares (over Z and Q), rewrite rules to a fixpoint.
    TermMap normalize(TermMap raw) const {
        TermMap out;
        std::vector<std::pair<Mono, Rat>> work(raw.begin(), raw.end());
        while (!work.empty()) {
            auto [m, c] = work.back();
            work.pop_back();
            if (c == 0) continue;
            if (mono_degree(m) > trunc) continue;
            int pos = -1, pow = 0;
            bool killed = false;
            for (int i = gen_count() - 1; i >= 0; --i) {
                if (m[i] == 0) continue;
                if (coeff != Coeff::Z2 && gen_odd(i) && m[i] >= 2) { killed = true; break; }
                for (auto& [k, rhs] : rules_by_gen_[i])
                    if (m[i] >= k && k > pow) { pos = i; pow = k; }
                if (pos == i) break;
            }
            if (killed) continue;
            if (pos < 0) {
                Rat& slot = out[m];
                slot = coeff_norm(slot + c);
                if (slot == 0) out.erase(m);
                continue;
            }
            // m = sign * (m with pow removed at pos) * gen[pos]^pow
            Mono rest = m;
            rest[pos] -= pow;
            int sign = 1;
            if (coeff != Coeff::Z2 && gen_odd(pos) && pow % 2 != 0) {
                long tail = 0;
                for (int j = pos + 1; j < gen_count(); ++j)
                    if (gen_odd(j)) tail += rest[j];
                if (tail % 2 != 0) sign = -1;
            }
            const TermMap* rhs = nullptr;
            for (auto& [k, r] : rules_by_gen_[pos])
                if (k == pow) rhs = r;
            for (auto& [rm, rc] : *rhs) {
                Mono prod = rest;
                for (int j = 0; j < gen_count(); ++j) prod[j] += rm[j];
                Rat cc = c * rc * sign * koszul_sign(rest, rm);
                work.emplace_back(std::move(prod), std::move(cc));
            }
        }
        return out;
    }

    static RingPtr create(RingPresentation p) {
        auto r = std::shared_ptr<Ring>(new Ring());
        r->coeff = p.coeff;
        r->gens = std::move(p.gens);
        r->trunc = p.trunc;
        if (r->trunc < 0) fail("BadDegree", "negative truncation degree");
        for (int i = 0; i < r->gen_count(); ++i) {
            const auto& g = r->gens[i];
            if (g.degree <= 0) fail("BadDegree", "generator '" + g.name + "' has degree <= 0");
            if (!r->index_.emplace(g.name, i).second)
                fail("BadSchema", "duplicate generator '" + g.name + "'");
        }
        r->rules = std::move(p.rules);
        r->rules_by_gen_.resize(r->gen_count());
        for (auto& rule : r->rules) {
            if (rule.gen < 0 || rule.gen >= r->gen_count()) fail("BadSchema", "rule on unknown generator");
            if (rule.power < 1) fail("BadSchema", "rule power must be >= 1");
            int lhs_deg = rule.power * r->gens[rule.gen].degree;
            Mono lhs(r->gen_count(), 0);
            lhs[rule.gen] = rule.power;
            TermMap cleaned;
            for (auto& [m, c] : rule.rhs) {
                if (int(m.size()) != r->gen_count()) fail("BadSchema", "rule monomial arity mismatch");
                Rat cc = r->coeff_norm(c);
                if (cc == 0) continue;
                if (r->mono_degree(m) != lhs_deg)
                    fail("InhomogeneousRule", "replacement for " + r->gens[rule.gen].name + "^" +
                                                  std::to_string(rule.power) + " is not degree-homogeneous");
                if (mono_cmp(m, lhs) >= 0)
                    fail("NonConfluent", "replacement for " + r->gens[rule.gen].name + "^" +
                                             std::to_string(rule.power) +
                                             " is not lower in the generator order; reduction would not terminate");
                cleaned.emplace(m, cc);
            }
            rule.rhs = std::move(cleaned);
            r->rules_by_gen_[rule.gen].emplace_back(rule.power, &rule.rhs);
        }
        if (p.top) {
            if (int(p.top->size()) != r->gen_count()) fail("BadSchema", "top monomial arity mismatch");
            r->top = *p.top;
        } else {
            bool all_odd = r->gen_count() > 0;
            for (int i = 0; i < r->gen_count(); ++i)
                if (!r->gen_odd(i)) all_odd = false;
            if (all_odd) r->top.assign(r->gen_count(), 1);
        }
        r->check_confluence();
        return r;
    }

private:
    Ring() = default;
    std::map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, const TermMap*>>> rules_by_gen_;

    // One rewrite step applied to a bare monomial, no degree drop: used to
    // seed the two sides of a critical pair.
    TermMap apply_rule_once(const Mono& m, int pos, int pow, const TermMap& rhs) const {
        Mono rest = m;
        rest[pos] -= pow;
        int sign = 1;
        if (coeff != Coeff::Z2 && gen_odd(pos) && pow % 2 != 0) {
            long tail = 0;
            for (int j = pos + 1; j < gen_count(); ++j)
                if (gen_odd(j)) tail += rest[j];
            if (tail % 2 != 0) sign = -1;
        }
        TermMap out;
        for (auto& [rm, rc] : rhs) {
            Mono prod = rest;
            for (int j = 0; j < gen_count(); ++j) prod[j] += rm[j];
            out[prod] += rc * sign * koszul_sign(rest, rm);
        }
        return out;
    }

    void check_confluence() const {
        // Collect explicit rules plus the implicit odd-square rules that the
        // sign conventions force over Z and Q.
        struct R { int gen, pow; const TermMap* rhs; };
        static const TermMap kEmpty{};
        std::vector<R> all;
        for (auto& rule : rules) all.push_back({rule.gen, rule.power, &rule.rhs});
        if (coeff != Coeff::Z2)
            for (int i = 0; i < gen_count(); ++i)
                if (gen_odd(i)) all.push_back({i, 2, &kEmpty});
        for (size_t u = 0; u < all.size(); ++u) {
            for (size_t v = u + 1; v < all.size(); ++v) {
                const R &r1 = all[u], &r2 = all[v];
                Mono overlap(gen_count(), 0);
                overlap[r1.gen] = r1.pow;
                overlap[r2.gen] = std::max(overlap[r2.gen], r2.pow);
                if (mono_degree(overlap) > trunc) continue; // confluence up to truncation
                TermMap a = normalize(apply_rule_once(overlap, r1.gen, r1.pow, *r1.rhs));
                TermMap b = normalize(apply_rule_once(overlap, r2.gen, r2.pow, *r2.rhs));
                if (a != b)
                    fail("NonConfluent", "critical pair at " + gens[r1.gen].name + "^" +
                                             std::to_string(r1.pow) + " / " + gens[r2.gen].name + "^" +
                                             std::to_string(r2.pow) + " does not resolve");
            }
        }
    }
};

inline RingPtr ring_new(RingPresentation p) { return Ring::create(std::move(p)); }

// ---- Element constructors -------------------------------------------------

inline Element elem_zero(const RingPtr& r) { return Element{r, {}}; }

inline Element elem_const(const RingPtr& r, const Rat& c) {
    Element e{r, {}};
    Rat cc = r->coeff_norm(c);
    if (cc != 0 && r->trunc >= 0) e.terms.emplace(Mono(r->gen_count(), 0), cc);
    return e;
}

inline Element elem_one(const RingPtr& r) { return elem_const(r, 1); }

inline Element elem_gen(const RingPtr& r, int i) {
    Mono m(r->gen_count(), 0);
    m[i] = 1;
    Element e{r, {}};
    e.terms = r->normalize({{m, Rat(1)}});
    return e;
}

inline Element elem_gen(const RingPtr& r, const std::string& name) {
    return elem_gen(r, r->gen_index(name));
}

inline Element elem_from_terms(const RingPtr& r, TermMap t) {
    for (auto& [m, c] : t)
        if (int(m.size()) != r->gen_count()) fail("BadSchema", "monomial arity mismatch");
    return Element{r, r->normalize(std::move(t))};
}

inline void require_same_ring(const Element& a, const Element& b) {
    if (a.ring != b.ring) fail("RingMismatch", "elements belong to different rings");
}

// ---- Element arithmetic ---------------------------------------------------

inline Element operator+(const Element& a, const Element& b) {
    require_same_ring(a, b);
    Element out{a.ring, a.terms};
    for (auto& [m, c] : b.terms) {
        Rat& slot = out.terms[m];
        slot = a.ring->coeff_norm(slot + c);
        if (slot == 0) out.terms.erase(m);
    }
    return out;
}

inline Element operator*(const Element& a, const Rat& s) {
    Rat ss = a.ring->coeff_norm(s);
    Element out{a.ring, {}};
    if (ss == 0) return out;
    for (auto& [m, c] : a.terms) {
        Rat cc = a.ring->coeff_norm(c * ss);
        if (cc != 0) out.terms.emplace(m, cc);
    }
    return out;
}

inline Element operator*(const Rat& s, const Element& a) { return a * s; }
inline Element operator-(const Element& a) { return a * Rat(-1); }
inline Element operator-(const Element& a, const Element& b) { return a + (-b); }

inline Element elem_mul(const Element& a, const Element& b) {
    require_same_ring(a, b);
    TermMap raw;
    for (auto& [ma, ca] : a.terms) {
        int da = a.ring->mono_degree(ma);
        for (auto& [mb, cb] : b.terms) {
            if (da + a.ring->mono_degree(mb) > a.ring->trunc) continue;
            Mono prod = ma;
            for (int j = 0; j < a.ring->gen_count(); ++j) prod[j] += mb[j];
            raw[prod] += ca * cb * a.ring->koszul_sign(ma, mb);
        }
    }
    return Element{a.ring, a.ring->normalize(std::move(raw))};
}

inline Element operator*(const Element& a, const Element& b) { return elem_mul(a, b); }

inline Element elem_pow(const Element& a, int k) {
    if (k < 0) fail("BadRange", "negative element power");
    Element r = elem_one(a.ring);
    Element base = a;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

inline Element graded_part(const Element& a, int k) {
    Element out{a.ring, {}};
    for (auto& [m, c] : a.terms)
        if (a.ring->mono_degree(m) == k) out.terms.emplace(m, c);
    return out;
}

inline bool is_homogeneous_of(const Element& a, int k) {
    for (auto& [m, c] : a.terms)
        if (a.ring->mono_degree(m) != k) return false;
    return true;
}

inline int max_degree(const Element& a) {
    int d = 0;
    for (auto& [m, c] : a.terms) d = std::max(d, a.ring->mono_degree(m));
    return d;
}

inline Rat constant_term(const Element& a) {
    auto it = a.terms.find(Mono(a.ring->gen_count(), 0));
    return it == a.terms.end() ? Rat(0) : it->second;
}

inline Rat top_coefficient(const Element& a) {
    if (a.ring->top.empty()) fail("NoTopMonomial", "ring has no designated top monomial");
    auto it = a.terms.find(a.ring->top);
    return it == a.terms.end() ? Rat(0) : it->second;
}

// Geometric series against the nilpotent part; unit constant term required.
inline Element elem_invert(const Element& a) {
    Rat c0 = constant_term(a);
    if (!a.ring->coeff_is_unit(c0))
        fail("NonUnitConstantTerm", "constant term " + rat_str(c0) + " is not a unit over " +
                                        coeff_name(a.ring->coeff));
    Element n = a - elem_const(a.ring, c0); // nilpotent: positive degree only
    Element out = elem_zero(a.ring), pw = elem_one(a.ring);
    Rat inv_c0 = a.ring->coeff == Coeff::Z2 ? Rat(1) : Rat(1) / c0;
    Rat scale = inv_c0;
    for (int k = 0; k <= a.ring->trunc; ++k) {
        out = out + pw * scale;
        pw = pw * n;
        if (pw.is_zero()) break;
        scale = a.ring->coeff == Coeff::Z2 ? scale : scale * (-inv_c0);
    }
    return out;
}

inline Element series_exp(const Element& a) {
    if (a.ring->coeff != Coeff::Q)
        fail("NonRationalCoefficients", "exponentials need rational coefficients");
    if (constant_term(a) != 0)
        fail("NonNilpotentArgument", "exp needs a zero constant term");
    Element out = elem_one(a.ring), pw = elem_one(a.ring);
    Rat f = 1;
    for (int k = 1; k <= a.ring->trunc + 1; ++k) {
        pw = pw * a;
        if (pw.is_zero()) break;
        f *= k;
        out = out + pw * (Rat(1) / f);
    }
    return out;
}

// ---- Scalar series (exact rationals, Laurent-capable) ----------------------

struct RationalSeries {
    int min_power = 0;
    int trunc = 0;           // highest power represented, inclusive
    std::vector<Rat> c;      // c[k] = coefficient of y^(min_power+k)

    Rat coeff(int p) const {
        if (p < min_power || p > trunc) return 0;
        size_t i = size_t(p - min_power);
        return i < c.size() ? c[i] : Rat(0);
    }
};

inline RationalSeries rs_make(int min_power, int trunc, std::vector<Rat> c) {
    RationalSeries s{min_power, trunc, std::move(c)};
    size_t cap = size_t(std::max(0, trunc - min_power + 1));
    if (s.c.size() > cap) s.c.resize(cap);
    return s;
}

inline RationalSeries rs_one(int trunc) { return rs_make(0, trunc, {Rat(1)}); }

inline RationalSeries rs_add(const RationalSeries& a, const RationalSeries& b) {
    int mn = std::min(a.min_power, b.min_power), tr = std::min(a.trunc, b.trunc);
    std::vector<Rat> c(size_t(std::max(0, tr - mn + 1)), Rat(0));
    for (int p = mn; p <= tr; ++p) c[size_t(p - mn)] = a.coeff(p) + b.coeff(p);
    return rs_make(mn, tr, std::move(c));
}

inline RationalSeries rs_scale(const RationalSeries& a, const Rat& s) {
    RationalSeries out = a;
    for (auto& x : out.c) x *= s;
    return out;
}

inline RationalSeries rs_mul(const RationalSeries& a, const RationalSeries& b) {
    // with Laurent parts, coefficient p of the product is exact as long as
    // p <= min(a.trunc + b.min_power, b.trunc + a.min_power)
    int mn = a.min_power + b.min_power;
    int tr = std::min(a.trunc + b.min_power, b.trunc + a.min_power);
    std::vector<Rat> c(size_t(std::max(0, tr - mn + 1)), Rat(0));
    for (int i = a.min_power; i <= a.trunc; ++i) {
        Rat ai = a.coeff(i);
        if (ai == 0) continue;
        for (int j = b.min_power; j <= tr - i; ++j) {
            Rat bj = b.coeff(j);
            if (bj != 0) c[size_t(i + j - mn)] += ai * bj;
        }
    }
    return rs_make(mn, tr, std::move(c));
}

// Inverse of a unit power series (min_power 0, nonzero constant term).
inline RationalSeries series_invert(const RationalSeries& s) {
    if (s.min_power != 0 || s.coeff(0) == 0)
        fail("NonUnitConstantTerm", "series inverse needs a unit constant term");
    int tr = s.trunc;
    std::vector<Rat> c(size_t(tr + 1), Rat(0));
    Rat inv0 = Rat(1) / s.coeff(0);
    c[0] = inv0;
    for (int p = 1; p <= tr; ++p) {
        Rat acc = 0;
        for (int k = 1; k <= p; ++k) acc += s.coeff(k) * c[size_t(p - k)];
        c[size_t(p)] = -inv0 * acc;
    }
    return rs_make(0, tr, std::move(c));
}

inline RationalSeries rs_pow(const RationalSeries& s, int e) {
    if (e < 0) return rs_pow(series_invert(s), -e);
    RationalSeries r = rs_one(s.trunc);
    RationalSeries base = s;
    while (e > 0) {
        if (e & 1) r = rs_mul(r, base);
        e >>= 1;
        if (e) base = rs_mul(base, base);
    }
    return r;
}

inline RationalSeries series_exp(const RationalSeries& a) {
    if (a.min_power < 1 && !(a.c.empty()))
        for (int p = a.min_power; p <= 0; ++p)
            if (a.coeff(p) != 0) fail("NonNilpotentArgument", "exp needs positive valuation");
    RationalSeries out = rs_one(a.trunc), pw = rs_one(a.trunc);
    Rat f = 1;
    for (int k = 1; k <= a.trunc; ++k) {
        pw = rs_mul(pw, a);
        f *= k;
        out = rs_add(out, rs_scale(pw, Rat(1) / f));
    }
    return out;
}

inline RationalSeries rs_log(const RationalSeries& a) {
    if (a.min_power != 0 || a.coeff(0) != 1)
        fail("NonUnitConstantTerm", "log needs constant term 1");
    RationalSeries h = a; // h := a - 1, valuation >= 1
    h.c[0] = 0;
    RationalSeries out = rs_make(0, a.trunc, {}), pw = rs_one(a.trunc);
    for (int k = 1; k <= a.trunc; ++k) {
        pw = rs_mul(pw, h);
        Rat sgn = (k % 2 == 0) ? Rat(-1) : Rat(1);
        out = rs_add(out, rs_scale(pw, sgn / k));
    }
    return out;
}

// ---- Series with Element coefficients --------------------------------------

struct FormalSeries {
    char var = 't';
    RingPtr ring;
    int min_power = 0;
    int trunc = 0;
    std::vector<Element> c; // c[k] = coefficient of var^(min_power+k)

    Element coeff(int p) const {
        if (p < min_power || p > trunc) return elem_zero(ring);
        size_t i = size_t(p - min_power);
        return i < c.size() ? c[i] : elem_zero(ring);
    }
};

inline FormalSeries fs_zero(const RingPtr& r, char var, int trunc, int min_power = 0) {
    FormalSeries s{var, r, min_power, trunc, {}};
    s.c.assign(size_t(std::max(0, trunc - min_power + 1)), elem_zero(r));
    return s;
}

inline FormalSeries fs_one(const RingPtr& r, char var, int trunc) {
    FormalSeries s = fs_zero(r, var, trunc);
    if (trunc >= 0) s.c[0] = elem_one(r);
    return s;
}

inline void fs_set(FormalSeries& s, int p, const Element& e) {
    if (p < s.min_power || p > s.trunc) fail("BadRange", "series power out of range");
    s.c[size_t(p - s.min_power)] = e;
}

inline FormalSeries fs_add(const FormalSeries& a, const FormalSeries& b) {
    if (a.ring != b.ring) fail("RingMismatch", "series over different rings");
    FormalSeries out = fs_zero(a.ring, a.var, std::min(a.trunc, b.trunc),
                               std::min(a.min_power, b.min_power));
    for (int p = out.min_power; p <= out.trunc; ++p) fs_set(out, p, a.coeff(p) + b.coeff(p));
    return out;
}

inline FormalSeries fs_scale(const FormalSeries& a, const Element& e) {
    FormalSeries out = a;
    for (auto& x : out.c) x = x * e;
    return out;
}

inline FormalSeries fs_mul(const FormalSeries& a, const FormalSeries& b) {
    if (a.ring != b.ring) fail("RingMismatch", "series over different rings");
    int mn = a.min_power + b.min_power;
    int tr = std::min(a.trunc + b.min_power, b.trunc + a.min_power);
    FormalSeries out = fs_zero(a.ring, a.var, tr, mn);
    for (int i = a.min_power; i <= a.trunc; ++i) {
        Element ai = a.coeff(i);
        if (ai.is_zero()) continue;
        for (int j = b.min_power; j <= tr - i; ++j) {
            Element bj = b.coeff(j);
            if (!bj.is_zero()) fs_set(out, i + j, out.coeff(i + j) + ai * bj);
        }
    }
    return out;
}

inline FormalSeries series_invert(const FormalSeries& s) {
    if (s.min_power != 0) fail("NonUnitConstantTerm", "series inverse needs min power 0");
    FormalSeries out = fs_zero(s.ring, s.var, s.trunc);
    Element inv0 = elem_invert(s.coeff(0)); // checks the unit condition
    fs_set(out, 0, inv0);
    for (int p = 1; p <= s.trunc; ++p) {
        Element acc = elem_zero(s.ring);
        for (int k = 1; k <= p; ++k) acc = acc + s.coeff(k) * out.coeff(p - k);
        fs_set(out, p, -(inv0 * acc));
    }
    return out;
}

inline FormalSeries series_exp(const FormalSeries& a) {
    if (a.ring->coeff != Coeff::Q)
        fail("NonRationalCoefficients", "exponentials need rational coefficients");
    if (a.min_power < 0) fail("NonNilpotentArgument", "exp of a Laurent series");
    if (constant_term(a.coeff(0)) != 0)
        fail("NonNilpotentArgument", "exp needs nilpotent constant coefficient");
    FormalSeries out = fs_one(a.ring, a.var, a.trunc);
    FormalSeries pw = fs_one(a.ring, a.var, a.trunc);
    Rat f = 1;
    int bound = a.trunc + a.ring->trunc + 1;
    for (int k = 1; k <= bound; ++k) {
        pw = fs_mul(pw, a);
        bool zero = true;
        for (auto& e : pw.c)
            if (!e.is_zero()) { zero = false; break; }
        if (zero) break;
        f *= k;
        Element s = elem_const(a.ring, Rat(1) / f);
        out = fs_add(out, fs_scale(pw, s));
    }
    return out;
}

// Scalar series lifted into a ring.
inline FormalSeries fs_from_rs(const RingPtr& r, char var, const RationalSeries& s) {
    FormalSeries out = fs_zero(r, var, s.trunc, s.min_power);
    for (int p = s.min_power; p <= s.trunc; ++p) fs_set(out, p, elem_const(r, s.coeff(p)));
    return out;
}

} // namespace ccalc
