#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "error.hpp"

namespace ccalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Canonical exact text form: "7", "-3/2".
inline std::string rat_str(const Rat& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

inline Rat rat_parse(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) fail("BadSchema", "zero denominator in '" + s + "'");
        return Rat(n, d);
    } catch (const CalcError&) {
        throw;
    } catch (const std::exception&) {
        fail("BadSchema", "not a rational literal: '" + s + "'");
    }
}

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int ipow(Int b, int e) {
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Generalized binomial coefficient: upper index may be negative,
// lower index must not be. Exact (the running product divides evenly).
inline Int binom_int(const Int& n, const Int& k) {
    if (k < 0) fail("NegativeK", "binomial lower index must be >= 0, got " + k.str());
    Int r = 1;
    for (Int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& b, int e) {
    if (e < 0) {
        if (b == 0) fail("NonUnitConstantTerm", "inverse of zero rational");
        return Rat(1) / rat_pow(b, -e);
    }
    Rat r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace ccalc
