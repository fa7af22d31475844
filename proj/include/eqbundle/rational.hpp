#pragma once

#include <gmpxx.h>

#include <string>

#include "eqbundle/errors.hpp"

namespace eqbundle {

// Exact arbitrary-precision arithmetic. GMP supplies the integer and rational
// types; everything in this project that is not a cyclotomic lives in these.
using Int = mpz_class;
using Rat = mpq_class;

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// gmpxx has no long long constructor; all our long long values fit in long.
inline Rat rat_ll(long long v) { return Rat(static_cast<long>(v)); }

/// 1/q with the canonical sign convention (GMP requires canonical rationals).
inline Rat rat_inv(const Rat& q) {
    if (q == 0) throw DivisionByZero("rational reciprocal of zero");
    Rat r(q.get_den(), q.get_num());
    r.canonicalize();
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Reduce a rational into [0, 1); used for rotation angles measured in turns.
inline Rat mod1(const Rat& q) {
    Int f = floor_div(q.get_num(), q.get_den());
    Rat r = q - Rat(f);
    r.canonicalize();
    return r;
}

inline std::string int_str(const Int& v) { return v.get_str(); }

/// "p/q" for genuine fractions, plain "p" for integers.
inline std::string rat_str(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parse "p", "-p" or "p/q" with q > 0. Whitespace is not allowed.
inline Rat parse_fraction(const std::string& text) {
    if (text.empty()) throw ParseError("empty fraction");
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
        if (!ok) throw ParseError("malformed fraction '" + text + "'");
    }
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den <= 0) throw ParseError("fraction '" + text + "' needs a positive denominator");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed fraction '" + text + "'");
    }
}

inline long to_long(const Int& v) {
    if (!v.fits_slong_p()) throw InternalError("integer out of long range: " + v.get_str());
    return v.get_si();
}

inline long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

}  // namespace eqbundle
