#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tldimer {

// Arbitrary-precision integers and rationals. mpq_class keeps values
// canonical (lowest terms, positive denominator) as long as every value
// entering arithmetic is canonical, which parse_rational guarantees.
using Int = mpz_class;
using Rational = mpq_class;

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }

// "p/q" in lowest terms, "p" when q == 1.
inline std::string rational_str(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& s) {
    auto fail = [&] { throw std::invalid_argument("invalid rational: '" + s + "'"); };
    if (s.empty()) fail();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail();
    bool slash_seen = false;
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] == '/') {
            if (slash_seen || k + 1 == s.size() || k == i) fail();
            slash_seen = true;
        } else if (s[k] < '0' || s[k] > '9') {
            fail();
        }
    }
    Rational r;
    if (r.set_str(s, 10) != 0) fail();
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Int parse_int(const std::string& s) {
    Int v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("invalid integer: '" + s + "'");
    return v;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
    Rational r(1);
    for (unsigned long i = 0; i < e; ++i) r *= base;
    return r;
}

// binom(n, k); zero outside 0 <= k <= n.
inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Int factorial(long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return r;
}

}  // namespace tldimer
