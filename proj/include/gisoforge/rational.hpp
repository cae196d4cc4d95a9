#ifndef GISOFORGE_RATIONAL_HPP
#define GISOFORGE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace gisoforge {

// Exact rational arithmetic.  All scores, tolerances and polynomial
// coefficients use this type; no floating point is involved in any check.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long long num, long long den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

// gmpxx has no long long overloads; all 64-bit counts pass through here.
inline Rational rat(long long v) { return Rational(static_cast<long>(v)); }

// Parses "a/b" and decimal strings like "0.05" exactly.
Rational parse_rational(const std::string &text);

// Floor of a nonnegative rational times an integer, computed exactly.
long long floor_times(const Rational &r, long long factor);

// Smallest integer >= r (r nonnegative).
long long ceil_of(const Rational &r);

std::string to_string(const Rational &r);

} // namespace gisoforge

#endif // GISOFORGE_RATIONAL_HPP
