#ifndef DULAC_RATIONAL_HPP
#define DULAC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "dulac/errors.hpp"

namespace dulac {

// Exact rationals. GMP keeps values canonical (reduced, positive denominator)
// through arithmetic as long as inputs are canonical; parse_rational enforces
// that at the boundary.
using Rational = mpq_class;

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rational parse_rational(const std::string& s);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

// r^e for integer e; e < 0 requires r != 0.
Rational pow_rational(const Rational& r, long e);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

} // namespace dulac

#endif
