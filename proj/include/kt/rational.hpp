#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kt {

// The only scalar type in the library. GMP keeps every value in lowest
// terms with a positive denominator and all arithmetic exact.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q". q must be positive after canonicalization.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational literal: '" + text + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
  r.canonicalize();
  return r;
}

/// "p/q" when the denominator is not 1, plain integer otherwise.
inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace kt
