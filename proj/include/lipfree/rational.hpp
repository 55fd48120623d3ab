#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lipfree {

/// Exact rational scalar used for every distance, coefficient and radius.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "-0.125" or "1e-3".
/// Throws lipfree::Error(ErrorCode::ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Exact conversion of a double through its shortest round-trip decimal text.
Rational rational_from_double(double value);

/// p / q in lowest terms; q must be nonzero.
inline Rational fraction(long p, unsigned long q) {
  Rational out(p);
  out /= Rational(q);
  return out;
}

inline Rational abs_value(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace lipfree
