// Arbitrary-precision integers and rationals (GMP-backed) plus the text
// conventions used by every file format: integers in decimal, rationals as
// "p/q" in lowest terms, "p" when the denominator is 1.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cgt {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer to_integer(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

// Throws std::overflow_error if the value does not fit.
std::uint64_t to_u64(const Integer& value);

}  // namespace cgt
