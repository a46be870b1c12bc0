// Exact elements of cyclotomic fields.
//
// A value is stored over the Zumbroich basis of Q(E(n)), where n is the
// smallest conductor of any cyclotomic field containing the value (never
// congruent to 2 mod 4). With both the basis and the conductor canonical,
// equality is a comparison of term lists.
//
// Basis: for n = prod p^e write, for each prime p, a_p(k) = k * (n/p^e)^-1
// mod p^e and d_p(k) = floor(a_p(k) / p^(e-1)). E(n)^k is a basis element iff
// d_p(k) != 0 for every odd p and d_2(k) == 0.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/rational.hpp"

namespace cgt {

class Cyclotomic {
public:
  struct Term {
    long exponent;       // k in E(n)^k, 0 <= k < n, a basis exponent
    Rational coefficient;  // never zero
    bool operator==(const Term&) const = default;
  };

  Cyclotomic() = default;
  Cyclotomic(long value) : Cyclotomic(Rational(value)) {}  // NOLINT
  Cyclotomic(const Integer& value) : Cyclotomic(Rational(value)) {}  // NOLINT
  Cyclotomic(const Rational& value);  // NOLINT

  // E(n)^k for n >= 1 and any integer k.
  static Cyclotomic root_of_unity(long n, long k = 1);

  long conductor() const { return conductor_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return conductor_ == 1; }

  // Throws NotRational when the conductor exceeds 1.
  Rational to_rational() const;

  // Complex conjugate: E(n)^k -> E(n)^-k.
  Cyclotomic conjugate() const;
  // Galois image E(n)^k -> E(n)^(k*j); gcd(j, conductor) must be 1.
  Cyclotomic galois(long j) const;
  // Throws DivisionByZero for zero.
  Cyclotomic inverse() const;
  Cyclotomic pow(long exponent) const;

  std::string to_string() const;

  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }
  Cyclotomic operator-() const;

  bool operator==(const Cyclotomic&) const = default;

  // Builds the canonical value of sum_k coeffs[k] * E(n)^k. Any n >= 1 is
  // accepted; coeffs.size() must equal n.
  static Cyclotomic from_dense(long n, std::vector<Rational> coeffs);

private:
  long conductor_ = 1;
  std::vector<Term> terms_;
};

Cyclotomic add(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic mul(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic neg(const Cyclotomic& a);
inline Cyclotomic conjugate(const Cyclotomic& a) { return a.conjugate(); }
inline Rational to_rational(const Cyclotomic& a) { return a.to_rational(); }

// Grammar (whitespace ignored):
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := unary { ('*'|'/') unary }
//   unary   := ('+'|'-') unary | power
//   power   := primary [ '^' exponent ]
//   exponent:= ['+'|'-'] integer | '(' ['+'|'-'] integer ')'
//   primary := integer | 'E(' integer ')' | '(' expr ')'
// Throws ParseError (with byte offset) on malformed text or E(n), n <= 0.
Cyclotomic parse_cyclo(std::string_view text);

}  // namespace cgt
