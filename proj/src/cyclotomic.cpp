#include "cgt/cyclotomic.hpp"

#include <cctype>
#include <numeric>
#include <utility>

#include "cgt/error.hpp"

namespace cgt {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

long inverse_mod(long a, long n) {
  long t = 0, new_t = 1, r = n, new_r = mod(a, n);
  while (new_r != 0) {
    long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return mod(t, n);
}

struct PrimePower {
  long p, e, pe;
};

std::vector<PrimePower> factor(long n) {
  std::vector<PrimePower> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower f{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++f.e;
      f.pe *= p;
    }
    out.push_back(f);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

// Per-prime data for a conductor n: a_p(k) = (k mod p^e) * u mod p^e.
struct Digit {
  PrimePower f;
  long u;
  long digit(long k) const { return (k % f.pe) * u % f.pe / (f.pe / f.p); }
};

std::vector<Digit> digits_for(long n) {
  std::vector<Digit> out;
  for (const auto& f : factor(n))
    out.push_back({f, inverse_mod(n / f.pe, f.pe)});
  return out;
}

// Rewrites dense[] over Q(E(n)) in the basis, in place. n % 4 != 2.
void reduce_basis(long n, std::vector<Rational>& c) {
  for (const auto& d : digits_for(n)) {
    const long step = n / d.f.p;
    const bool odd = d.f.p != 2;
    for (long k = 0; k < n; ++k) {
      if (sgn(c[k]) == 0) continue;
      long dg = d.digit(k);
      if (odd && dg == 0) {
        for (long j = 1; j < d.f.p; ++j) c[(k + j * step) % n] -= c[k];
        c[k] = 0;
      } else if (!odd && dg == 1) {
        c[(k + step) % n] -= c[k];
        c[k] = 0;
      }
    }
  }
}

// Shrinks n while the value lies in a smaller cyclotomic field.
// Precondition: c is in basis form over n.
void minimize(long& n, std::vector<Rational>& c) {
  bool changed = true;
  while (changed && n > 1) {
    changed = false;
    for (const auto& d : digits_for(n)) {
      const long p = d.f.p;
      if (d.f.e >= 2) {
        bool ok = true;
        for (long k = 0; k < n && ok; ++k)
          if (sgn(c[k]) != 0 && k % p != 0) ok = false;
        if (!ok) continue;
        long div = (p == 2 && d.f.e == 2) ? 4 : p;
        long m = n / div;
        std::vector<Rational> next(m);
        for (long k = 0; k < n; ++k)
          if (sgn(c[k]) != 0) next[k / div] = c[k];
        n = m;
        c = std::move(next);
        changed = true;
        break;
      }
      if (p == 2) continue;
      // p exactly divides n: coefficients must be constant across the p-1
      // basis exponents sharing a residue mod m.
      const long m = n / p;
      std::vector<Rational> next(m);
      bool ok = true;
      std::vector<char> seen(m, 0);
      for (long k = 0; k < n && ok; ++k) {
        if (sgn(c[k]) == 0) continue;
        long r = k % m;
        if (seen[r]) continue;
        seen[r] = 1;
        // k0 = CRT(r mod m, 0 mod p)
        long k0 = -1;
        for (long j = 0; j < p; ++j) {
          long cand = r + j * m;
          if (cand % p == 0) {
            k0 = cand;
            break;
          }
        }
        for (long j = 1; j < p && ok; ++j) {
          long kk = (k0 + j * m) % n;
          if (c[kk] != c[k]) ok = false;
        }
        if (ok) next[k0 / p] = -c[k];
      }
      if (!ok) continue;
      n = m;
      c = std::move(next);
      changed = true;
      break;
    }
  }
}

}  // namespace

Cyclotomic Cyclotomic::from_dense(long n, std::vector<Rational> c) {
  if (n < 1 || static_cast<long>(c.size()) != n)
    throw std::invalid_argument("from_dense: bad conductor or size");
  if (n % 4 == 2) {
    // E(2m)^k = (-1)^k E(m)^(k(m+1)/2), m odd
    long m = n / 2;
    std::vector<Rational> next(m);
    for (long k = 0; k < n; ++k) {
      if (sgn(c[k]) == 0) continue;
      long t = mod(k * ((m + 1) / 2), m);
      if (k % 2) next[t] -= c[k];
      else next[t] += c[k];
    }
    n = m;
    c = std::move(next);
  }
  reduce_basis(n, c);
  minimize(n, c);
  Cyclotomic out;
  out.conductor_ = n;
  for (long k = 0; k < n; ++k)
    if (sgn(c[k]) != 0) out.terms_.push_back({k, std::move(c[k])});
  if (out.terms_.empty()) out.conductor_ = 1;
  return out;
}

namespace {
Cyclotomic build(long n, std::vector<Rational>&& c) {
  return Cyclotomic::from_dense(n, std::move(c));
}

std::vector<Rational> embed(const Cyclotomic& a, long n) {
  std::vector<Rational> c(n);
  long scale = n / a.conductor();
  for (const auto& t : a.terms()) c[t.exponent * scale % n] += t.coefficient;
  return c;
}
}  // namespace

Cyclotomic::Cyclotomic(const Rational& value) {
  if (sgn(value) != 0) terms_.push_back({0, value});
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
  if (n < 1) throw std::invalid_argument("root_of_unity: n must be positive");
  std::vector<Rational> c(n);
  c[mod(k, n)] = 1;
  return build(n, std::move(c));
}

Rational Cyclotomic::to_rational() const {
  if (conductor_ != 1)
    throw NotRational("value " + to_string() + " is not rational");
  return terms_.empty() ? Rational(0) : terms_.front().coefficient;
}

Cyclotomic Cyclotomic::conjugate() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(long j) const {
  if (conductor_ == 1) return *this;
  if (std::gcd(mod(j, conductor_), conductor_) != 1)
    throw std::invalid_argument("galois: exponent not coprime to conductor");
  std::vector<Rational> c(conductor_);
  for (const auto& t : terms_) c[mod(t.exponent * j, conductor_)] += t.coefficient;
  return build(conductor_, std::move(c));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
  if (conductor_ == 1) return Cyclotomic(Rational(1) / terms_.front().coefficient);
  // Product of the other Galois conjugates; x times it is the (rational) norm.
  Cyclotomic others(1L);
  for (long j = 2; j < conductor_; ++j)
    if (std::gcd(j, conductor_) == 1) others *= galois(j);
  Rational norm = (*this * others).to_rational();
  return others * Cyclotomic(Rational(1) / norm);
}

Cyclotomic Cyclotomic::pow(long e) const {
  Cyclotomic base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  Cyclotomic acc(1L);
  while (n) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return acc;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  if (rhs.is_zero()) return *this;
  if (conductor_ == 1 && rhs.conductor_ == 1) {
    Rational s = to_rational() + rhs.to_rational();
    return *this = Cyclotomic(s);
  }
  long n = std::lcm(conductor_, rhs.conductor_);
  auto c = embed(*this, n);
  long scale = n / rhs.conductor_;
  for (const auto& t : rhs.terms_) c[t.exponent * scale % n] += t.coefficient;
  return *this = build(n, std::move(c));
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this += -rhs; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = Cyclotomic();
  if (rhs.conductor_ == 1) {
    const Rational& r = rhs.terms_.front().coefficient;
    for (auto& t : terms_) t.coefficient *= r;
    return *this;
  }
  if (conductor_ == 1) {
    Rational r = terms_.front().coefficient;
    *this = rhs;
    for (auto& t : terms_) t.coefficient *= r;
    return *this;
  }
  long n = std::lcm(conductor_, rhs.conductor_);
  long sa = n / conductor_, sb = n / rhs.conductor_;
  std::vector<Rational> c(n);
  Rational tmp;
  for (const auto& a : terms_)
    for (const auto& b : rhs.terms_) {
      mpq_mul(tmp.get_mpq_t(), a.coefficient.get_mpq_t(), b.coefficient.get_mpq_t());
      c[(a.exponent * sa + b.exponent * sb) % n] += tmp;
    }
  return *this = build(n, std::move(c));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

std::string Cyclotomic::to_string() const {
  if (terms_.empty()) return "0";
  if (conductor_ == 1) return cgt::to_string(terms_.front().coefficient);
  std::string out;
  const std::string root = "E(" + std::to_string(conductor_) + ")";
  for (const auto& t : terms_) {
    std::string piece;
    const Rational& c = t.coefficient;
    if (t.exponent == 0) {
      piece = cgt::to_string(c);
    } else {
      std::string r = root;
      if (t.exponent != 1) r += "^" + std::to_string(t.exponent);
      if (c == 1) piece = r;
      else if (c == -1) piece = "-" + r;
      else piece = cgt::to_string(c) + "*" + r;
    }
    if (!out.empty() && piece.front() != '-') out += "+";
    out += piece;
  }
  return out;
}

Cyclotomic add(const Cyclotomic& a, const Cyclotomic& b) { return a + b; }
Cyclotomic mul(const Cyclotomic& a, const Cyclotomic& b) { return a * b; }
Cyclotomic neg(const Cyclotomic& a) { return -a; }

namespace {

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  Cyclotomic parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty cyclotomic expression", pos_);
    Cyclotomic v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
    return v;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!accept(ch)) throw ParseError(std::string("expected '") + ch + "'", pos_);
  }

  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  long small_integer() {
    skip();
    std::size_t start = pos_;
    Integer z = integer();
    if (!z.fits_slong_p()) throw ParseError("integer too large", start);
    return z.get_si();
  }

  Cyclotomic expr() {
    Cyclotomic v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }

  Cyclotomic term() {
    Cyclotomic v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Cyclotomic d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v = v / d;
      } else {
        return v;
      }
    }
  }

  Cyclotomic unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Cyclotomic power() {
    Cyclotomic base = primary();
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    long e = small_integer();
    if (paren) expect(')');
    if (negative && base.is_zero()) throw ParseError("zero to a negative power", pos_);
    return base.pow(negative ? -e : e);
  }

  Cyclotomic primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Cyclotomic v = expr();
      expect(')');
      return v;
    }
    if (ch == 'E') {
      ++pos_;
      expect('(');
      skip();
      std::size_t at = pos_;
      bool negative = accept('-');
      long n = small_integer();
      if (negative || n <= 0) throw ParseError("E(n) requires n > 0", at);
      expect(')');
      return Cyclotomic::root_of_unity(n, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return Cyclotomic(integer());
    throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Cyclotomic parse_cyclo(std::string_view text) { return Parser(text).parse(); }

}  // namespace cgt
