#include "oracles.hpp"

#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>

namespace oracle {

std::string fixture(const std::string& relative) { return std::string(CGT_TEST_FIXTURES) + "/" + relative; }

std::complex<long double> evaluate(const cgt::Cyclotomic& a) {
  std::complex<long double> s = 0;
  const long double n = static_cast<long double>(a.conductor());
  for (const auto& t : a.terms()) {
    long double ang = 2 * std::numbers::pi_v<long double> * t.exponent / n;
    s += static_cast<long double>(t.coefficient.get_d()) * std::polar(1.0L, ang);
  }
  return s;
}

namespace {

struct NumParser {
  const std::string& s;
  std::size_t i = 0;
  using C = std::complex<long double>;
  void ws() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  long num() {
    ws();
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
    return v;
  }
  C expr() {
    C v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  C term() {
    C v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  C unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    C b = primary();
    if (eat('^')) {
      bool paren = eat('('), neg = eat('-');
      long e = num();
      if (paren) eat(')');
      b = std::pow(b, static_cast<long double>(neg ? -e : e));
    }
    return b;
  }
  C primary() {
    if (eat('(')) {
      C v = expr();
      eat(')');
      return v;
    }
    if (eat('E')) {
      eat('(');
      long n = num();
      eat(')');
      return std::polar(1.0L, 2 * std::numbers::pi_v<long double> / n);
    }
    return C(static_cast<long double>(num()), 0);
  }
};

}  // namespace

std::complex<long double> evaluate_text(const std::string& text) {
  NumParser p{text};
  return p.expr();
}

std::vector<Permutation> closure(std::size_t degree, const std::vector<Permutation>& gens) {
  PermSet seen;
  std::vector<Permutation> out;
  std::deque<Permutation> todo;
  Permutation id(degree);
  seen.insert(id);
  todo.push_back(id);
  while (!todo.empty()) {
    Permutation g = todo.front();
    todo.pop_front();
    out.push_back(g);
    for (const auto& s : gens) {
      Permutation h = g * s;
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return out;
}

long closure_order(std::size_t degree, const std::vector<Permutation>& gens) {
  return static_cast<long>(closure(degree, gens).size());
}

std::vector<Permutation> conjugacy_class(const Permutation& rep, const std::vector<Permutation>& gens) {
  PermSet seen{rep};
  std::vector<Permutation> out{rep};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : gens) {
      Permutation h = s.inverse() * out[i] * s;
      if (seen.insert(h).second) out.push_back(h);
    }
  return out;
}

long pair_count(const std::vector<Permutation>& c1, const PermSet& c2, const Permutation& z) {
  long n = 0;
  for (const auto& x : c1)
    if (c2.count(x.inverse() * z)) ++n;
  return n;
}

namespace {

std::string key_of(const Permutation& x, const Permutation& y, const std::vector<std::string>& words) {
  auto [xr, yr] = cgt::reciprocal(x, y);
  return cgt::canonical_display(cgt::extended_fingerprint(x, y, words), cgt::extended_fingerprint(xr, yr, words));
}

}  // namespace

std::vector<TripleClass> triple_classes(const std::vector<Permutation>& elements, const Permutation& x_rep,
                                        const std::vector<Permutation>& y_class, std::uint64_t n,
                                        const std::vector<std::string>& words) {
  std::vector<Permutation> cx;
  for (const auto& g : elements)
    if (g * x_rep == x_rep * g) cx.push_back(g);
  PermSet todo;
  for (const auto& y : y_class)
    if (cgt::element_order(x_rep * y) == n) todo.insert(y);
  std::vector<TripleClass> out;
  const auto order = static_cast<long>(elements.size());
  while (!todo.empty()) {
    Permutation y0 = *todo.begin();
    PermSet orbit;
    for (const auto& c : cx) orbit.insert(c.inverse() * y0 * c);
    for (const auto& y : orbit) todo.erase(y);
    TripleClass t;
    t.x = x_rep;
    t.y = y0;
    t.orbit_size = static_cast<long>(orbit.size());
    t.pair_centralizer = static_cast<long>(cx.size()) / t.orbit_size;
    t.key = key_of(x_rep, y0, words);
    t.generates = closure_order(x_rep.degree(), {x_rep, y0}) == order;
    out.push_back(std::move(t));
  }
  return out;
}

std::map<std::string, long> exhaustive_fingerprints(const std::vector<Permutation>& elements,
                                                    const std::vector<Permutation>& x_reps, std::uint64_t n,
                                                    bool generating_only, long group_order,
                                                    const std::vector<std::string>& words) {
  std::map<std::string, long> out;
  std::map<std::string, bool> checked;
  for (const auto& x : x_reps)
    for (const auto& y : elements) {
      if (cgt::element_order(y) != 3 || cgt::element_order(x * y) != n) continue;
      std::string k = key_of(x, y, words);
      if (generating_only) {
        auto it = checked.find(k);
        if (it == checked.end())
          it = checked.emplace(k, closure_order(x.degree(), {x, y}) == group_order).first;
        if (!it->second) continue;
      }
      ++out[k];
    }
  return out;
}

}  // namespace oracle
