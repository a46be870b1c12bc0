#include "cgt/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "cgt/error.hpp"

namespace cgt {

Permutation::Permutation(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p]) throw std::invalid_argument("images are not a bijection");
    seen[p] = 1;
  }
}

bool Permutation::is_identity() const {
  for (Point i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.img_.resize(img_.size());
  for (Point i = 0; i < img_.size(); ++i) out.img_[img_[i]] = i;
  return out;
}

Permutation Permutation::pow(long k) const {
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long n = k < 0 ? -static_cast<unsigned long>(k) : k;
  Permutation acc(degree());
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch in product");
  Permutation out;
  out.img_.resize(a.degree());
  for (Point i = 0; i < a.img_.size(); ++i) out.img_[i] = b.img_[a.img_[i]];
  return out;
}

Permutation perm_from_cycles(std::string_view s, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  Point largest = 0;
  skip();
  if (i == s.size()) throw ParseError("empty permutation", 0);
  while (i < s.size()) {
    if (s[i] != '(') throw ParseError("expected '('", i);
    ++i;
    skip();
    std::vector<Point> cyc;
    if (i < s.size() && s[i] == ')') {
      ++i;
      skip();
      continue;
    }
    for (;;) {
      skip();
      std::size_t start = i;
      unsigned long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > 1u << 24) throw ParseError("point too large", start);
        ++i;
      }
      if (start == i) throw ParseError("expected a point", i);
      if (v == 0) throw ParseError("points are 1-based", start);
      cyc.push_back(static_cast<Point>(v - 1));
      largest = std::max<Point>(largest, static_cast<Point>(v));
      skip();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ')') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or ')'", i);
    }
    cycles.push_back(std::move(cyc));
    skip();
  }
  if (degree == 0) degree = largest;
  if (largest > degree)
    throw ParseError("point " + std::to_string(largest) + " exceeds degree " + std::to_string(degree));
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (Point p : c) {
      if (used[p]) throw ParseError("repeated point " + std::to_string(p + 1));
      used[p] = 1;
    }
    for (std::size_t k = 0; k < c.size(); ++k) img[c[k]] = c[(k + 1) % c.size()];
  }
  return Permutation(std::move(img));
}

std::string to_cycles(const Permutation& g) {
  std::string out;
  std::vector<char> seen(g.degree(), 0);
  for (Point i = 0; i < g.degree(); ++i) {
    if (seen[i] || g[i] == i) continue;
    out += '(';
    Point j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = g[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<std::size_t> cycle_type(const Permutation& g) {
  std::vector<std::size_t> out;
  std::vector<char> seen(g.degree(), 0);
  for (Point i = 0; i < g.degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point j = i; !seen[j]; j = g[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len > 1) out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t element_order(const Permutation& g) {
  std::uint64_t o = 1;
  for (std::size_t len : cycle_type(g)) o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

std::size_t PermutationHash::operator()(const Permutation& g) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Point p : g.images()) {
    h ^= p;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace cgt
