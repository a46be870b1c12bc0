// Permutations of {0..n-1}, printed and parsed 1-based in cycle notation.
//
// Products apply left to right: (a * b)(i) = b(a(i)), so i^(ab) = (i^a)^b.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cgt {

using Point = std::uint32_t;

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  // Throws std::invalid_argument unless images is a bijection.
  explicit Permutation(std::vector<Point> images);

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point i) const { return img_[i]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(long k) const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<Point> img_;
};

// Parses "(1,2,3)(4,5)" or "()". degree 0 means the largest point named.
// Throws ParseError on bad syntax, a repeated point, or a point > degree.
Permutation perm_from_cycles(std::string_view text, std::size_t degree = 0);
// Disjoint cycles sorted by least moved point; "()" for the identity.
std::string to_cycles(const Permutation& g);

std::uint64_t element_order(const Permutation& g);
std::vector<std::size_t> cycle_type(const Permutation& g);  // sorted lengths > 1

struct PermutationHash {
  std::size_t operator()(const Permutation& g) const noexcept;
};

}  // namespace cgt
