// Ordinary character tables with power maps.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/cyclotomic.hpp"
#include "cgt/rational.hpp"

namespace cgt {

using ClassIndex = std::size_t;

struct ConjClass {
  std::string name;
  long element_order = 1;
  Integer centralizer_order = 1;
  std::map<long, ClassIndex> power_maps;  // prime -> class index
  bool operator==(const ConjClass&) const = default;
};

class CharacterTable {
public:
  std::string group_name;
  Integer group_order = 1;
  std::vector<ConjClass> classes;
  std::vector<std::vector<Cyclotomic>> irreducibles;  // [character][class]

  std::size_t size() const { return classes.size(); }
  Integer class_size(ClassIndex c) const { return group_order / classes[c].centralizer_order; }
  const Cyclotomic& value(std::size_t chi, ClassIndex c) const { return irreducibles[chi][c]; }

  // Checks every invariant; throws InvariantError naming the first failure.
  void validate() const;

  bool operator==(const CharacterTable&) const = default;
};

// Parses and fully validates. Throws ParseError or InvariantError.
CharacterTable parse_table(std::string_view document);
CharacterTable load_table(const std::filesystem::path& path);
// Canonical text; parse_table(print_table(t)) == t.
std::string print_table(const CharacterTable& t);

// Throws UnknownClass.
ClassIndex class_index(const CharacterTable& t, std::string_view name);
// Class of g^k for g in class c. Primes without a stored map (they never
// divide an element order) act as Galois automorphisms on the columns.
ClassIndex power_class(const CharacterTable& t, ClassIndex c, long k);
ClassIndex inverse_class(const CharacterTable& t, ClassIndex c);
std::set<long> element_order_spectrum(const CharacterTable& t);

}  // namespace cgt
