// Elimination of candidate simple subgroups by order arithmetic.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/chartab.hpp"
#include "cgt/rational.hpp"

namespace cgt {

enum class Family { L2, L3, U3, L4, U4, S4 };

std::optional<Family> parse_family(std::string_view name);
std::string family_name(Family f);

struct FamilyBound {
  Family family;
  std::uint64_t q;  // prime power >= 2
};

// Order of an element every group of the family contains:
//   L2: (q+1)/gcd(2,q-1)      L3: (q^2+q+1)/gcd(3,q-1)
//   U3: (q^2-q+1)/gcd(3,q+1)  L4, U4, S4: (q^2+1)/gcd(2,q-1)
// Throws std::invalid_argument unless q is a prime power >= 2.
std::uint64_t family_witness_order(const FamilyBound& fb);
// Order of the simple group L2(q), ..., S4(q).
Integer family_group_order(const FamilyBound& fb);
bool is_prime_power(std::uint64_t q);

struct Candidate {
  std::string name;
  Integer order;
  std::vector<std::uint64_t> witness_orders;
  std::optional<FamilyBound> family;
  std::vector<std::string> contains;  // names of other candidates it contains
  // Explicit witnesses followed by the family witness, if any.
  std::vector<std::uint64_t> all_witnesses() const;
};

enum class Verdict { Pass, Eliminate };

struct Decision {
  Verdict verdict = Verdict::Pass;
  std::string code;  // LAGRANGE, SPECTRUM, CONTAINS, RETAINED, PASS
  std::uint64_t witness = 0;
  std::string detail;
};

Decision lagrange_screen(const Candidate& c, const Integer& target_order);
Decision spectrum_screen(const Candidate& c, const std::set<long>& target_spectrum);

struct ScreenLine {
  std::string name;
  Decision decision;
};

// Lagrange, then spectrum, then containment of an eliminated candidate.
// Survivors are RETAINED: eliminating them needs an argument this tool does
// not make.
std::vector<ScreenLine> run_screen(const std::vector<Candidate>& candidates, const CharacterTable& table);

// {"candidates": [{"name", "order"?, "witnessOrders"?, "family"?, "q"?,
// "contains"?}, ...]}. "order" may be omitted when family and q are given.
std::vector<Candidate> parse_candidates(std::string_view document);
std::vector<Candidate> load_candidates(const std::filesystem::path& path);

// One line per candidate: NAME<TAB>PASS|ELIMINATE<TAB>CODE<TAB>detail.
std::string format_screen(const std::vector<ScreenLine>& lines, const std::string& target_name);

}  // namespace cgt
