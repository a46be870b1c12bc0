// Symmetrized structure constants, order profiles and rational ledgers.
//
//   xi(C1,C2,C3) = |C1||C2||C3| / |G|^2 * sum_chi chi(C1) chi(C2) chi(C3^-1) / chi(1)
//
// which is the number of pairs (x,y) in C1 x C2 with xy = z, for a fixed
// z in C3, divided by |C_G(z)|.

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgt/chartab.hpp"
#include "cgt/rational.hpp"

namespace cgt {

struct ClassTriple {
  ClassIndex c1 = 0, c2 = 0, c3 = 0;
  bool operator==(const ClassTriple&) const = default;
};

// Throws NotRational if the character sum is irrational and InvariantError
// if it is negative; either means the table is corrupt.
Rational xi(const CharacterTable& t, const ClassTriple& tr);

struct ProfileEntry {
  ClassTriple triple;
  std::string label;  // "2A,3A,5A"
  Rational value;
};

// Every triple with element orders (o1,o2,o3), in class order. Zero values
// are dropped unless include_zero.
std::vector<ProfileEntry> xi_profile(const CharacterTable& t, std::array<long, 3> orders,
                                     bool include_zero = false);

// Accepts "2B,3A,5A". Throws UnknownClass or ParseError.
ClassTriple parse_triple(const CharacterTable& t, std::string_view names);

struct Ledger {
  std::string name;
  Rational total;
  std::vector<std::pair<std::string, Rational>> parts;
  // Optional link to a table: total must equal the sum of xi over these
  // triples (several triples when a constant is stated summed over classes).
  std::string table;
  std::vector<std::string> triples;
};

struct LedgerReport {
  std::string name;
  Rational total, sum, residual;
  bool ok() const { return sgn(residual) == 0; }
};

LedgerReport ledger_check(const Ledger& l);

// Ledger file: {"ledgers": [{name, total, parts: [[label, value], ...],
// table?, triples?}, ...]} or a single ledger object.
std::vector<Ledger> parse_ledgers(std::string_view document);
std::vector<Ledger> load_ledgers(const std::filesystem::path& path);
// One line per ledger: "NAME total T parts S residual R".
std::string format_ledger_report(const LedgerReport& r);

// Share of class-restricted hits expected in a triple class whose pair
// centralizer has the given order: (1/|C_T|) / xi_total.
// Throws DivisionByZero when xi_total is zero.
Rational expected_frequency(const Rational& xi_total, const Integer& pair_centralizer_order);

}  // namespace cgt
