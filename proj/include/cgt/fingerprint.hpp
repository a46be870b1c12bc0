// Word-order fingerprints of (2,3)-generating pairs.
//
// For x of order 2 and y of order 3 put s = xy and t = xyy. The base
// fingerprint is the orders of s, st, sst, ssts, sstst, ssstst, ssststt;
// words are read left to right with left-to-right composition.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgt/perm.hpp"

namespace cgt {

inline constexpr std::array<std::string_view, 7> kBaseWords = {
    "s", "st", "sst", "ssts", "sstst", "ssstst", "ssststt"};

inline const std::vector<std::string> kDefaultExtraWords = {"sssttst", "sssststt", "sssststtt"};

struct Fingerprint {
  std::array<std::uint64_t, 7> base{};
  std::vector<std::uint64_t> ext;
  bool operator==(const Fingerprint&) const = default;
};

// Order of a word over {s,t}. Throws std::invalid_argument on an empty word
// or a letter outside the alphabet.
std::uint64_t word_order(const Permutation& s, const Permutation& t, std::string_view word);

// Throw OrderMismatch unless |x| = 2 and |y| = 3.
Fingerprint base_fingerprint(const Permutation& x, const Permutation& y);
Fingerprint extended_fingerprint(const Permutation& x, const Permutation& y,
                                 const std::vector<std::string>& words = kDefaultExtraWords);

// (x^-1, y^-1) = (x, y^2).
std::pair<Permutation, Permutation> reciprocal(const Permutation& x, const Permutation& y);

// "(7,4,4,7,4,3,3)" plus " [e1,e2,...]" when extended words are present;
// entries where the two fingerprints differ print as "min/max". Symmetric
// in its arguments; used as the deduplication key.
std::string canonical_display(const Fingerprint& a, const Fingerprint& b);
// Base words only, ampersand-separated: "7&4&4&7&4&3&3".
std::string table_row(const Fingerprint& a, const Fingerprint& b);
// The row of a display string: drops the extension and swaps ',' for '&'.
std::string display_to_row(std::string_view display);

// Fingerprint table file:
//   # comment
//   group NAME
//   classes 2A,3A        (optional, applies to following rows)
//   7&4&4&7&4&3&3        (ampersand- or tab-separated; "a/b" merged entries)
struct FpRow {
  std::string classes;
  std::string row;  // normalized: '&'-separated, merged entries as min/max
};
struct FpGroup {
  std::string name;
  std::vector<FpRow> rows;
};

std::vector<FpGroup> parse_fp_table(std::string_view text);
std::vector<FpGroup> load_fp_table(const std::filesystem::path& path);
// Normalizes one row; throws ParseError.
std::string normalize_row(std::string_view row);
// Triple classes a list of rows stands for: a row with any "a/b" entry is
// a pair of mutually reciprocal classes, so it counts twice.
std::size_t implied_class_count(const std::vector<FpRow>& rows);
bool row_is_split(std::string_view row);

}  // namespace cgt
