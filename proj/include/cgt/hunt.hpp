// Seeded searches for (2,3,n) pairs in a permutation group.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/fingerprint.hpp"
#include "cgt/permgroup.hpp"
#include "cgt/rational.hpp"

namespace cgt {

enum class Sampler {
  // x, y are random conjugates of fixed representatives: uniform on C1 x C2.
  ClassRestricted,
  // x, y are powers of random elements; biased across classes of equal order.
  OrderRestricted,
};

struct HuntSpec {
  const PermGroup* group = nullptr;
  std::string group_name;
  long n = 0;
  Sampler sampler = Sampler::ClassRestricted;
  std::optional<Permutation> x_rep, y_rep;  // required for ClassRestricted
  std::string x_class, y_class;             // labels echoed in the report
  std::uint64_t budget = 100000;
  std::uint64_t seed = 1;
  unsigned shards = 1;
  RandomMode random = RandomMode::ProductReplacement;
  std::vector<std::string> extra_words = kDefaultExtraWords;
};

// Throws std::invalid_argument for a malformed spec and MembershipError or
// OrderMismatch for bad representatives.
void validate(const HuntSpec& spec);

struct HuntEntry {
  std::string key;  // canonical_display of the pair and its reciprocal
  std::uint64_t count = 0;
  Integer generated_order = 0;
  std::vector<std::string> labels;
  Permutation x, y;  // first pair seen in its shard; merges keep the smaller
};

struct ShardStats {
  unsigned index = 0;
  std::uint64_t pairs = 0, hits = 0, distinct = 0;
  std::uint64_t since_new = 0;  // hits after the last new fingerprint
};

struct SearchReport {
  // spec echo
  std::string group_name;
  std::size_t degree = 0;
  Integer group_order = 0;
  long n = 0;
  Sampler sampler = Sampler::ClassRestricted;
  std::string x_class, y_class;
  RandomMode random = RandomMode::ProductReplacement;
  std::uint64_t budget = 0, seed = 0;
  unsigned shards = 0;
  std::vector<std::string> extra_words;

  std::uint64_t pairs = 0, hits = 0;
  std::vector<HuntEntry> entries;  // sorted by key
  std::vector<ShardStats> shard_stats;
};

SearchReport run_hunt(const HuntSpec& spec);
// Folds b into a; associative and commutative on entries and totals.
void merge_into(SearchReport& a, const SearchReport& b);

struct CatalogRow {
  Integer order;
  std::vector<std::string> labels;
};
using Catalog = std::vector<CatalogRow>;

// {"catalog": [{"order": "168", "labels": ["L3(2)"]}, ...]}
Catalog parse_catalog(std::string_view document);
Catalog load_catalog(const std::filesystem::path& path);

// Replaces each entry's labels with every catalog label of matching order,
// or "unidentified(ORDER)".
SearchReport identify(SearchReport report, const Catalog& cat);

struct Contribution {
  std::string key;
  Rational estimate;  // xi_total * count / hits
  double sigma;       // binomial standard error of the estimate
  std::optional<std::uint64_t> suggest_m;  // nearest 1/m, when estimate <= 1
};

// Throws std::invalid_argument for order-restricted reports and
// DivisionByZero when there are no hits.
std::vector<Contribution> estimate_contributions(const SearchReport& report, const Rational& xi_total);

std::size_t implied_class_count(const SearchReport& report);

// Stable text: configuration header, one tab-separated line per entry,
// label totals, shard diagnostics and the parity advisory.
std::string format_report(const SearchReport& report);
std::string format_contributions(const std::vector<Contribution>& cs);

}  // namespace cgt
