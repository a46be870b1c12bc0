#include <doctest.h>

#include <algorithm>
#include <set>

#include "cgt/error.hpp"
#include "cgt/fingerprint.hpp"
#include "oracles.hpp"

using namespace cgt;

namespace {

GroupFile group(const std::string& name) { return load_group_file(oracle::fixture("groups/" + name + ".grp")); }

// Base-word rows of every generating (2,3,n) pair with x among the given
// involution classes, by direct search.
std::set<std::string> generating_rows(const GroupFile& g, std::uint64_t n) {
  auto order = group_order(g.degree, g.generators);
  std::vector<Permutation> threes;
  for (const auto& c : g.classes)
    if (element_order(c.rep) == 3)
      for (const auto& y : oracle::conjugacy_class(c.rep, g.generators)) threes.push_back(y);
  std::set<std::string> rows;
  for (const auto& c : g.classes) {
    if (element_order(c.rep) != 2) continue;
    for (const auto& y : threes) {
      if (element_order(c.rep * y) != n) continue;
      auto [xr, yr] = reciprocal(c.rep, y);
      auto row = table_row(base_fingerprint(c.rep, y), base_fingerprint(xr, yr));
      if (rows.count(row)) continue;
      if (group_order(g.degree, {c.rep, y}) == order) rows.insert(row);
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("fixture rows") {
  CHECK(generating_rows(group("L2_7"), 7) == std::set<std::string>{"7&4&4&7&4&3&3"});
  CHECK(generating_rows(group("L2_8"), 7) == std::set<std::string>{"7&9&9&7&7&9&7"});
  CHECK(generating_rows(group("L2_11"), 11) == std::set<std::string>{"11&5&5&6&3&11&11"});
  CHECK(generating_rows(group("L2_13"), 7) ==
        std::set<std::string>{"7&6&6&7&7&7&13", "7&7&7&7&6&6&13", "7&13&13&7&3&7&7"});
  CHECK(generating_rows(group("M12"), 11) == std::set<std::string>{"11&6&10&6&10&6&8", "11&6&6&11&6&11&8"});
}

TEST_CASE("exhaustive L2(7) enumeration gives one fingerprint") {
  auto g = group("L2_7");
  auto all = oracle::closure(g.degree, g.generators);
  std::vector<Permutation> xs;
  for (const auto& c : g.classes)
    if (element_order(c.rep) == 2) xs.push_back(c.rep);
  auto keys = oracle::exhaustive_fingerprints(all, xs, 7, false, 168);
  REQUIRE(keys.size() == 1);
  CHECK(display_to_row(keys.begin()->first) == "7&4&4&7&4&3&3");
}

TEST_CASE("words and reciprocals") {
  auto x = perm_from_cycles("(1,2)(4,9)(5,8)(6,7)", 9);
  auto g = group("L2_8");
  Permutation y;
  for (const auto& c : oracle::conjugacy_class(g.classes[2].rep, g.generators))
    if (element_order(x * c) == 7) {
      y = c;
      break;
    }
  REQUIRE(y.degree() == 9);
  auto s = x * y, t = s * y;
  CHECK(word_order(s, t, "s") == 7);
  CHECK(word_order(s, t, "ssts") == element_order(s * s * t * s));
  CHECK_THROWS_AS(word_order(s, t, ""), std::invalid_argument);
  CHECK_THROWS_AS(word_order(s, t, "sxt"), std::invalid_argument);
  auto f = extended_fingerprint(x, y, {"s", "tt"});
  CHECK(f.ext[0] == f.base[0]);
  CHECK(f.ext[1] == element_order(t * t));

  auto [xr, yr] = reciprocal(x, y);
  CHECK(xr == x);
  CHECK(yr == y * y);
  auto back = reciprocal(xr, yr);
  CHECK(back.first == x);
  CHECK(back.second == y);

  CHECK_THROWS_AS(base_fingerprint(y, x), OrderMismatch);
  CHECK_THROWS_AS(base_fingerprint(x, x), OrderMismatch);
}

TEST_CASE("display") {
  Fingerprint a{{7, 4, 4, 7, 4, 3, 3}, {}}, b = a;
  CHECK(canonical_display(a, b) == "(7,4,4,7,4,3,3)");
  b.base[6] = 12;
  a.base[6] = 8;
  CHECK(canonical_display(a, b) == "(7,4,4,7,4,3,8/12)");
  CHECK(canonical_display(b, a) == canonical_display(a, b));
  a.ext = {5, 9};
  b.ext = {9, 5};
  CHECK(canonical_display(a, b) == "(7,4,4,7,4,3,8/12) [5/9,5/9]");
  CHECK(table_row(a, b) == "7&4&4&7&4&3&8/12");
  CHECK(display_to_row(canonical_display(a, b)) == "7&4&4&7&4&3&8/12");
}

TEST_CASE("invariance under conjugation") {
  for (auto [name, n] : {std::pair{"L2_13", 7ul}, std::pair{"M11", 11ul}, std::pair{"M12", 11ul}}) {
    INFO(name);
    auto gf = group(name);
    PermGroup g(gf.degree, gf.generators);
    RandomSource src(g, 3);
    int found = 0;
    for (int i = 0; i < 20000 && found < 10; ++i) {
      auto x = src.next(), y = src.next();
      auto ox = element_order(x), oy = element_order(y);
      if (ox % 2 || oy % 3) continue;
      x = x.pow(static_cast<long>(ox / 2));
      y = y.pow(static_cast<long>(oy / 3));
      if (element_order(x * y) != n) continue;
      ++found;
      auto f = extended_fingerprint(x, y);
      CHECK(f.base[0] == n);
      auto [xr, yr] = reciprocal(x, y);
      const auto key = canonical_display(f, extended_fingerprint(xr, yr));
      CHECK(key == canonical_display(extended_fingerprint(xr, yr), f));
      auto sub = group_order(gf.degree, {x, y});
      for (auto o : f.base) CHECK(sub % to_integer(o) == 0);
      for (int k = 0; k < 5; ++k) {
        auto c = src.next();
        auto xc = c.inverse() * x * c, yc = c.inverse() * y * c;
        CHECK(extended_fingerprint(xc, yc) == f);
      }
    }
    CHECK(found > 0);
  }
}

TEST_CASE("fingerprint table files") {
  auto groups = load_fp_table(oracle::fixture("fingerprints/small_2311.fp"));
  REQUIRE(groups.size() == 6);
  CHECK(groups[0].name == "L2(11)");
  CHECK(groups[0].rows[0].classes == "2A,3A");
  CHECK(groups[0].rows[0].row == "11&5&5&6&3&11&11");
  CHECK(groups[3].name == "M12");
  CHECK(groups[3].rows[1].classes == "2B,3B");
  CHECK(implied_class_count(groups[1].rows) == 8);
  // an odd count cannot come from reciprocal pairs alone
  auto f42 = load_fp_table(oracle::fixture("fingerprints/f42_2d3c17.fp"));
  REQUIRE(f42.size() == 1);
  CHECK(implied_class_count(f42[0].rows) == 383);

  CHECK(normalize_row("11 & 8 & 21/8") == "11&8&8/21");
  CHECK(normalize_row("11\t8\t12/12") == "11&8&12/12");
  CHECK(row_is_split("1&2/3"));
  CHECK_FALSE(row_is_split("1&2&3"));
  CHECK_THROWS_AS(normalize_row("11&&8"), ParseError);
  CHECK_THROWS_AS(normalize_row("11&0"), ParseError);
  CHECK_THROWS_AS(parse_fp_table("7&4\n"), ParseError);

  for (auto f : {"hurwitz_237", "small_2311", "small_2313", "small_2317", "fi22_2311", "fi22_2313", "e62_2c3c11",
                 "e62_2b3c19", "e62_2c3b17", "e62_2c3b19", "f42_2d3c13", "f42_2d3c17"}) {
    INFO(f);
    auto gs = load_fp_table(oracle::fixture(std::string("fingerprints/") + f + ".fp"));
    CHECK_FALSE(gs.empty());
    for (const auto& grp : gs)
      for (const auto& r : grp.rows) CHECK(std::count(r.row.begin(), r.row.end(), '&') == 6);
  }
}
