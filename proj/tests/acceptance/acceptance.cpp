// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failures (capped at 1).

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "cgt/chartab.hpp"
#include "cgt/hunt.hpp"
#include "cgt/screen.hpp"
#include "cgt/structconst.hpp"
#include "oracles.hpp"

using namespace cgt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body, double limit_seconds = 0) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    std::ostringstream s;
    s << "took " << secs << " s, limit " << limit_seconds << " s";
    o.fail(s.str());
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (o.ok ? "PASS " : "FAIL ") << name << " (" << secs << " s)";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
  failures += !o.ok;
}

CharacterTable table(const std::string& name) { return load_table(oracle::fixture("tables/" + name + ".ctab")); }
GroupFile group(const std::string& name) { return load_group_file(oracle::fixture("groups/" + name + ".grp")); }
Rational R(const char* s) { return parse_rational(s); }

std::multiset<Rational> values(const std::vector<ProfileEntry>& p) {
  std::multiset<Rational> out;
  for (const auto& e : p) out.insert(e.value);
  return out;
}

std::string show(const std::multiset<Rational>& m) {
  std::string s = "{";
  for (const auto& v : m) s += (s.size() > 1 ? "," : "") + to_string(v);
  return s + "}";
}

const char* kSmallTables[] = {"A5", "S5", "C3", "L2_7", "L2_8", "L2_11", "L2_13", "M11", "M12"};

Outcome oracle_equivalence() {
  Outcome o;
  long triples = 0;
  for (auto name : {"A5", "S5", "L2_7", "L2_8", "L2_11", "M11"}) {
    auto t = table(name);
    auto g = group(name);
    std::vector<std::vector<Permutation>> cls;
    std::vector<oracle::PermSet> sets;
    for (const auto& c : g.classes) {
      cls.push_back(oracle::conjugacy_class(c.rep, g.generators));
      sets.emplace_back(cls.back().begin(), cls.back().end());
    }
    for (ClassIndex a = 0; a < t.size(); ++a)
      for (ClassIndex b = 0; b < t.size(); ++b)
        for (ClassIndex c = 0; c < t.size(); ++c, ++triples) {
          long count = oracle::pair_count(cls[a], sets[b], g.classes[c].rep);
          if (xi(t, {a, b, c}) * t.classes[c].centralizer_order != count)
            o.fail(std::string(name) + " " + t.classes[a].name + "," + t.classes[b].name + "," + t.classes[c].name);
        }
  }
  o.detail = o.ok ? std::to_string(triples) + " triples" : o.detail;
  return o;
}

Outcome identity_rule() {
  Outcome o;
  std::vector<std::string> names(std::begin(kSmallTables), std::end(kSmallTables));
  names.push_back("2E62");
  for (const auto& name : names) {
    auto t = table(name);
    for (ClassIndex c = 0; c < t.size(); ++c)
      for (ClassIndex d = 0; d < t.size(); ++d) {
        Rational want = c == d ? Rational(Integer(1), t.classes[c].centralizer_order) : Rational(0);
        if (xi(t, {0, c, d}) != want) o.fail(name + " at " + t.classes[c].name + "," + t.classes[d].name);
      }
  }
  return o;
}

Outcome completeness() {
  Outcome o;
  auto check = [&](const CharacterTable& t, ClassIndex a, ClassIndex b) {
    Rational sum;
    for (ClassIndex c = 0; c < t.size(); ++c) sum += xi(t, {a, b, c});
    Rational want(t.class_size(a) * t.class_size(b), t.group_order);
    want.canonicalize();
    if (sum != want) o.fail(t.group_name + " at " + t.classes[a].name + "," + t.classes[b].name);
  };
  for (auto name : kSmallTables) {
    auto t = table(name);
    for (ClassIndex a = 0; a < t.size(); ++a)
      for (ClassIndex b = 0; b < t.size(); ++b) check(t, a, b);
  }
  // the large table: unordered pairs, the sum being symmetric in C1 and C2
  auto t = table("2E62");
  long pairs = 0;
  for (ClassIndex a = 0; a < t.size(); ++a)
    for (ClassIndex b = a; b < t.size(); ++b, ++pairs) check(t, a, b);
  if (o.ok) o.detail = "all pairs on small tables, " + std::to_string(pairs) + " pairs on 2E6(2)";
  return o;
}

Outcome profiles() {
  Outcome o;
  auto t = table("2E62");
  auto expect = [&](std::array<long, 3> ord, std::multiset<Rational> want) {
    auto got = values(xi_profile(t, ord));
    if (got != want)
      o.fail("(2,3," + std::to_string(ord[2]) + ") gave " + show(got) + ", want " + show(want));
  };
  {
    std::vector<Rational> got;
    for (const auto& e : xi_profile(t, {2, 3, 5})) got.push_back(e.value);
    if (got != std::vector<Rational>{R("1/720"), R("59/1440"), R("1/48"), R("9/32"), R("1")})
      o.fail("(2,3,5) profile");
  }
  expect({2, 3, 7}, {R("1/20160"), R("1/480"), R("3/64"), R("11/3"), R("15/56"), R("43/8"), R("329/3")});
  expect({2, 3, 11}, {R("1/6"), R("1/6"), 1, 1, R("37/2"), R("37/2"), 1650, 1650});
  expect({2, 3, 13}, {15, 3, 63, 9658});
  // (2,3,17) and (2,3,19): per (C1,C2) the two classes of n-elements share
  // one value, and the sums are as stated
  auto split = [&](long n, std::map<std::string, Rational> want_sum) {
    std::map<std::string, std::vector<Rational>> by;
    for (const auto& e : xi_profile(t, {2, 3, n}))
      by[t.classes[e.triple.c1].name + t.classes[e.triple.c2].name].push_back(e.value);
    std::map<std::string, Rational> sums;
    for (const auto& [k, v] : by) {
      if (v.size() != 2 || v[0] != v[1]) o.fail("(2,3," + std::to_string(n) + ") " + k + " classes differ");
      for (const auto& x : v) sums[k] += x;
    }
    if (sums != want_sum) o.fail("(2,3," + std::to_string(n) + ") sums");
  };
  split(17, {{"2B3C", 26}, {"2C3A", 6}, {"2C3B", 70}, {"2C3C", 15228}});
  split(19, {{"2B3C", 18}, {"2C3B", 30}, {"2C3C", 12252}});
  return o;
}

Outcome ledger_suite() {
  Outcome o;
  std::map<std::string, CharacterTable> tables;
  int balanced = 0, linked = 0, open = 0;
  for (auto f : {"a5_235", "xi_2B3B5A", "hurwitz_237", "t2311", "t2313", "t2317", "t2319", "f42_internal"}) {
    for (const auto& l : load_ledgers(oracle::fixture(std::string("ledgers/") + f + ".ledger"))) {
      if (!l.parts.empty()) {
        auto r = ledger_check(l);
        if (!r.ok()) o.fail(format_ledger_report(r));
        ++balanced;
      } else {
        ++open;
      }
      if (l.table.empty()) continue;
      auto it = tables.find(l.table);
      if (it == tables.end()) it = tables.emplace(l.table, load_table(oracle::fixture("tables/" + l.table))).first;
      Rational sum;
      for (const auto& tr : l.triples) sum += xi(it->second, parse_triple(it->second, tr));
      if (sum != l.total) o.fail(l.name + " total " + to_string(l.total) + " but xi gives " + to_string(sum));
      ++linked;
    }
  }
  if (o.ok)
    o.detail = std::to_string(balanced) + " decompositions with residual 0, " + std::to_string(linked) +
               " totals checked against the table, " + std::to_string(open) + " total-only";
  return o;
}

PermGroup make_group(const GroupFile& g) { return PermGroup(g.degree, g.generators); }

const Permutation& rep(const GroupFile& g, const std::string& cls) {
  for (const auto& c : g.classes)
    if (c.name == cls) return c.rep;
  throw std::runtime_error("no class " + cls + " in " + g.name);
}

SearchReport class_hunt(const GroupFile& gf, const PermGroup& g, long n, const std::string& xc,
                        const std::string& yc, std::uint64_t budget, std::uint64_t seed) {
  HuntSpec s;
  s.group = &g;
  s.group_name = gf.name;
  s.n = n;
  s.x_rep = rep(gf, xc);
  s.y_rep = rep(gf, yc);
  s.x_class = xc;
  s.y_class = yc;
  s.budget = budget;
  s.seed = seed;
  s.shards = 4;
  return run_hunt(s);
}

Outcome fingerprint_fixtures() {
  Outcome o;
  struct Case {
    const char* file;
    const char* group;
    long n;
    const char* fp_file;
  };
  const Case cases[] = {{"L2_7", "L2(7)", 7, "hurwitz_237"},
                        {"L2_8", "L2(8)", 7, "hurwitz_237"},
                        {"L2_13", "L2(13)", 7, "hurwitz_237"},
                        {"L2_11", "L2(11)", 11, "small_2311"},
                        {"M12", "M12", 11, "small_2311"}};
  std::ostringstream summary;
  for (const auto& c : cases) {
    auto gf = group(c.file);
    auto g = make_group(gf);
    std::map<std::string, std::set<std::string>> want;  // classes -> rows
    for (const auto& fg : load_fp_table(oracle::fixture(std::string("fingerprints/") + c.fp_file + ".fp")))
      if (fg.name == c.group)
        for (const auto& r : fg.rows) want[r.classes.empty() ? "2A,3A" : r.classes].insert(r.row);
    if (want.empty()) o.fail(std::string("no fixture rows for ") + c.group);
    std::size_t got_rows = 0;
    for (const auto& [classes, rows] : want) {
      auto comma = classes.find(',');
      auto r = class_hunt(gf, g, c.n, classes.substr(0, comma), classes.substr(comma + 1), 100000, 2024);
      std::set<std::string> got;
      for (const auto& e : r.entries)
        if (e.generated_order == g.order()) got.insert(display_to_row(e.key));
      got_rows += got.size();
      if (got != rows) o.fail(std::string(c.group) + " " + classes + " rows differ");
    }
    summary << c.group << ":" << got_rows << "@" << to_string(g.order()) << " ";
  }
  // saturation: every fingerprint of a (2A,3A,n) pair is found
  for (auto [file, n] : {std::pair{"L2_7", 7L}, std::pair{"L2_11", 11L}}) {
    auto gf = group(file);
    auto g = make_group(gf);
    auto all = oracle::closure(gf.degree, gf.generators);
    auto exh = oracle::exhaustive_fingerprints(all, {rep(gf, "2A")}, n, false, static_cast<long>(all.size()));
    std::set<std::string> want, got;
    for (const auto& [k, v] : exh) want.insert(k);
    for (const auto& e : class_hunt(gf, g, n, "2A", "3A", 100000, 2024).entries) got.insert(e.key);
    if (got != want) o.fail(std::string(file) + " hunt keys differ from exhaustive enumeration");
    summary << file << " exhaustive " << want.size() << " ";
  }
  if (o.ok) o.detail = summary.str();
  return o;
}

Outcome screen_suite() {
  Outcome o;
  auto t = table("2E62");
  std::map<std::string, std::uint64_t> spectrum;
  for (const auto& l : run_screen(load_candidates(oracle::fixture("candidates/atlas16.cand")), t))
    if (l.decision.code == "SPECTRUM") spectrum[l.name] = l.decision.witness;
  const std::map<std::string, std::uint64_t> want{
      {"L2(49)", 25}, {"L2(64)", 65}, {"L3(9)", 91}, {"L4(4)", 85}, {"S6(3)", 36}};
  if (spectrum != want) o.fail("spectrum eliminations differ");
  auto known = load_candidates(oracle::fixture("candidates/known39.cand"));
  if (known.size() != 39) o.fail("known list has " + std::to_string(known.size()) + " entries");
  for (const auto& c : known)
    if (lagrange_screen(c, t.group_order).verdict != Verdict::Pass) o.fail(c.name + " fails Lagrange");
  for (auto tr : {"2A,3C,5A", "2B,3C,5A"})
    if (xi(t, parse_triple(t, tr)) != 0) o.fail(std::string(tr) + " nonzero");
  std::vector<std::string> nonzero;
  for (const auto& e : xi_profile(t, {2, 3, 7})) {
    bool a = e.label.rfind("2A,", 0) == 0 && e.label.find("7B") != std::string::npos;
    bool b = e.label.rfind("2B,", 0) == 0 && e.label.find("7A") != std::string::npos;
    if (a || b) nonzero.push_back(e.label + "=" + to_string(e.value));
  }
  if (nonzero != std::vector<std::string>{"2B,3A,7A=1/480"}) o.fail("L2(27) follow-up pattern");
  return o;
}

// Observed hit shares against (1/|C_T|)/xi summed over the triple classes
// behind each fingerprint, with pair centralizers counted by brute force.
Outcome frequency_law() {
  Outcome o;
  auto gf = group("L2_13");
  auto g = make_group(gf);
  auto all = oracle::closure(gf.degree, gf.generators);
  auto y_class = oracle::conjugacy_class(rep(gf, "3A"), gf.generators);
  auto tcs = oracle::triple_classes(all, rep(gf, "2A"), y_class, 7);
  Rational xi_total;
  std::map<std::string, Rational> weight;
  for (const auto& tc : tcs) {
    Rational w(Integer(1), Integer(tc.pair_centralizer));
    xi_total += w;
    weight[tc.key] += w;
  }
  auto t = table("L2_13");
  Rational from_table;
  for (const auto& e : xi_profile(t, {2, 3, 7})) from_table += e.value;
  if (from_table != xi_total) {
    o.fail("brute-force total " + to_string(xi_total) + " vs table " + to_string(from_table));
    return o;
  }
  std::string last;
  for (std::uint64_t seed : {11, 12}) {
    auto r = class_hunt(gf, g, 7, "2A", "3A", 100000, seed);
    bool fine = r.hits > 0 && r.entries.size() == weight.size();
    std::ostringstream s;
    s << "seed " << seed << " hits " << r.hits;
    for (const auto& e : r.entries) {
      double p = Rational(weight[e.key] / xi_total).get_d();
      double obs = static_cast<double>(e.count) / static_cast<double>(r.hits);
      double sigma = std::sqrt(p * (1 - p) / static_cast<double>(r.hits));
      double z = sigma > 0 ? (obs - p) / sigma : 0;
      s.precision(3);
      s << "; " << display_to_row(e.key) << " p=" << p << " obs=" << obs << " z=" << z;
      if (std::abs(z) > 3) fine = false;
    }
    last = s.str();
    if (fine) {
      o.detail = last + (seed == 11 ? "" : " (after one rerun)");
      return o;
    }
  }
  o.fail(last);
  return o;
}

}  // namespace

int main() {
  criterion("oracle-equivalence", oracle_equivalence, 60);
  criterion("identity-rule", identity_rule);
  criterion("completeness", completeness);
  criterion("2E6(2)-profiles", profiles, 300);
  criterion("ledger-suite", ledger_suite);
  criterion("fingerprint-fixtures", fingerprint_fixtures, 120);
  criterion("screen-suite", screen_suite);
  criterion("frequency-law", frequency_law);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing criteria" << std::endl;
  return failures ? 1 : 0;
}
