#include "cgt/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cgt/chartab.hpp"
#include "cgt/error.hpp"
#include "cgt/fingerprint.hpp"
#include "cgt/hunt.hpp"
#include "cgt/permgroup.hpp"
#include "cgt/screen.hpp"
#include "cgt/structconst.hpp"

#ifndef CGT_DEFAULT_FIXTURES
#define CGT_DEFAULT_FIXTURES "fixtures"
#endif

namespace cgt {

namespace fs = std::filesystem;

fs::path resolve_input(const std::string& path) {
  fs::path p(path);
  if (fs::exists(p) || p.is_absolute()) return p;
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("CGT_FIXTURES"); env && *env) roots.emplace_back(env);
  roots.emplace_back(CGT_DEFAULT_FIXTURES);
  for (const auto& root : roots)
    for (const char* sub : {"", "tables", "groups", "ledgers", "candidates", "catalogs", "fingerprints"}) {
      fs::path c = root / sub / p;
      if (fs::exists(c)) return c;
    }
  return p;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string table, group, candidates, ledger, catalog, out_path;
  std::string classes, orders, x, y, x_class, y_class, xi_total, random = "pr";
  std::vector<std::string> words;
  bool include_zero = false, order_restricted = false, extended = false;
  long n = 0;
  std::uint64_t budget = 100000, seed = 1;
  unsigned shards = 1;
};

void write_out(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw IoError("cannot write " + o.out_path);
  f << text;
}

int cmd_sc(const Options& o, std::ostream& out) {
  auto t = load_table(resolve_input(o.table));
  if (o.classes.empty() == o.orders.empty()) throw UsageError("sc needs exactly one of --classes or --orders");
  if (!o.classes.empty()) {
    out << to_string(xi(t, parse_triple(t, o.classes))) << "\n";
    return 0;
  }
  auto parts = split(o.orders, ',');
  if (parts.size() != 3) throw UsageError("--orders needs three element orders");
  std::array<long, 3> ord{};
  for (int i = 0; i < 3; ++i) {
    try {
      ord[i] = std::stol(parts[i]);
    } catch (const std::exception&) {
      throw UsageError("bad element order '" + parts[i] + "'");
    }
  }
  std::ostringstream s;
  s << "# sc group " << t.group_name << " orders " << o.orders << "\n";
  for (const auto& e : xi_profile(t, ord, o.include_zero)) s << e.label << " → " << to_string(e.value) << "\n";
  out << s.str();
  return 0;
}

const NamedClass& find_class(const GroupFile& g, const std::string& name) {
  for (const auto& c : g.classes)
    if (c.name == name) return c;
  throw UnknownClass("group file has no class " + name);
}

int cmd_hunt(const Options& o, std::ostream& out) {
  GroupFile gf = load_group_file(resolve_input(o.group));
  PermGroup g(gf.degree, gf.generators);
  if (sgn(gf.stated_order) > 0 && g.order() != gf.stated_order)
    throw InvariantError("group file states order " + to_string(gf.stated_order) + " but generates " +
                         to_string(g.order()));
  HuntSpec spec;
  spec.group = &g;
  spec.group_name = gf.name;
  spec.n = o.n;
  spec.budget = o.budget;
  spec.seed = o.seed;
  spec.shards = o.shards;
  if (o.random == "uniform") spec.random = RandomMode::Uniform;
  else if (o.random != "pr") throw UsageError("--random must be pr or uniform");
  if (!o.words.empty()) spec.extra_words = o.words;

  const bool by_class = !o.x_class.empty() || !o.y_class.empty();
  const bool by_rep = !o.x.empty() || !o.y.empty();
  if (o.order_restricted && (by_class || by_rep))
    throw UsageError("--order-restricted excludes class representatives");
  if (by_class) {
    if (o.x_class.empty() || o.y_class.empty()) throw UsageError("give both --x-class and --y-class");
    spec.x_rep = find_class(gf, o.x_class).rep;
    spec.y_rep = find_class(gf, o.y_class).rep;
    spec.x_class = o.x_class;
    spec.y_class = o.y_class;
  } else if (by_rep) {
    if (o.x.empty() || o.y.empty()) throw UsageError("give both --x and --y");
    spec.x_rep = perm_from_cycles(o.x, gf.degree);
    spec.y_rep = perm_from_cycles(o.y, gf.degree);
    spec.x_class = to_cycles(*spec.x_rep);
    spec.y_class = to_cycles(*spec.y_rep);
  } else {
    spec.sampler = Sampler::OrderRestricted;
  }
  SearchReport r = run_hunt(spec);
  if (!o.catalog.empty()) r = identify(std::move(r), load_catalog(resolve_input(o.catalog)));
  std::string text = format_report(r);
  if (!o.xi_total.empty()) text += format_contributions(estimate_contributions(r, parse_rational(o.xi_total)));
  write_out(o, text, out);
  return 0;
}

int cmd_screen(const Options& o, std::ostream& out) {
  auto cands = load_candidates(resolve_input(o.candidates));
  auto t = load_table(resolve_input(o.table));
  write_out(o, format_screen(run_screen(cands, t), t.group_name), out);
  return 0;
}

int cmd_ledger(const Options& o, std::ostream& out) {
  std::ostringstream s;
  std::map<std::string, CharacterTable> tables;
  for (const auto& l : load_ledgers(resolve_input(o.ledger))) {
    auto r = ledger_check(l);
    s << format_ledger_report(r) << "\n";
    if (l.table.empty() || l.triples.empty()) continue;
    auto it = tables.find(l.table);
    if (it == tables.end()) it = tables.emplace(l.table, load_table(resolve_input(l.table))).first;
    Rational sum;
    for (const auto& tr : l.triples) sum += xi(it->second, parse_triple(it->second, tr));
    s << (r.name.empty() ? "ledger" : r.name) << " table " << it->second.group_name << " xi " << to_string(sum)
      << (sum == l.total ? " matches" : " MISMATCH") << "\n";
  }
  write_out(o, s.str(), out);
  return 0;
}

int cmd_fp(const Options& o, std::ostream& out) {
  GroupFile gf = load_group_file(resolve_input(o.group));
  Permutation x = perm_from_cycles(o.x, gf.degree), y = perm_from_cycles(o.y, gf.degree);
  PermGroup g(gf.degree, gf.generators);
  for (const auto* p : {&x, &y})
    if (!g.contains(*p)) throw MembershipError(to_cycles(*p) + " is not in " + gf.name);
  auto [xr, yr] = reciprocal(x, y);
  std::vector<std::string> words = o.words.empty() ? kDefaultExtraWords : o.words;
  if (o.extended || !o.words.empty())
    out << canonical_display(extended_fingerprint(x, y, words), extended_fingerprint(xr, yr, words)) << "\n";
  else
    out << canonical_display(base_fingerprint(x, y), base_fingerprint(xr, yr)) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cgt: structure constants, fingerprints, hunts and screens", "cgt"};
  app.require_subcommand(1);
  Options o;

  auto* sc = app.add_subcommand("sc", "structure constants from a character table");
  sc->add_option("--table", o.table, "character table file")->required();
  sc->add_option("--classes", o.classes, "three class names, e.g. 2B,3A,5A");
  sc->add_option("--orders", o.orders, "three element orders, e.g. 2,3,5");
  sc->add_flag("--all", o.include_zero, "also list zero constants");

  auto* hunt = app.add_subcommand("hunt", "seeded search for (2,3,n) pairs");
  hunt->add_option("--group", o.group, "group file")->required();
  hunt->add_option("--n", o.n, "order of xy")->required()->check(CLI::PositiveNumber);
  hunt->add_option("--budget", o.budget, "sampled pairs")->capture_default_str()->check(CLI::PositiveNumber);
  hunt->add_option("--seed", o.seed, "master seed")->capture_default_str();
  hunt->add_option("--shards", o.shards, "independent streams")->capture_default_str()->check(CLI::PositiveNumber);
  hunt->add_option("--x-class", o.x_class, "class of x (named in the group file)");
  hunt->add_option("--y-class", o.y_class, "class of y (named in the group file)");
  hunt->add_option("--x", o.x, "representative for x in cycle notation");
  hunt->add_option("--y", o.y, "representative for y in cycle notation");
  hunt->add_flag("--order-restricted", o.order_restricted, "powers of random elements (biased)");
  hunt->add_option("--random", o.random, "conjugator source: pr or uniform")->capture_default_str();
  hunt->add_option("--words", o.words, "extra fingerprint words");
  hunt->add_option("--catalog", o.catalog, "order -> label catalog");
  hunt->add_option("--xi-total", o.xi_total, "structure constant for contribution estimates");
  hunt->add_option("--out", o.out_path, "write the report here");

  auto* screen = app.add_subcommand("screen", "eliminate candidates by order arithmetic");
  screen->add_option("--candidates", o.candidates, "candidate file")->required();
  screen->add_option("--table", o.table, "target character table")->required();
  screen->add_option("--out", o.out_path, "write the report here");

  auto* ledger = app.add_subcommand("ledger", "verify rational ledgers");
  ledger->add_option("--file", o.ledger, "ledger file")->required();
  ledger->add_option("--out", o.out_path, "write the report here");

  auto* fp = app.add_subcommand("fp", "fingerprint of one pair");
  fp->add_option("--group", o.group, "group file")->required();
  fp->add_option("--x", o.x, "involution in cycle notation")->required();
  fp->add_option("--y", o.y, "element of order 3 in cycle notation")->required();
  fp->add_flag("--extended", o.extended, "append the default extra words");
  fp->add_option("--words", o.words, "extra words (implies --extended)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sc) return cmd_sc(o, out);
    if (*hunt) return cmd_hunt(o, out);
    if (*screen) return cmd_screen(o, out);
    if (*ledger) return cmd_ledger(o, out);
    if (*fp) return cmd_fp(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NotRational& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace cgt
