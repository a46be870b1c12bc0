#include "cgt/hunt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "cgt/error.hpp"

namespace cgt {

void validate(const HuntSpec& spec) {
  if (!spec.group) throw std::invalid_argument("hunt: no group");
  if (spec.n < 1) throw std::invalid_argument("hunt: n must be positive");
  if (spec.budget < 1) throw std::invalid_argument("hunt: budget must be at least 1");
  if (spec.shards < 1) throw std::invalid_argument("hunt: shards must be at least 1");
  for (const auto& w : spec.extra_words)
    if (w.empty() || w.find_first_not_of("st") != std::string::npos)
      throw std::invalid_argument("hunt: bad extra word '" + w + "'");
  if (spec.sampler == Sampler::ClassRestricted) {
    if (!spec.x_rep || !spec.y_rep)
      throw std::invalid_argument("hunt: class-restricted sampling needs representatives");
    for (const auto* r : {&*spec.x_rep, &*spec.y_rep})
      if (!spec.group->contains(*r))
        throw MembershipError("hunt: representative " + to_cycles(*r) + " is not in the group");
    if (element_order(*spec.x_rep) != 2 || element_order(*spec.y_rep) != 3)
      throw OrderMismatch("hunt: representatives must have orders 2 and 3");
  }
}

namespace {

// Random element powered down to order k; nullopt if none found quickly.
std::optional<Permutation> element_of_order(RandomSource& src, std::uint64_t k) {
  for (int tries = 0; tries < 10000; ++tries) {
    Permutation g = src.next();
    std::uint64_t m = element_order(g);
    if (m % k == 0) return g.pow(static_cast<long>(m / k));
  }
  return std::nullopt;
}

SearchReport run_shard(const HuntSpec& spec, unsigned index, std::uint64_t budget) {
  SearchReport r;
  ShardStats st;
  st.index = index;
  RandomSource src(*spec.group, stream_seed(spec.seed, index), spec.random);
  std::map<std::string, HuntEntry> found;
  const std::size_t deg = spec.group->degree();
  for (std::uint64_t i = 0; i < budget; ++i) {
    Permutation x, y;
    if (spec.sampler == Sampler::ClassRestricted) {
      x = conjugate_sample(*spec.x_rep, *spec.group, src);
      y = conjugate_sample(*spec.y_rep, *spec.group, src);
    } else {
      auto a = element_of_order(src, 2);
      auto b = element_of_order(src, 3);
      if (!a || !b) throw InvariantError("hunt: group has no elements of order 2 or 3");
      x = std::move(*a);
      y = std::move(*b);
    }
    ++st.pairs;
    if (element_order(x * y) != static_cast<std::uint64_t>(spec.n)) continue;
    ++st.hits;
    auto [xr, yr] = reciprocal(x, y);
    std::string key = canonical_display(extended_fingerprint(x, y, spec.extra_words),
                                        extended_fingerprint(xr, yr, spec.extra_words));
    auto it = found.find(key);
    if (it == found.end()) {
      HuntEntry e;
      e.key = key;
      e.count = 1;
      e.generated_order = group_order(deg, {x, y});
      e.x = std::move(x);
      e.y = std::move(y);
      found.emplace(std::move(key), std::move(e));
      st.since_new = 0;
    } else {
      ++it->second.count;
      ++st.since_new;
    }
  }
  st.distinct = found.size();
  r.pairs = st.pairs;
  r.hits = st.hits;
  for (auto& [k, e] : found) r.entries.push_back(std::move(e));
  r.shard_stats.push_back(st);
  return r;
}

}  // namespace

void merge_into(SearchReport& a, const SearchReport& b) {
  a.pairs += b.pairs;
  a.hits += b.hits;
  std::vector<HuntEntry> out;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  out.reserve(a.entries.size() + b.entries.size());
  while (i != a.entries.end() || j != b.entries.end()) {
    if (j == b.entries.end() || (i != a.entries.end() && i->key < j->key)) {
      out.push_back(std::move(*i++));
    } else if (i == a.entries.end() || j->key < i->key) {
      out.push_back(*j++);
    } else {
      HuntEntry e = std::move(*i++);
      e.count += j->count;
      if (std::tie(j->x, j->y) < std::tie(e.x, e.y)) {
        e.x = j->x;
        e.y = j->y;
        e.generated_order = j->generated_order;
      }
      for (const auto& l : j->labels)
        if (std::find(e.labels.begin(), e.labels.end(), l) == e.labels.end()) e.labels.push_back(l);
      out.push_back(std::move(e));
      ++j;
    }
  }
  a.entries = std::move(out);
  a.shard_stats.insert(a.shard_stats.end(), b.shard_stats.begin(), b.shard_stats.end());
  std::sort(a.shard_stats.begin(), a.shard_stats.end(),
            [](const ShardStats& x, const ShardStats& y) { return x.index < y.index; });
}

SearchReport run_hunt(const HuntSpec& spec) {
  validate(spec);
  std::vector<SearchReport> parts(spec.shards);
  std::vector<std::exception_ptr> errors(spec.shards);
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned k; (k = next++) < spec.shards;) {
      std::uint64_t b = spec.budget / spec.shards + (k < spec.budget % spec.shards ? 1 : 0);
      try {
        parts[k] = run_shard(spec, k, b);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned workers = std::min<unsigned>(spec.shards, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SearchReport r;
  r.group_name = spec.group_name;
  r.degree = spec.group->degree();
  r.group_order = spec.group->order();
  r.n = spec.n;
  r.sampler = spec.sampler;
  r.x_class = spec.x_class;
  r.y_class = spec.y_class;
  r.random = spec.random;
  r.budget = spec.budget;
  r.seed = spec.seed;
  r.shards = spec.shards;
  r.extra_words = spec.extra_words;
  for (const auto& p : parts) merge_into(r, p);
  return r;
}

Catalog parse_catalog(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("catalog syntax error: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  const nlohmann::json* rows = &doc;
  if (doc.is_object()) {
    if (!doc.contains("catalog")) throw ParseError("catalog: missing 'catalog'");
    rows = &doc["catalog"];
  }
  if (!rows->is_array()) throw ParseError("catalog: expected a list");
  Catalog cat;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const auto& r = (*rows)[i];
    const std::string where = "catalog[" + std::to_string(i) + "]";
    if (!r.is_object() || !r.contains("order") || !r.contains("labels") || !r["labels"].is_array())
      throw ParseError(where + ": expected {order, labels}");
    CatalogRow row;
    if (r["order"].is_string()) row.order = parse_integer(r["order"].get<std::string>());
    else if (r["order"].is_number_unsigned()) row.order = to_integer(r["order"].get<std::uint64_t>());
    else throw ParseError(where + ": bad order");
    if (sgn(row.order) <= 0) throw ParseError(where + ": order must be positive");
    for (const auto& l : r["labels"]) {
      if (!l.is_string()) throw ParseError(where + ": labels must be strings");
      row.labels.push_back(l.get<std::string>());
    }
    cat.push_back(std::move(row));
  }
  return cat;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

SearchReport identify(SearchReport report, const Catalog& cat) {
  for (auto& e : report.entries) {
    e.labels.clear();
    for (const auto& row : cat)
      if (row.order == e.generated_order)
        for (const auto& l : row.labels) e.labels.push_back(l);
    if (e.labels.empty()) e.labels.push_back("unidentified(" + to_string(e.generated_order) + ")");
  }
  return report;
}

std::vector<Contribution> estimate_contributions(const SearchReport& report, const Rational& xi_total) {
  if (report.sampler != Sampler::ClassRestricted)
    throw std::invalid_argument(
        "contribution estimates need class-restricted sampling; order-restricted hits are biased");
  if (report.hits == 0) throw DivisionByZero("no hits to estimate from");
  std::vector<Contribution> out;
  const double h = static_cast<double>(report.hits);
  for (const auto& e : report.entries) {
    Contribution c;
    c.key = e.key;
    c.estimate = xi_total * Rational(to_integer(e.count), to_integer(report.hits));
    c.estimate.canonicalize();
    double p = static_cast<double>(e.count) / h;
    c.sigma = xi_total.get_d() * std::sqrt(p * (1 - p) / h);
    double est = c.estimate.get_d();
    if (est > 0 && est <= 1) c.suggest_m = static_cast<std::uint64_t>(std::llround(1 / est));
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t implied_class_count(const SearchReport& report) {
  std::size_t n = 0;
  for (const auto& e : report.entries) n += e.key.find('/') != std::string::npos ? 2 : 1;
  return n;
}

std::string format_report(const SearchReport& r) {
  std::ostringstream out;
  out << "# hunt\n";
  out << "group " << r.group_name << "\n";
  out << "degree " << r.degree << "\n";
  out << "order " << to_string(r.group_order) << "\n";
  out << "n " << r.n << "\n";
  if (r.sampler == Sampler::ClassRestricted)
    out << "sampler class-restricted x=" << r.x_class << " y=" << r.y_class << "\n";
  else
    out << "sampler order-restricted (biased across classes of equal order)\n";
  out << "random "
      << (r.random == RandomMode::Uniform ? "chain-uniform" : "product-replacement slots=10 burn-in=50")
      << "\n";
  out << "budget " << r.budget << "\n";
  out << "seed " << r.seed << "\n";
  out << "shards " << r.shards << "\n";
  out << "words";
  for (auto w : kBaseWords) out << ' ' << w;
  out << "\nextra-words";
  for (const auto& w : r.extra_words) out << ' ' << w;
  out << "\n";
  out << "pairs " << r.pairs << "\n";
  out << "hits " << r.hits << "\n";
  out << "distinct " << r.entries.size() << "\n";
  for (const auto& e : r.entries) {
    out << "entry\t" << e.key << "\t" << e.count << "\t" << to_string(e.generated_order) << "\t";
    for (std::size_t i = 0; i < e.labels.size(); ++i) out << (i ? "," : "") << e.labels[i];
    if (e.labels.empty()) out << "-";
    out << "\t" << to_cycles(e.x) << "\t" << to_cycles(e.y) << "\n";
  }
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> totals;
  for (const auto& e : r.entries)
    for (const auto& l : e.labels) {
      totals[l].first += 1;
      totals[l].second += e.count;
    }
  for (const auto& [l, t] : totals)
    out << "label\t" << l << "\tentries " << t.first << "\thits " << t.second << "\n";
  for (const auto& s : r.shard_stats)
    out << "shard " << s.index << " pairs " << s.pairs << " hits " << s.hits << " distinct "
        << s.distinct << " since-new " << s.since_new << "\n";
  const std::size_t implied = implied_class_count(r);
  out << "implied-classes " << implied << "\n";
  out << "advisory parity " << (implied % 2 ? "odd" : "even")
      << (implied % 2 ? ": an odd count cannot be complete when the order-" + std::to_string(r.n) +
                            " classes pair up unfused"
                      : std::string())
      << "\n";
  out << "advisory saturation not claimed\n";
  return out.str();
}

std::string format_contributions(const std::vector<Contribution>& cs) {
  std::ostringstream out;
  char buf[64];
  for (const auto& c : cs) {
    std::snprintf(buf, sizeof buf, "%.6g", c.sigma);
    out << "estimate\t" << c.key << "\t" << to_string(c.estimate) << "\tsigma " << buf << "\t";
    if (c.suggest_m) out << "~1/" << *c.suggest_m;
    else out << "-";
    out << "\n";
  }
  return out.str();
}

}  // namespace cgt
