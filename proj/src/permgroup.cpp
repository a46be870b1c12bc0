#include "cgt/permgroup.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cgt/error.hpp"

namespace cgt {

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Permutation>& gens,
                                 std::uint64_t seed, int quiet_rounds)
    : degree_(degree) {
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity()) nontrivial.push_back(g);
  }
  if (nontrivial.empty()) return;

  for (const auto& g : nontrivial) {
    auto [res, lvl] = sift(g);
    if (!res.is_identity()) insert(res, lvl);
  }

  // Random phase: stop after `quiet_rounds` consecutive elements sift
  // to the identity.
  ProductReplacement pr(degree, nontrivial, seed);
  for (int quiet = 0; quiet < quiet_rounds;) {
    auto [res, lvl] = sift(pr.next());
    if (res.is_identity()) {
      ++quiet;
    } else {
      insert(res, lvl);
      quiet = 0;
    }
  }

  while (!verify_once()) {
  }
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  for (const auto& l : levels_) out.push_back(l.base);
  return out;
}

Integer StabilizerChain::order() const {
  Integer o = 1;
  for (const auto& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
  return o;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& l = levels_[i];
    Point beta = g[l.base];
    int at = l.slot[beta];
    if (at < 0) return {std::move(g), i};
    const auto& u = l.transversal[at];
    // g := g * u^-1, without forming the inverse
    std::vector<Point> img(degree_);
    std::vector<Point> uinv(degree_);
    for (Point p = 0; p < degree_; ++p) uinv[u[p]] = p;
    for (Point p = 0; p < degree_; ++p) img[p] = uinv[g[p]];
    g = Permutation(std::move(img));
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return sift(g).first.is_identity();
}

Permutation StabilizerChain::uniform_element(Rng& rng) const {
  Permutation g(degree_);
  // g = u_last * ... * u_0
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it)
    g = g * it->transversal[rng.below(it->orbit.size())];
  return g;
}

void StabilizerChain::rebuild_orbit(Level& l) {
  l.slot.assign(degree_, -1);
  l.orbit.assign(1, l.base);
  l.transversal.assign(1, Permutation(degree_));
  l.slot[l.base] = 0;
  for (std::size_t k = 0; k < l.orbit.size(); ++k) {
    for (const auto& s : l.gens) {
      Point g = s[l.orbit[k]];
      if (l.slot[g] >= 0) continue;
      l.slot[g] = static_cast<int>(l.orbit.size());
      l.orbit.push_back(g);
      l.transversal.push_back(l.transversal[k] * s);
    }
  }
}

void StabilizerChain::insert(const Permutation& h, std::size_t level) {
  if (level == levels_.size()) {
    Point moved = 0;
    while (h[moved] == moved) ++moved;
    Level l;
    l.base = moved;
    levels_.push_back(std::move(l));
  }
  for (std::size_t i = 0; i <= level; ++i) {
    levels_[i].gens.push_back(h);
    rebuild_orbit(levels_[i]);
  }
}

bool StabilizerChain::verify_once() {
  // Bottom-up: level i is sound once every Schreier generator of level i
  // sifts to the identity through the (already sound) levels below it.
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const Level& l = levels_[i];
    for (std::size_t k = 0; k < l.orbit.size(); ++k)
      for (const auto& s : l.gens) {
        Point img = s[l.orbit[k]];
        Permutation sg = l.transversal[k] * s * l.transversal[l.slot[img]].inverse();
        auto [res, lvl] = sift(sg, i + 1);
        if (!res.is_identity()) {
          insert(res, lvl);
          return false;
        }
      }
  }
  return true;
}

ProductReplacement::ProductReplacement(std::size_t degree, const std::vector<Permutation>& gens,
                                       std::uint64_t seed, int slots, int burn_in)
    : rng_(seed), acc_(degree) {
  if (gens.empty()) {
    slots_.assign(std::max(slots, 2), Permutation(degree));
  } else {
    int n = std::max<int>(slots, static_cast<int>(gens.size()) + 1);
    for (int i = 0; i < n; ++i) slots_.push_back(gens[i % gens.size()]);
  }
  for (int i = 0; i < burn_in; ++i) step();
}

void ProductReplacement::step() {
  const std::size_t n = slots_.size();
  std::size_t i = rng_.below(n);
  std::size_t j = rng_.below(n - 1);
  if (j >= i) ++j;
  const Permutation& other = rng_.coin() ? slots_[j] : slots_[j].inverse();
  Permutation o = other;
  slots_[i] = rng_.coin() ? slots_[i] * o : o * slots_[i];
  acc_ = acc_ * slots_[i];
}

Permutation ProductReplacement::next() {
  step();
  return acc_;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens, std::uint64_t seed)
    : degree_(degree), gens_(std::move(gens)),
      chain_(std::make_shared<StabilizerChain>(degree, gens_, seed)) {}

bool PermGroup::contains(const Permutation& g) const { return chain_->contains(g); }

Integer group_order(std::size_t degree, const std::vector<Permutation>& gens, std::uint64_t seed) {
  return StabilizerChain(degree, gens, seed).order();
}

RandomSource::RandomSource(const PermGroup& g, std::uint64_t seed, RandomMode mode)
    : group_(&g), mode_(mode), uniform_rng_(seed) {
  if (mode == RandomMode::ProductReplacement)
    pr_ = std::make_unique<ProductReplacement>(g.degree(), g.generators(), seed);
}

Permutation RandomSource::next() {
  if (mode_ == RandomMode::Uniform) return group_->chain().uniform_element(uniform_rng_);
  return pr_->next();
}

Rng& RandomSource::rng() { return pr_ ? pr_->rng() : uniform_rng_; }

Permutation conjugate_sample(const Permutation& rep, const PermGroup& g, RandomSource& src) {
  if (!g.contains(rep)) throw MembershipError("representative " + to_cycles(rep) + " is not in the group");
  Permutation c = src.next();
  return c.inverse() * rep * c;
}

namespace {

using nlohmann::ordered_json;

Permutation read_perm(const ordered_json& v, std::size_t degree, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a cycle string");
  try {
    return perm_from_cycles(v.get<std::string>(), degree);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

GroupFile parse_group_file(std::string_view document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("group syntax error: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw ParseError("group document must be an object");
  GroupFile g;
  if (doc.contains("name") && doc["name"].is_string()) g.name = doc["name"].get<std::string>();
  if (!doc.contains("degree") || !doc["degree"].is_number_unsigned() || doc["degree"].get<std::size_t>() == 0)
    throw ParseError("group: 'degree' must be a positive integer");
  g.degree = doc["degree"].get<std::size_t>();
  if (doc.contains("order")) {
    const auto& o = doc["order"];
    if (o.is_string()) g.stated_order = parse_integer(o.get<std::string>());
    else if (o.is_number_unsigned()) g.stated_order = to_integer(o.get<std::uint64_t>());
    else throw ParseError("group: 'order' must be an integer");
  }
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw ParseError("group: 'generators' must be a list");
  const auto& gens = doc["generators"];
  for (std::size_t i = 0; i < gens.size(); ++i)
    g.generators.push_back(read_perm(gens[i], g.degree, "generators[" + std::to_string(i) + "]"));
  if (doc.contains("classes")) {
    const auto& cls = doc["classes"];
    if (!cls.is_array()) throw ParseError("group: 'classes' must be a list");
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const std::string where = "classes[" + std::to_string(i) + "]";
      if (!cls[i].is_object() || !cls[i].contains("name") || !cls[i]["name"].is_string() ||
          !cls[i].contains("rep"))
        throw ParseError(where + ": expected {name, rep}");
      g.classes.push_back({cls[i]["name"].get<std::string>(), read_perm(cls[i]["rep"], g.degree, where)});
    }
  }
  return g;
}

GroupFile load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str());
}

std::string print_group_file(const GroupFile& g) {
  ordered_json doc;
  doc["name"] = g.name;
  doc["degree"] = g.degree;
  if (sgn(g.stated_order) > 0) doc["order"] = to_string(g.stated_order);
  doc["generators"] = ordered_json::array();
  for (const auto& p : g.generators) doc["generators"].push_back(to_cycles(p));
  if (!g.classes.empty()) {
    doc["classes"] = ordered_json::array();
    for (const auto& c : g.classes) doc["classes"].push_back({{"name", c.name}, {"rep", to_cycles(c.rep)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace cgt
