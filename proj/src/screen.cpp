#include "cgt/screen.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cgt/error.hpp"

namespace cgt {

std::optional<Family> parse_family(std::string_view name) {
  static const std::map<std::string_view, Family> names = {
      {"L2", Family::L2}, {"L3", Family::L3}, {"U3", Family::U3},
      {"L4", Family::L4}, {"U4", Family::U4}, {"S4", Family::S4}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::L2: return "L2";
    case Family::L3: return "L3";
    case Family::U3: return "U3";
    case Family::L4: return "L4";
    case Family::U4: return "U4";
    case Family::S4: return "S4";
  }
  return "?";
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

std::uint64_t family_witness_order(const FamilyBound& fb) {
  const std::uint64_t q = fb.q;
  if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power");
  switch (fb.family) {
    case Family::L2: return (q + 1) / std::gcd<std::uint64_t>(2, q - 1);
    case Family::L3: return (q * q + q + 1) / std::gcd<std::uint64_t>(3, q - 1);
    case Family::U3: return (q * q - q + 1) / std::gcd<std::uint64_t>(3, q + 1);
    case Family::L4:
    case Family::U4:
    case Family::S4: return (q * q + 1) / std::gcd<std::uint64_t>(2, q - 1);
  }
  return 0;
}

Integer family_group_order(const FamilyBound& fb) {
  if (!is_prime_power(fb.q)) throw std::invalid_argument("q must be a prime power");
  const Integer q = to_integer(fb.q);
  auto pw = [&](unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), e);
    return r;
  };
  auto g = [&](unsigned long d, long shift) {
    return Integer(std::gcd<std::uint64_t>(d, shift < 0 ? fb.q - 1 : fb.q + 1));
  };
  switch (fb.family) {
    case Family::L2: return pw(1) * (pw(2) - 1) / g(2, -1);
    case Family::L3: return pw(3) * (pw(2) - 1) * (pw(3) - 1) / g(3, -1);
    case Family::U3: return pw(3) * (pw(2) - 1) * (pw(3) + 1) / g(3, +1);
    case Family::L4: return pw(6) * (pw(2) - 1) * (pw(3) - 1) * (pw(4) - 1) / g(4, -1);
    case Family::U4: return pw(6) * (pw(2) - 1) * (pw(3) + 1) * (pw(4) - 1) / g(4, +1);
    case Family::S4: return pw(4) * (pw(2) - 1) * (pw(4) - 1) / g(2, -1);
  }
  return 0;
}

std::vector<std::uint64_t> Candidate::all_witnesses() const {
  std::vector<std::uint64_t> out = witness_orders;
  if (family) out.push_back(family_witness_order(*family));
  return out;
}

Decision lagrange_screen(const Candidate& c, const Integer& target_order) {
  if (sgn(c.order) > 0 && target_order % c.order == 0) return {Verdict::Pass, "PASS", 0, ""};
  return {Verdict::Eliminate, "LAGRANGE", 0, "order " + to_string(c.order) + " does not divide " + to_string(target_order)};
}

Decision spectrum_screen(const Candidate& c, const std::set<long>& spectrum) {
  for (std::uint64_t w : c.all_witnesses())
    if (!spectrum.count(static_cast<long>(w)))
      return {Verdict::Eliminate, "SPECTRUM", w, "element order " + std::to_string(w) + " absent"};
  return {Verdict::Pass, "PASS", 0, ""};
}

std::vector<ScreenLine> run_screen(const std::vector<Candidate>& candidates, const CharacterTable& table) {
  const auto spectrum = element_order_spectrum(table);
  std::vector<ScreenLine> out;
  std::map<std::string, std::size_t> by_name;
  for (const auto& c : candidates) {
    Decision d = lagrange_screen(c, table.group_order);
    if (d.verdict == Verdict::Pass) d = spectrum_screen(c, spectrum);
    by_name[c.name] = out.size();
    out.push_back({c.name, d});
  }
  // A candidate containing an eliminated one cannot embed either.
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (out[i].decision.verdict == Verdict::Eliminate) continue;
    for (const auto& inner : candidates[i].contains) {
      auto it = by_name.find(inner);
      if (it == by_name.end()) continue;
      const auto& di = out[it->second].decision;
      if (di.verdict == Verdict::Eliminate && di.code != "CONTAINS") {
        out[i].decision = {Verdict::Eliminate, "CONTAINS", di.witness, "contains " + inner};
        break;
      }
    }
    if (out[i].decision.verdict == Verdict::Pass)
      out[i].decision = {Verdict::Pass, "RETAINED", 0, "requires a non-numeric argument"};
  }
  return out;
}

namespace {

using nlohmann::json;

Candidate read_candidate(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
    throw ParseError(where + ": expected an object with a name");
  Candidate c;
  c.name = j["name"].get<std::string>();
  if (j.contains("family") || j.contains("q")) {
    if (!j.contains("family") || !j["family"].is_string() || !j.contains("q") ||
        !j["q"].is_number_unsigned())
      throw ParseError(where + ": family and q must be given together");
    auto f = parse_family(j["family"].get<std::string>());
    if (!f) throw ParseError(where + ": unknown family " + j["family"].get<std::string>());
    std::uint64_t q = j["q"].get<std::uint64_t>();
    if (!is_prime_power(q)) throw ParseError(where + ": q is not a prime power");
    c.family = FamilyBound{*f, q};
  }
  if (j.contains("order")) {
    const auto& o = j["order"];
    if (o.is_string()) c.order = parse_integer(o.get<std::string>());
    else if (o.is_number_unsigned()) c.order = to_integer(o.get<std::uint64_t>());
    else throw ParseError(where + ": bad order");
  } else if (c.family) {
    c.order = family_group_order(*c.family);
  } else {
    throw ParseError(where + ": order missing");
  }
  if (j.contains("witnessOrders")) {
    if (!j["witnessOrders"].is_array()) throw ParseError(where + ": witnessOrders must be a list");
    for (const auto& w : j["witnessOrders"]) {
      if (!w.is_number_unsigned() || w.get<std::uint64_t>() == 0)
        throw ParseError(where + ": witness orders must be positive integers");
      c.witness_orders.push_back(w.get<std::uint64_t>());
    }
  }
  if (j.contains("contains")) {
    if (!j["contains"].is_array()) throw ParseError(where + ": contains must be a list");
    for (const auto& s : j["contains"]) {
      if (!s.is_string()) throw ParseError(where + ": contains must list names");
      c.contains.push_back(s.get<std::string>());
    }
  }
  if (c.witness_orders.empty() && !c.family && c.contains.empty())
    throw ParseError(where + ": " + c.name + " has no witness orders");
  return c;
}

}  // namespace

std::vector<Candidate> parse_candidates(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("candidate syntax error: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("candidates")) throw ParseError("missing 'candidates'");
    list = &doc["candidates"];
  }
  if (!list->is_array()) throw ParseError("candidates must be a list");
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < list->size(); ++i)
    out.push_back(read_candidate((*list)[i], "candidates[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Candidate> load_candidates(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_candidates(ss.str());
}

std::string format_screen(const std::vector<ScreenLine>& lines, const std::string& target_name) {
  std::ostringstream out;
  std::size_t elim = 0;
  std::map<std::string, std::size_t> codes;
  out << "# screen against " << target_name << "\n";
  for (const auto& l : lines) {
    const auto& d = l.decision;
    out << l.name << "\t" << (d.verdict == Verdict::Pass ? "PASS" : "ELIMINATE") << "\t" << d.code;
    if (d.witness) out << "\t" << d.witness;
    else if (!d.detail.empty()) out << "\t-";
    if (!d.detail.empty()) out << "\t" << d.detail;
    out << "\n";
    if (d.verdict == Verdict::Eliminate) ++elim;
    ++codes[d.code];
  }
  out << "candidates " << lines.size() << " eliminated " << elim << " retained " << (lines.size() - elim) << "\n";
  for (const auto& [c, n] : codes) out << "code " << c << " " << n << "\n";
  return out.str();
}

}  // namespace cgt
