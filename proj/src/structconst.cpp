#include "cgt/structconst.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cgt/error.hpp"

namespace cgt {

Rational xi(const CharacterTable& t, const ClassTriple& tr) {
  const std::size_t n = t.size();
  if (tr.c1 >= n || tr.c2 >= n || tr.c3 >= n) throw std::out_of_range("xi: class index");
  const ClassIndex inv3 = inverse_class(t, tr.c3);
  Rational rsum;
  Cyclotomic csum;
  Rational tmp;
  for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
    const auto& row = t.irreducibles[i];
    const auto &a = row[tr.c1], &b = row[tr.c2], &c = row[inv3];
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    const Rational deg = row[0].to_rational();
    if (a.is_rational() && b.is_rational() && c.is_rational()) {
      tmp = a.to_rational() * b.to_rational();
      tmp *= c.to_rational();
      tmp /= deg;
      rsum += tmp;
    } else {
      csum += a * b * c * Cyclotomic(Rational(1) / deg);
    }
  }
  Rational sum = rsum;
  if (!csum.is_zero()) {
    if (!csum.is_rational())
      throw NotRational("character sum for (" + t.classes[tr.c1].name + "," +
                        t.classes[tr.c2].name + "," + t.classes[tr.c3].name +
                        ") is irrational: " + csum.to_string());
    sum += csum.to_rational();
  }
  Rational scale(t.class_size(tr.c1) * t.class_size(tr.c2) * t.class_size(tr.c3),
                 t.group_order * t.group_order);
  scale.canonicalize();
  Rational out = scale * sum;
  if (sgn(out) < 0)
    throw InvariantError("negative structure constant for (" + t.classes[tr.c1].name + "," +
                         t.classes[tr.c2].name + "," + t.classes[tr.c3].name + ")");
  return out;
}

std::vector<ProfileEntry> xi_profile(const CharacterTable& t, std::array<long, 3> orders,
                                     bool include_zero) {
  std::array<std::vector<ClassIndex>, 3> pick;
  for (int k = 0; k < 3; ++k)
    for (ClassIndex c = 0; c < t.size(); ++c)
      if (t.classes[c].element_order == orders[k]) pick[k].push_back(c);
  std::vector<ProfileEntry> out;
  for (ClassIndex a : pick[0])
    for (ClassIndex b : pick[1])
      for (ClassIndex c : pick[2]) {
        ClassTriple tr{a, b, c};
        Rational v = xi(t, tr);
        if (sgn(v) == 0 && !include_zero) continue;
        out.push_back({tr, t.classes[a].name + "," + t.classes[b].name + "," + t.classes[c].name,
                       std::move(v)});
      }
  return out;
}

ClassTriple parse_triple(const CharacterTable& t, std::string_view names) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : names) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw ParseError("expected three class names: " + std::string(names));
  return {class_index(t, parts[0]), class_index(t, parts[1]), class_index(t, parts[2])};
}

LedgerReport ledger_check(const Ledger& l) {
  LedgerReport r{l.name, l.total, 0, 0};
  for (const auto& [label, v] : l.parts) r.sum += v;
  r.residual = l.total - r.sum;
  return r;
}

namespace {

using nlohmann::ordered_json;

Rational read_rational(const ordered_json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return parse_rational(v.dump());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const DivisionByZero& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a rational string");
}

Ledger read_ledger(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  Ledger l;
  if (auto it = j.find("name"); it != j.end() && it->is_string()) l.name = it->get<std::string>();
  auto tot = j.find("total");
  if (tot == j.end()) throw ParseError(where + ": missing 'total'");
  l.total = read_rational(*tot, where + ".total");
  if (auto it = j.find("parts"); it != j.end()) {
    if (!it->is_array()) throw ParseError(where + ".parts: expected a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& p = (*it)[i];
      const std::string w = where + ".parts[" + std::to_string(i) + "]";
      if (p.is_array() && p.size() == 2 && p[0].is_string())
        l.parts.emplace_back(p[0].get<std::string>(), read_rational(p[1], w));
      else if (p.is_object() && p.contains("value"))
        l.parts.emplace_back(p.value("label", std::string()), read_rational(p["value"], w));
      else
        l.parts.emplace_back(std::string(), read_rational(p, w));
    }
  }
  if (auto it = j.find("table"); it != j.end() && it->is_string()) l.table = it->get<std::string>();
  if (auto it = j.find("triples"); it != j.end()) {
    if (!it->is_array()) throw ParseError(where + ".triples: expected a list");
    for (const auto& s : *it) {
      if (!s.is_string()) throw ParseError(where + ".triples: expected class-name strings");
      l.triples.push_back(s.get<std::string>());
    }
  }
  return l;
}

}  // namespace

std::vector<Ledger> parse_ledgers(std::string_view document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("ledger syntax error: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  std::vector<Ledger> out;
  if (doc.is_object() && doc.contains("ledgers")) {
    const auto& arr = doc["ledgers"];
    if (!arr.is_array()) throw ParseError("'ledgers' must be a list");
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(read_ledger(arr[i], "ledgers[" + std::to_string(i) + "]"));
  } else {
    out.push_back(read_ledger(doc, "ledger"));
  }
  return out;
}

std::vector<Ledger> load_ledgers(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ledgers(ss.str());
}

std::string format_ledger_report(const LedgerReport& r) {
  return (r.name.empty() ? std::string("ledger") : r.name) + " total " + to_string(r.total) +
         " parts " + to_string(r.sum) + " residual " + to_string(r.residual);
}

Rational expected_frequency(const Rational& xi_total, const Integer& pair_centralizer_order) {
  if (sgn(xi_total) == 0) throw DivisionByZero("expected_frequency: xi_total is zero");
  if (sgn(pair_centralizer_order) <= 0)
    throw std::invalid_argument("expected_frequency: centralizer order must be positive");
  Rational w(Integer(1), pair_centralizer_order);
  return w / xi_total;
}

}  // namespace cgt
