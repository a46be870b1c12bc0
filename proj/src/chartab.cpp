#include "cgt/chartab.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cgt/error.hpp"

namespace cgt {

namespace {

using nlohmann::ordered_json;

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Integer read_integer(const ordered_json& v, const std::string& where) {
  if (v.is_number_unsigned()) return to_integer(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    try {
      return parse_integer(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected an integer");
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string label(const CharacterTable& t, ClassIndex c) { return t.classes[c].name; }

}  // namespace

void CharacterTable::validate() const {
  const std::size_t n = classes.size();
  if (n == 0) throw InvariantError("table has no classes");
  if (sgn(group_order) <= 0) throw InvariantError("group order must be positive");
  if (classes[0].element_order != 1 || classes[0].centralizer_order != group_order)
    throw InvariantError("first class must be the identity");
  if (irreducibles.size() != n)
    throw InvariantError("expected " + std::to_string(n) + " irreducibles, found " +
                         std::to_string(irreducibles.size()));

  std::set<std::string> names;
  std::set<long> primes;
  for (ClassIndex c = 0; c < n; ++c) {
    const auto& k = classes[c];
    if (!names.insert(k.name).second) throw InvariantError("duplicate class name " + k.name);
    if (k.element_order < 1) throw InvariantError("class " + k.name + ": bad element order");
    if (c > 0 && k.element_order == 1) throw InvariantError("class " + k.name + ": second identity class");
    if (sgn(k.centralizer_order) <= 0 || group_order % k.centralizer_order != 0)
      throw InvariantError("class " + k.name + ": centralizer order does not divide |G|");
    for (long p : prime_factors(k.element_order)) primes.insert(p);
  }
  for (ClassIndex c = 0; c < n; ++c) {
    const auto& k = classes[c];
    for (long p : primes)
      if (!k.power_maps.count(p))
        throw InvariantError("class " + k.name + ": missing " + std::to_string(p) + "-power map");
    for (const auto& [p, d] : k.power_maps) {
      long want = k.element_order / std::gcd(k.element_order, p);
      if (classes[d].element_order != want)
        throw InvariantError("power map inconsistency: " + k.name + "^" + std::to_string(p) +
                             " = " + classes[d].name + " has order " +
                             std::to_string(classes[d].element_order) + ", expected " +
                             std::to_string(want));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (irreducibles[i].size() != n)
      throw InvariantError("character " + std::to_string(i + 1) + " has wrong length");
    const auto& deg = irreducibles[i][0];
    if (!deg.is_rational() || sgn(deg.to_rational()) <= 0 ||
        deg.to_rational().get_den() != 1)
      throw InvariantError("character " + std::to_string(i + 1) +
                           ": degree is not a positive integer");
  }

  // Rational columns hold rational integers, so their share of each inner
  // product is computed in Z; only irrational columns need cyclotomic work.
  std::vector<ClassIndex> rat_cols, irr_cols;
  std::vector<char> rational_col(n, 1);
  for (ClassIndex c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n && rational_col[c]; ++i)
      rational_col[c] = irreducibles[i][c].is_rational();
    (rational_col[c] ? rat_cols : irr_cols).push_back(c);
  }
  std::vector<std::vector<Integer>> zval(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (ClassIndex c : rat_cols) {
      Rational r = irreducibles[i][c].to_rational();
      if (r.get_den() != 1)
        throw InvariantError("character " + std::to_string(i + 1) + " at " + label(*this, c) +
                             ": value is not an algebraic integer");
      zval[i][c] = r.get_num();
    }
  std::vector<Integer> sizes(n);
  for (ClassIndex c = 0; c < n; ++c) sizes[c] = class_size(c);

  std::vector<std::vector<Cyclotomic>> conj(n, std::vector<Cyclotomic>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (ClassIndex c : irr_cols) conj[i][c] = irreducibles[i][c].conjugate();

  Integer acc, tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      acc = 0;
      for (ClassIndex c : rat_cols) {
        mpz_mul(tmp.get_mpz_t(), zval[i][c].get_mpz_t(), zval[j][c].get_mpz_t());
        mpz_addmul(acc.get_mpz_t(), tmp.get_mpz_t(), sizes[c].get_mpz_t());
      }
      Cyclotomic s(acc);
      for (ClassIndex c : irr_cols) s += Cyclotomic(sizes[c]) * irreducibles[i][c] * conj[j][c];
      Cyclotomic want = i == j ? Cyclotomic(group_order) : Cyclotomic();
      if (s != want)
        throw InvariantError("row orthogonality fails for characters " + std::to_string(i + 1) +
                             " and " + std::to_string(j + 1) + ": inner product " +
                             s.to_string() + ", expected " + want.to_string());
    }

  for (ClassIndex c = 0; c < n; ++c)
    for (ClassIndex d = c; d < n; ++d) {
      Cyclotomic s;
      const bool rc = rational_col[c], rd = rational_col[d];
      if (rc && rd) {
        acc = 0;
        for (std::size_t i = 0; i < n; ++i)
          mpz_addmul(acc.get_mpz_t(), zval[i][c].get_mpz_t(), zval[i][d].get_mpz_t());
        s = Cyclotomic(acc);
      } else {
        for (std::size_t i = 0; i < n; ++i)
          s += irreducibles[i][c] * (rd ? irreducibles[i][d] : conj[i][d]);
      }
      Cyclotomic want = c == d ? Cyclotomic(classes[c].centralizer_order) : Cyclotomic();
      if (s != want)
        throw InvariantError("column orthogonality fails for classes " + label(*this, c) +
                             " and " + label(*this, d) + ": sum " + s.to_string() +
                             ", expected " + want.to_string());
    }

  // A prime p coprime to the element order permutes classes like the Galois
  // automorphism E(n) -> E(n)^p acts on values.
  for (ClassIndex c = 0; c < n; ++c)
    for (const auto& [p, d] : classes[c].power_maps) {
      if (classes[c].element_order % p == 0) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (irreducibles[i][d] != irreducibles[i][c].galois(p))
          throw InvariantError("power map inconsistency: " + label(*this, c) + "^" +
                               std::to_string(p) + " = " + label(*this, d) +
                               " disagrees with the Galois action on character " +
                               std::to_string(i + 1));
    }
}

CharacterTable parse_table(std::string_view document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("table syntax error: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw ParseError("table document must be an object");

  CharacterTable t;
  const auto& g = field(doc, "group", "table");
  if (!g.is_string()) throw ParseError("table: 'group' must be a string");
  t.group_name = g.get<std::string>();
  t.group_order = read_integer(field(doc, "order", "table"), "order");

  const auto& cls = field(doc, "classes", "table");
  if (!cls.is_array()) throw ParseError("table: 'classes' must be a list");
  std::map<std::string, ClassIndex> index;
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const std::string where = "classes[" + std::to_string(c) + "]";
    const auto& e = cls[c];
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    ConjClass k;
    const auto& nm = field(e, "name", where);
    if (!nm.is_string()) throw ParseError(where + ": 'name' must be a string");
    k.name = nm.get<std::string>();
    const auto& eo = field(e, "elementOrder", where);
    if (!eo.is_number_integer()) throw ParseError(where + ": 'elementOrder' must be an integer");
    k.element_order = eo.get<long>();
    k.centralizer_order = read_integer(field(e, "centralizerOrder", where), where + ".centralizerOrder");
    if (!index.emplace(k.name, c).second) throw InvariantError("duplicate class name " + k.name);
    t.classes.push_back(std::move(k));
  }
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const std::string where = "classes[" + std::to_string(c) + "].powerMaps";
    const auto& pm = field(cls[c], "powerMaps", "classes[" + std::to_string(c) + "]");
    if (!pm.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, target] : pm.items()) {
      long p = 0;
      try {
        std::size_t used = 0;
        p = std::stol(key, &used);
        if (used != key.size()) p = 0;
      } catch (const std::exception&) {
        p = 0;
      }
      if (!is_prime(p)) throw ParseError(where + ": key '" + key + "' is not a prime");
      if (!target.is_string()) throw ParseError(where + ": target must be a class name");
      auto it = index.find(target.get<std::string>());
      if (it == index.end())
        throw InvariantError(where + ": unknown class " + target.get<std::string>());
      t.classes[c].power_maps[p] = it->second;
    }
  }

  const auto& irr = field(doc, "irreducibles", "table");
  if (!irr.is_array()) throw ParseError("table: 'irreducibles' must be a list");
  for (std::size_t i = 0; i < irr.size(); ++i) {
    if (!irr[i].is_array())
      throw ParseError("irreducibles[" + std::to_string(i) + "]: expected a list");
    std::vector<Cyclotomic> row;
    for (std::size_t j = 0; j < irr[i].size(); ++j) {
      const auto& v = irr[i][j];
      const std::string where = "irreducibles[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      try {
        if (v.is_string()) row.push_back(parse_cyclo(v.get<std::string>()));
        else if (v.is_number_integer()) row.push_back(Cyclotomic(Integer(v.dump())));
        else throw ParseError("expected a cyclotomic string");
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    t.irreducibles.push_back(std::move(row));
  }
  t.validate();
  return t;
}

CharacterTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

std::string print_table(const CharacterTable& t) {
  auto q = [](const std::string& s) { return ordered_json(s).dump(); };
  std::ostringstream out;
  out << "{\n  \"group\": " << q(t.group_name) << ",\n  \"order\": " << q(to_string(t.group_order))
      << ",\n  \"classes\": [\n";
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    const auto& k = t.classes[c];
    out << "    {\"name\": " << q(k.name) << ", \"elementOrder\": " << k.element_order
        << ", \"centralizerOrder\": " << q(to_string(k.centralizer_order)) << ", \"powerMaps\": {";
    bool first = true;
    for (const auto& [p, d] : k.power_maps) {
      out << (first ? "" : ", ") << q(std::to_string(p)) << ": " << q(t.classes[d].name);
      first = false;
    }
    out << "}}" << (c + 1 < t.classes.size() ? "," : "") << "\n";
  }
  out << "  ],\n  \"irreducibles\": [\n";
  for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
    out << "    [";
    for (std::size_t j = 0; j < t.irreducibles[i].size(); ++j)
      out << (j ? ", " : "") << q(t.irreducibles[i][j].to_string());
    out << "]" << (i + 1 < t.irreducibles.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

ClassIndex class_index(const CharacterTable& t, std::string_view name) {
  for (ClassIndex c = 0; c < t.classes.size(); ++c)
    if (t.classes[c].name == name) return c;
  throw UnknownClass("unknown class " + std::string(name) + " in " + t.group_name);
}

namespace {

ClassIndex prime_power(const CharacterTable& t, ClassIndex c, long p) {
  auto it = t.classes[c].power_maps.find(p);
  if (it != t.classes[c].power_maps.end()) return it->second;
  // p does not divide |g|: find the Galois-image column.
  const long n = t.classes[c].element_order;
  for (ClassIndex d = 0; d < t.size(); ++d) {
    if (t.classes[d].element_order != n) continue;
    bool match = true;
    for (std::size_t i = 0; i < t.irreducibles.size() && match; ++i)
      match = t.irreducibles[i][d] == t.irreducibles[i][c].galois(p);
    if (match) return d;
  }
  throw InvariantError("no class for " + t.classes[c].name + "^" + std::to_string(p));
}

}  // namespace

ClassIndex power_class(const CharacterTable& t, ClassIndex c, long k) {
  const long n = t.classes.at(c).element_order;
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return 0;
  for (long p : prime_factors(k)) c = prime_power(t, c, p);
  return c;
}

ClassIndex inverse_class(const CharacterTable& t, ClassIndex c) {
  return power_class(t, c, t.classes.at(c).element_order - 1);
}

std::set<long> element_order_spectrum(const CharacterTable& t) {
  std::set<long> out;
  for (const auto& k : t.classes) out.insert(k.element_order);
  return out;
}

}  // namespace cgt
