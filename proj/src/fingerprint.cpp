#include "cgt/fingerprint.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cgt/error.hpp"

namespace cgt {

std::uint64_t word_order(const Permutation& s, const Permutation& t, std::string_view word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  Permutation w(s.degree());
  for (char ch : word) {
    if (ch == 's') w = w * s;
    else if (ch == 't') w = w * t;
    else throw std::invalid_argument("word letter must be s or t: " + std::string(word));
  }
  return element_order(w);
}

namespace {

void check_orders(const Permutation& x, const Permutation& y) {
  if (x.degree() != y.degree()) throw OrderMismatch("x and y have different degrees");
  auto ox = element_order(x), oy = element_order(y);
  if (ox != 2 || oy != 3)
    throw OrderMismatch("fingerprints need |x| = 2 and |y| = 3, got " + std::to_string(ox) +
                        " and " + std::to_string(oy));
}

}  // namespace

Fingerprint base_fingerprint(const Permutation& x, const Permutation& y) {
  return extended_fingerprint(x, y, {});
}

Fingerprint extended_fingerprint(const Permutation& x, const Permutation& y,
                                 const std::vector<std::string>& words) {
  check_orders(x, y);
  for (const auto& w : words)
    if (w.empty()) throw std::invalid_argument("empty extra word");
  const Permutation s = x * y;
  const Permutation t = s * y;
  Fingerprint f;
  for (std::size_t i = 0; i < kBaseWords.size(); ++i) f.base[i] = word_order(s, t, kBaseWords[i]);
  for (const auto& w : words) f.ext.push_back(word_order(s, t, w));
  return f;
}

std::pair<Permutation, Permutation> reciprocal(const Permutation& x, const Permutation& y) {
  return {x, y * y};
}

namespace {

std::string merged(std::uint64_t a, std::uint64_t b) {
  if (a == b) return std::to_string(a);
  return std::to_string(std::min(a, b)) + "/" + std::to_string(std::max(a, b));
}

}  // namespace

std::string canonical_display(const Fingerprint& a, const Fingerprint& b) {
  if (a.ext.size() != b.ext.size()) throw std::invalid_argument("fingerprints of different shape");
  std::string out = "(";
  for (std::size_t i = 0; i < a.base.size(); ++i) out += (i ? "," : "") + merged(a.base[i], b.base[i]);
  out += ")";
  if (!a.ext.empty()) {
    out += " [";
    for (std::size_t i = 0; i < a.ext.size(); ++i) out += (i ? "," : "") + merged(a.ext[i], b.ext[i]);
    out += "]";
  }
  return out;
}

std::string table_row(const Fingerprint& a, const Fingerprint& b) {
  std::string out;
  for (std::size_t i = 0; i < a.base.size(); ++i) out += (i ? "&" : "") + merged(a.base[i], b.base[i]);
  return out;
}

std::string display_to_row(std::string_view display) {
  auto open = display.find('('), close = display.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw ParseError("not a fingerprint display: " + std::string(display));
  std::string out(display.substr(open + 1, close - open - 1));
  std::replace(out.begin(), out.end(), ',', '&');
  return out;
}

std::string normalize_row(std::string_view row) {
  std::string out;
  std::size_t i = 0, field = 0;
  auto number = [&](std::size_t& pos) -> std::uint64_t {
    std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < row.size() && row[pos] >= '0' && row[pos] <= '9') v = v * 10 + (row[pos++] - '0');
    if (pos == start || v == 0) throw ParseError("expected a positive order", start);
    return v;
  };
  while (i < row.size() && (row[i] == ' ')) ++i;
  for (;;) {
    std::uint64_t a = number(i), b = a;
    bool slashed = false;
    if (i < row.size() && row[i] == '/') {
      ++i;
      b = number(i);
      slashed = true;
    }
    out += field++ ? "&" : "";
    out += slashed ? std::to_string(std::min(a, b)) + "/" + std::to_string(std::max(a, b))
                   : std::to_string(a);
    while (i < row.size() && row[i] == ' ') ++i;
    if (i == row.size()) break;
    if (row[i] != '&' && row[i] != '\t') throw ParseError("expected '&' or tab", i);
    ++i;
    while (i < row.size() && row[i] == ' ') ++i;
  }
  return out;
}

bool row_is_split(std::string_view row) { return row.find('/') != std::string_view::npos; }

std::size_t implied_class_count(const std::vector<FpRow>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += row_is_split(r.row) ? 2 : 1;
  return n;
}

std::vector<FpGroup> parse_fp_table(std::string_view text) {
  std::vector<FpGroup> out;
  std::string classes;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (line.rfind("group ", 0) == 0) {
      out.push_back({std::string(line.substr(6)), {}});
      classes.clear();
    } else if (line.rfind("classes ", 0) == 0) {
      classes = std::string(line.substr(8));
    } else {
      if (out.empty()) throw ParseError(where + ": row before any 'group' line");
      try {
        out.back().rows.push_back({classes, normalize_row(line)});
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<FpGroup> load_fp_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fp_table(ss.str());
}

}  // namespace cgt
