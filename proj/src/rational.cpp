#include "cgt/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "cgt/error.hpp"

namespace cgt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view s = trim(text);
  if (!valid_integer(s))
    throw ParseError("malformed integer '" + std::string(text) + "'");
  if (s.front() == '+')
    s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  std::string_view den_text = trim(s.substr(slash + 1));
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw ParseError("sign in rational denominator '" + std::string(text) + "'");
  Integer den = parse_integer(den_text);
  if (den == 0)
    throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1)
    return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::uint64_t to_u64(const Integer& value) {
  if (value < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64)
    throw std::overflow_error("integer " + value.get_str() + " exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

}  // namespace cgt
