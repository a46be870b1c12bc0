// Exception types shared by all cgt modules.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text. `position` is a 0-based byte offset into the parsed
// string, or npos when the failure is not tied to a location.
struct ParseError : Error {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  ParseError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what
                               : what + " at offset " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

// Well-formed input that violates a mathematical invariant (orthogonality,
// power-map consistency, a group order that does not match, ...).
struct InvariantError : Error {
  using Error::Error;
};

struct NotRational : Error {
  using Error::Error;
};

struct UnknownClass : Error {
  using Error::Error;
};

struct MembershipError : Error {
  using Error::Error;
};

struct OrderMismatch : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace cgt
