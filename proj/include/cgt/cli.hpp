// Command-line front end. Exit codes: 0 success, 1 usage error,
// 2 input or parse error, 3 internal invariant violation.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace cgt {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Finds an input file: the path as given, then under $CGT_FIXTURES and the
// built-in fixture directory (directly or in tables/, groups/, ledgers/,
// candidates/, catalogs/, fingerprints/). Returns the path unchanged if
// nothing matches so the caller reports the original name.
std::filesystem::path resolve_input(const std::string& path);

}  // namespace cgt
