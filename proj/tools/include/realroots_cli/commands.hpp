#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "realroots/poly.hpp"

namespace realroots::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBudgetExhausted = 2,
  kBadInput = 3,
};

struct LoadedSystem {
  PolynomialSystem system;
  /// Set when the input was affine and `system` is its lift.
  std::optional<std::vector<AffinePolynomial>> affine;
};

/// JSON (first non-blank character '{') or one expression per line, with blank
/// lines and '#' comments ignored. n expressions are read in n+1 variables, or
/// in n variables and lifted when `affine` is set.
LoadedSystem load_system(const std::string& text, bool affine);

/// Comma-separated numbers, e.g. "1,0,0".
std::vector<double> parse_number_list(const std::string& text);

/// Full command line, argv[0] included. Writes results to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realroots::cli
