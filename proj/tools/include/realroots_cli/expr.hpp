#pragma once

// Polynomial expressions over x0, x1, ...:
//   expr  := term (('+' | '-') term)*      (a leading sign is allowed)
//   term  := coeff? ('*'? var ('^' int)?)*
//   var   := 'x' int
//   coeff := decimal, optionally with an exponent part
// Whitespace is insignificant.

#include <string>
#include <vector>

#include "realroots/poly.hpp"

namespace realroots::cli {

struct ParsedTerm {
  double coeff;
  std::vector<int> exponents;
  /// Offset of the term's first character in the source.
  std::size_t position;
};

struct PolyExpr {
  std::string source;
  std::vector<ParsedTerm> terms;
};

/// Syntax only; throws ParseError with the offending offset.
PolyExpr parse_expression(const std::string& text, int n_vars);

/// Throws ParseError when terms differ in total degree. `degree_hint` fixes the
/// degree of an expression that is identically zero.
HomogeneousPolynomial parse_polynomial(const std::string& text, int n_vars, int degree_hint = 0);
AffinePolynomial parse_affine(const std::string& text, int n_vars);

/// Terms in graded-lex order, coefficients printed to round-trip exactly.
std::string canonical(const HomogeneousPolynomial& f);
std::string canonical(const AffinePolynomial& g);

/// Shortest decimal text that reads back as the same double, independent of locale.
std::string format_double(double v);
/// Fixed-point text with `decimals` digits, independent of locale.
std::string format_fixed(double v, int decimals);

}  // namespace realroots::cli
