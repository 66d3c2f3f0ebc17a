#include "realroots_cli/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "realroots/errors.hpp"

namespace realroots::cli {

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::size_t pos() {
    skip();
    return pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos()), pos());
  }

  double number() {
    skip();
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    if (!std::isfinite(v)) fail("coefficient is not finite");
    return v;
  }

  int integer() {
    skip();
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    int v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin || v < 0) fail("expected a nonnegative integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

ParsedTerm parse_term(Lexer& lx, int n_vars, double sign) {
  ParsedTerm t{sign, std::vector<int>(static_cast<std::size_t>(n_vars), 0), lx.pos()};
  bool any = false;
  if (starts_number(lx.peek())) {
    t.coeff *= lx.number();
    any = true;
  }
  while (true) {
    std::size_t mark = lx.pos();
    bool star = lx.accept('*');
    if (lx.peek() != 'x') {
      if (star) lx.fail("expected a variable after '*'");
      break;
    }
    lx.accept('x');
    if (!std::isdigit(static_cast<unsigned char>(lx.peek()))) lx.fail("expected a variable index");
    std::size_t var_pos = lx.pos();
    int idx = lx.integer();
    if (idx >= n_vars)
      throw ParseError("variable x" + std::to_string(idx) + " out of range at position " + std::to_string(var_pos),
                       var_pos);
    int e = 1;
    if (lx.accept('^')) e = lx.integer();
    t.exponents[static_cast<std::size_t>(idx)] += e;
    any = true;
    (void)mark;
  }
  if (!any) lx.fail("expected a term");
  return t;
}

int total_degree(const std::vector<int>& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

}  // namespace

PolyExpr parse_expression(const std::string& text, int n_vars) {
  if (n_vars < 1) throw ParseError("need at least one variable");
  PolyExpr out{text, {}};
  Lexer lx(text);
  if (lx.done()) throw ParseError("empty expression", 0);
  double sign = 1.0;
  if (lx.accept('-')) sign = -1.0;
  else lx.accept('+');
  out.terms.push_back(parse_term(lx, n_vars, sign));
  while (!lx.done()) {
    if (lx.accept('+')) sign = 1.0;
    else if (lx.accept('-')) sign = -1.0;
    else lx.fail("expected '+' or '-'");
    out.terms.push_back(parse_term(lx, n_vars, sign));
  }
  return out;
}

HomogeneousPolynomial parse_polynomial(const std::string& text, int n_vars, int degree_hint) {
  PolyExpr e = parse_expression(text, n_vars);
  int degree = -1;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const auto& t = e.terms[i];
    if (t.coeff == 0.0) continue;
    int d = total_degree(t.exponents);
    if (degree < 0) {
      degree = d;
    } else if (d != degree) {
      throw ParseError("term " + std::to_string(i) + " has degree " + std::to_string(d) + ", expected " +
                           std::to_string(degree) + " (not homogeneous) at position " + std::to_string(t.position),
                       t.position);
    }
  }
  if (degree < 0) degree = degree_hint;
  if (degree < 1) throw ParseError("homogeneous polynomial needs degree >= 1", 0);
  std::vector<Term> terms;
  for (const auto& t : e.terms)
    if (t.coeff != 0.0) terms.push_back(Term{MultiIndex(t.exponents), t.coeff});
  return HomogeneousPolynomial(n_vars, degree, std::move(terms));
}

AffinePolynomial parse_affine(const std::string& text, int n_vars) {
  PolyExpr e = parse_expression(text, n_vars);
  std::map<std::vector<int>, double> merged;
  for (const auto& t : e.terms) merged[t.exponents] += t.coeff;
  AffinePolynomial g{n_vars, {}};
  for (const auto& [exps, c] : merged)
    if (c != 0.0) g.terms.push_back(Term{MultiIndex(exps), c});
  std::stable_sort(g.terms.begin(), g.terms.end(),
                   [](const Term& a, const Term& b) { return graded_lex_before(a.index, b.index); });
  return g;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {
std::string render(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    double c = t.coeff;
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    double a = std::abs(c);
    bool has_var = t.index.degree() > 0;
    std::string body;
    if (!has_var || a != 1.0) body = format_double(a);
    for (std::size_t j = 0; j < t.index.size(); ++j) {
      int e = t.index[j];
      if (e == 0) continue;
      if (!body.empty()) body += "*";
      body += "x" + std::to_string(j);
      if (e > 1) body += "^" + std::to_string(e);
    }
    out += body;
  }
  return out;
}
}  // namespace

std::string canonical(const HomogeneousPolynomial& f) {
  return render(std::vector<Term>(f.terms().begin(), f.terms().end()));
}

std::string canonical(const AffinePolynomial& g) { return render(g.terms); }

}  // namespace realroots::cli
