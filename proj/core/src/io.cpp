#include "realroots/io.hpp"

#include <cmath>

#include "realroots/errors.hpp"

namespace realroots::io {

namespace {

MultiIndex read_exponents(const Json& term, std::size_t expected) {
  if (!term.is_object() || !term.contains("exponents") || !term.contains("coeff"))
    throw ParseError("term needs \"exponents\" and \"coeff\"");
  const Json& e = term.at("exponents");
  if (!e.is_array() || e.size() != expected)
    throw ParseError("exponent vector must have " + std::to_string(expected) + " entries");
  std::vector<int> exps;
  for (const auto& v : e) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000)
      throw ParseError("exponents must be nonnegative integers");
    exps.push_back(v.get<int>());
  }
  return MultiIndex(std::move(exps));
}

double read_coeff(const Json& term) {
  const Json& c = term.at("coeff");
  if (!c.is_number()) throw ParseError("coeff must be a number");
  double v = c.get<double>();
  if (!std::isfinite(v)) throw ParseError("coeff must be finite");
  return v;
}

const Json& polynomials_of(const Json& j) {
  if (!j.is_object()) throw ParseError("system must be a JSON object");
  if (!j.contains("polynomials") || !j.at("polynomials").is_array())
    throw ParseError("system needs a \"polynomials\" array");
  return j.at("polynomials");
}

const Json& terms_of(const Json& p) {
  if (!p.is_object() || !p.contains("terms") || !p.at("terms").is_array())
    throw ParseError("polynomial needs a \"terms\" array");
  return p.at("terms");
}

}  // namespace

bool is_affine_json(const Json& j) {
  return j.is_object() && j.contains("affine") && j.at("affine").is_boolean() && j.at("affine").get<bool>();
}

PolynomialSystem system_from_json(const Json& j) {
  const Json& polys = polynomials_of(j);
  if (!j.contains("n") || !j.at("n").is_number_integer()) throw ParseError("system needs an integer \"n\"");
  const int n = j.at("n").get<int>();
  if (n < 1) throw ParseError("n must be >= 1");
  if (polys.size() != static_cast<std::size_t>(n)) throw ParseError("expected n polynomials");
  std::vector<int> degrees;
  if (j.contains("degrees")) {
    const Json& d = j.at("degrees");
    if (!d.is_array() || d.size() != static_cast<std::size_t>(n)) throw ParseError("\"degrees\" must list n degrees");
    for (const auto& v : d) {
      if (!v.is_number_integer() || v.get<int>() < 1) throw ParseError("degrees must be positive integers");
      degrees.push_back(v.get<int>());
    }
  }
  std::vector<HomogeneousPolynomial> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    std::vector<Term> terms;
    for (const auto& t : terms_of(polys[i])) {
      MultiIndex a = read_exponents(t, static_cast<std::size_t>(n) + 1);
      terms.push_back(Term{std::move(a), read_coeff(t)});
    }
    int d = degrees.empty() ? (terms.empty() ? 0 : terms.front().index.degree()) : degrees[i];
    if (d < 1) throw ParseError("polynomial " + std::to_string(i) + " has no degree");
    try {
      out.emplace_back(n + 1, d, std::move(terms));
    } catch (const Error& e) {
      throw ParseError("polynomial " + std::to_string(i) + ": " + e.what());
    }
  }
  try {
    return PolynomialSystem(std::move(out));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::vector<AffinePolynomial> affine_system_from_json(const Json& j) {
  const Json& polys = polynomials_of(j);
  if (!j.contains("n") || !j.at("n").is_number_integer()) throw ParseError("system needs an integer \"n\"");
  const int n = j.at("n").get<int>();
  if (n < 1 || polys.size() != static_cast<std::size_t>(n)) throw ParseError("expected n polynomials in n unknowns");
  std::vector<AffinePolynomial> out;
  for (const auto& p : polys) {
    AffinePolynomial g{n, {}};
    for (const auto& t : terms_of(p)) g.terms.push_back(Term{read_exponents(t, static_cast<std::size_t>(n)), read_coeff(t)});
    out.push_back(std::move(g));
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? std::string::npos : e.byte - 1);
  }
}

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const PolynomialSystem& f) {
  Json j;
  j["n"] = f.n();
  j["degrees"] = f.degrees();
  Json polys = Json::array();
  for (const auto& p : f.polynomials()) {
    Json terms = Json::array();
    for (const auto& t : p.terms()) terms.push_back({{"exponents", t.index.exponents()}, {"coeff", t.coeff}});
    polys.push_back({{"terms", terms}});
  }
  j["polynomials"] = polys;
  return j;
}

Json to_json(const SpherePoint& x) {
  Json a = Json::array();
  for (int i = 0; i < x.dim(); ++i) a.push_back(x[i]);
  return a;
}

Json to_json(const Certificate& c) {
  return Json{{"point", to_json(c.point)},
              {"beta", number(c.beta)},
              {"gamma_bound", number(c.gamma_bound)},
              {"alpha", number(c.alpha_bound)},
              {"mu", number(c.mu)},
              {"f_norm_at_x", number(c.f_norm_at_x)},
              {"r_x", number(c.inclusion_radius)},
              {"admissible", c.admissible}};
}

Json to_json(const RefinedZero& z) {
  return Json{{"zeta", to_json(z.zeta)},
              {"newton_steps", z.newton_steps},
              {"final_beta", number(z.final_beta)},
              {"converged", z.converged}};
}

Json to_json(const CountResult& r, bool with_stats) {
  Json zeros = Json::array();
  for (const auto& z : r.zeros) zeros.push_back(to_json(z));
  Json j{{"count", r.count},
         {"zeros", zeros},
         {"final_eta", r.final_eta},
         {"iterations", r.iterations},
         {"evaluations", r.evaluations},
         {"stopped", r.stopped},
         {"predicted_threshold", r.predicted_eta_threshold ? number(*r.predicted_eta_threshold) : Json(nullptr)}};
  if (with_stats) {
    Json h = Json::array();
    for (const auto& s : r.history)
      h.push_back({{"t", s.t},
                   {"eta", s.eta},
                   {"mesh_points", s.mesh_points},
                   {"vertices", s.vertices},
                   {"components", s.components},
                   {"separation_ok", s.separation_ok},
                   {"exclusion_ok", s.exclusion_ok},
                   {"evaluations", s.evaluations}});
    j["history"] = h;
  }
  return j;
}

}  // namespace realroots::io
