#include "realroots/scalar_theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "realroots/errors.hpp"

namespace realroots::theory {

namespace {

constexpr int kBisectionIterations = 200;
constexpr double kBisectionTol = 1e-12;

double alpha_tight_value() { return 3.0 - 2.0 * std::sqrt(2.0); }

void check_alpha(double alpha, const char* where) {
  // Accept the boundary up to rounding in 3 - 2 sqrt 2.
  if (!(alpha > 0.0) || alpha > alpha_tight_value() * (1.0 + 1e-15)) {
    std::ostringstream msg;
    msg << where << ": alpha = " << alpha << " outside (0, 3 - 2 sqrt 2]";
    throw DomainError(msg.str());
  }
}

double discriminant(double alpha) {
  double d = 1.0 - 6.0 * alpha + alpha * alpha;
  return d < 0.0 ? 0.0 : d;
}

// Bisection on [lo, hi] for a sign change of g. Stops once the bracket is
// below tol or after the iteration cap.
double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < kBisectionIterations && hi - lo > kBisectionTol * 1e-3; ++it) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double compute_alpha_star() {
  const double a0 = (13.0 - 3.0 * std::sqrt(17.0)) / 4.0;
  auto g = [a0](double a) {
    double s = 1.0 - a * r0(a);
    return a - a0 * s * s;
  };
  // g(0+) = -alpha0 < 0. Scan for the first sign change, then bisect, so the
  // smallest positive root is the one found.
  const double top = alpha_tight_value();
  const int scan = 4096;
  double prev = 1e-14;
  for (int k = 1; k <= scan; ++k) {
    double a = top * k / scan;
    if (g(a) >= 0.0) return bisect(g, prev, a);
    prev = a;
  }
  throw DomainError("alpha_star: no sign change on (0, 3 - 2 sqrt 2]");
}

double compute_alpha_robust() {
  const double target = 2.0 - std::sqrt(14.0) / 2.0;
  const double lo = 0.05, hi = 0.09;
  // u0 is increasing on the bracket; confirm on a sample before bisecting.
  double prev = robust_u0(lo);
  for (int k = 1; k <= 64; ++k) {
    double u = robust_u0(lo + (hi - lo) * k / 64);
    if (!(u > prev)) throw DomainError("robust_u0 is not increasing on the bracket");
    prev = u;
  }
  if (!(robust_u0(lo) < target && robust_u0(hi) > target))
    throw DomainError("robust threshold not bracketed");
  return bisect([target](double a) { return robust_u0(a) - target; }, lo, hi);
}

}  // namespace

const AlphaConstants& constants() {
  static const AlphaConstants c = [] {
    AlphaConstants k{};
    k.alpha0 = (13.0 - 3.0 * std::sqrt(17.0)) / 4.0;
    k.u_first_kind = (3.0 - std::sqrt(7.0)) / 2.0;
    k.u_strict = (5.0 - std::sqrt(17.0)) / 4.0;
    k.u_robust_max = 2.0 - std::sqrt(14.0) / 2.0;
    k.alpha_tight = alpha_tight_value();
    k.alpha_star = compute_alpha_star();
    k.alpha_robust = compute_alpha_robust();
    return k;
  }();
  return c;
}

double psi(double u) { return 1.0 - 4.0 * u + 2.0 * u * u; }

double r0(double alpha) {
  check_alpha(alpha, "r0");
  return (1.0 + alpha - std::sqrt(discriminant(alpha))) / (4.0 * alpha);
}

double r1(double alpha) {
  check_alpha(alpha, "r1");
  return (1.0 - 3.0 * alpha - std::sqrt(discriminant(alpha))) / (4.0 * alpha);
}

double alpha_star() { return constants().alpha_star; }

double robust_u0(double alpha) {
  double ra = r0(alpha) * alpha;
  return ra / ((1.0 - ra) * psi(ra));
}

double robust_alpha_threshold() { return constants().alpha_robust; }

double h_gamma(double gamma, double t) { return t - gamma * t * t / (1.0 - gamma * t); }

double h_gamma_derivative(double gamma, double t) {
  double s = 1.0 - gamma * t;
  return 2.0 - 1.0 / (s * s);
}

double newton_h_gamma(double gamma, double t) {
  double p = psi(gamma * t);
  if (p == 0.0) throw SingularError("newton_h_gamma: psi(gamma t) = 0");
  return -gamma * t * t / p;
}

std::vector<double> gamma_error_sequence(double u0, int steps, double delta) {
  const auto& c = constants();
  if (steps < 0) throw DomainError("gamma_error_sequence: negative step count");
  if (delta < 0.0) throw DomainError("gamma_error_sequence: delta must be >= 0");
  if (delta == 0.0) {
    if (!(u0 >= 0.0 && u0 < c.u_strict))
      throw DomainError("gamma_error_sequence: need 0 <= u0 < (5 - sqrt 17)/4");
  } else if (!(2.0 * delta <= u0 && u0 <= c.u_robust_max)) {
    throw DomainError("gamma_error_sequence: need 2 delta <= u0 <= 2 - sqrt 14 / 2");
  }
  std::vector<double> u{u0};
  u.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i < steps; ++i) {
    double v = u.back();
    u.push_back(v * v / psi(v) + delta);
  }
  return u;
}

UniversalQuadratic::UniversalQuadratic(double beta, double gamma) : beta_(beta), gamma_(gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0))
    throw DomainError("UniversalQuadratic: beta and gamma must be positive");
  alpha_ = beta * gamma;
  check_alpha(alpha_, "UniversalQuadratic");
  delta_ = (1.0 + alpha_) * (1.0 + alpha_) - 8.0 * alpha_;
  if (delta_ < 0.0) delta_ = 0.0;
  double sd = std::sqrt(delta_);
  zeta1_ = (1.0 + alpha_ - sd) / (4.0 * gamma);
  zeta2_ = (1.0 + alpha_ + sd) / (4.0 * gamma);
  q_ = (1.0 - alpha_ - sd) / (1.0 - alpha_ + sd);
  eta_ratio_ = (1.0 + alpha_ - sd) / (1.0 + alpha_ + sd);
}

double UniversalQuadratic::evaluate(double t) const {
  return beta_ - t + gamma_ * t * t / (1.0 - gamma_ * t);
}

double UniversalQuadratic::product_form(double t) const {
  return 2.0 * (t - zeta1_) * (t - zeta2_) / (1.0 / gamma_ - t);
}

double UniversalQuadratic::derivative(double t) const {
  double s = 1.0 - gamma_ * t;
  return 1.0 / (s * s) - 2.0;
}

double UniversalQuadratic::newton(double t) const {
  double d = derivative(t);
  if (d == 0.0) throw SingularError("UniversalQuadratic::newton: zero derivative");
  return t - evaluate(t) / d;
}

double UniversalQuadratic::orbit(int i) const {
  if (i < 0) throw DomainError("orbit: negative index");
  if (delta_ == 0.0) throw DomainError("orbit: closed form undefined at alpha = 3 - 2 sqrt 2");
  double qe = std::pow(q_, std::ldexp(1.0, i) - 1.0);
  return zeta1_ * (1.0 - qe) / (1.0 - eta_ratio_ * qe);
}

double universal_orbit_closed(double beta, double gamma, int i) {
  return UniversalQuadratic(beta, gamma).orbit(i);
}

double error_bound_alpha(double alpha, int i) {
  UniversalQuadratic h(1.0, alpha);
  if (i < 0) throw DomainError("error_bound_alpha: negative index");
  if (h.discriminant() == 0.0)
    throw DomainError("error_bound_alpha: undefined at alpha = 3 - 2 sqrt 2");
  double eta = h.eta_ratio();
  double qe = std::pow(h.q(), std::ldexp(1.0, i) - 1.0);
  return qe * (1.0 - eta) / (1.0 - eta * qe) * r0(alpha);
}

std::vector<double> contraction_coefficients(double alpha, int i_max) {
  UniversalQuadratic h(1.0, alpha);
  if (i_max < 0) throw DomainError("contraction_coefficients: negative index");
  if (h.discriminant() == 0.0)
    throw DomainError("contraction_coefficients: undefined at alpha = 3 - 2 sqrt 2");
  const double q = h.q(), eta = h.eta_ratio();
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(i_max) + 1);
  for (int i = 0; i <= i_max; ++i) {
    double p = std::ldexp(1.0, i);
    double q_p = std::pow(q, p);             // q^{2^i}
    double q_pm1 = std::pow(q, p - 1.0);     // q^{2^i - 1}
    double q_2pm1 = std::pow(q, 2.0 * p - 1.0);
    c.push_back((1.0 - eta) * (1.0 - eta * q) * (1.0 - q_p) /
                ((1.0 - q) * (1.0 - eta * q_2pm1) * (1.0 - eta * q_pm1)));
  }
  return c;
}

double zeta1_gamma_closed(double alpha) {
  check_alpha(alpha, "zeta1_gamma_closed");
  double sd = std::sqrt(std::max(0.0, (1.0 + alpha) * (1.0 + alpha) - 8.0 * alpha));
  return (1.0 + alpha - sd) / (3.0 - alpha + sd) / psi((1.0 + alpha - sd) / 4.0);
}

double geometric_series_coeff(int d, int k) {
  if (d < 1 || k < 0) throw DomainError("geometric_series_coeff: need d >= 1, k >= 0");
  // binom(k + d - 1, d - 1) via the multiplicative formula over the smaller side.
  int n = k + d - 1;
  int r = std::min(d - 1, k);
  double b = 1.0;
  for (int j = 1; j <= r; ++j) b = b * (n - r + j) / j;
  return std::round(b);
}

namespace {
void check_bound_helper(double u, const char* where) {
  if (!(u >= 0.0 && u < 1.0 - std::sqrt(2.0) / 2.0)) {
    std::ostringstream msg;
    msg << where << ": u = " << u << " outside [0, 1 - sqrt 2 / 2)";
    throw DomainError(msg.str());
  }
}
}  // namespace

double g_deriv(double u) {
  check_bound_helper(u, "g_deriv");
  return (1.0 - u) * (1.0 - u) / psi(u);
}

double g_gamma_drift(double u) {
  check_bound_helper(u, "g_gamma_drift");
  return 1.0 / ((1.0 - u) * psi(u));
}

ConvergenceTable gamma_convergence_table() {
  const auto& c = constants();
  ConvergenceTable t;
  t.column_labels = {"1/32", "1/16", "1/10", "1/8", "(3-sqrt7)/2"};
  t.column_values = {1.0 / 32, 1.0 / 16, 1.0 / 10, 1.0 / 8, c.u_first_kind};
  for (int i = 1; i <= 5; ++i) t.rows.emplace_back();
  for (double u0 : t.column_values) {
    auto u = gamma_error_sequence(u0, 5);
    for (int i = 1; i <= 5; ++i) t.rows[i - 1].push_back(-std::log2(u[i] / u0));
  }
  return t;
}

ConvergenceTable alpha_convergence_table() {
  const auto& c = constants();
  ConvergenceTable t;
  t.column_labels = {"1/32", "1/16", "1/10", "1/8", "(13-3sqrt17)/4"};
  t.column_values = {1.0 / 32, 1.0 / 16, 1.0 / 10, 1.0 / 8, c.alpha0};
  for (int i = 1; i <= 6; ++i) {
    std::vector<double> row;
    for (double a : t.column_values) row.push_back(-std::log2(error_bound_alpha(a, i)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace realroots::theory
