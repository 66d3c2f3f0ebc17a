#include "realroots/certification.hpp"

#include <cmath>
#include <limits>

#include "realroots/condition.hpp"
#include "realroots/errors.hpp"
#include "realroots/linalg.hpp"
#include "realroots/scalar_theory.hpp"

namespace realroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Newton step -M^{-1} F_x(X) at the chart point y = x + U X.
Vector chart_step(const PolynomialSystem& f, const Matrix& basis, const Vector& y) {
  Vector fy = evaluate(f, y);
  Matrix m = jacobian(f, y) * basis;
  return -linalg::solve(m, fy);
}

}  // namespace

TangentFrame tangent_frame(const SpherePoint& x) { return TangentFrame{x, linalg::orthogonal_complement(x.coords())}; }

double chart_beta(const PolynomialSystem& f, const SpherePoint& x) {
  if (x.dim() != f.n_vars()) throw DimensionError("point has wrong dimension for the system");
  Vector fx = evaluate(f, x.coords());
  if (fx.isZero(0.0)) return 0.0;
  try {
    return chart_step(f, tangent_frame(x).basis, x.coords()).norm();
  } catch (const SingularError&) {
    return kInf;
  }
}

double gamma_bound(const PolynomialSystem& f, const SpherePoint& x) {
  double m = mu(f, x);
  if (!std::isfinite(m)) return kInf;
  return std::pow(f.max_degree(), 1.5) / 2.0 * f.weyl_norm() * m;
}

bool admissible(double f_norm_at_x, double sigma_min, int max_degree) {
  if (!(sigma_min > 0.0)) return false;
  double m = 1.0 / sigma_min;
  return std::pow(max_degree, 1.5) * m * m * f_norm_at_x < theory::alpha_star();
}

Certificate inclusion_test(const PolynomialSystem& f, const SpherePoint& x) {
  if (x.dim() != f.n_vars()) throw DimensionError("point has wrong dimension for the system");
  PolynomialSystem fn = f.normalized();
  Certificate c{x, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, false};
  c.f_norm_at_x = evaluate(fn, x.coords()).norm();
  c.mu = mu(fn, x);
  if (!std::isfinite(c.mu)) {
    c.beta = c.gamma_bound = c.alpha_bound = c.inclusion_radius = kInf;
    return c;
  }
  c.beta = chart_beta(fn, x);
  c.gamma_bound = gamma_bound(fn, x);
  c.alpha_bound = c.beta * c.gamma_bound;
  c.inclusion_radius = theory::r0(theory::alpha_star()) * c.mu * c.f_norm_at_x;
  c.admissible = admissible(c.f_norm_at_x, 1.0 / c.mu, fn.max_degree());
  return c;
}

double exclusion_radius(const PolynomialSystem& f, const SpherePoint& x) {
  PolynomialSystem fn = f.normalized();
  double fx = evaluate(fn, x.coords()).norm();
  return std::min(fx / std::sqrt(static_cast<double>(fn.max_degree())), std::sqrt(2.0));
}

RefinedZero refine_zero(const PolynomialSystem& f, const SpherePoint& x, double tol, int max_steps) {
  if (x.dim() != f.n_vars()) throw DimensionError("point has wrong dimension for the system");
  const Matrix basis = tangent_frame(x).basis;
  Vector chart = Vector::Zero(f.n());
  RefinedZero out{x, 0, kInf, false, {}};
  double previous = kInf;
  for (int k = 0; k <= max_steps; ++k) {
    Vector y = x.coords() + basis * chart;
    Vector step;
    try {
      step = chart_step(f, basis, y);
    } catch (const SingularError&) {
      break;
    }
    double s = step.norm();
    out.step_norms.push_back(s);
    out.final_beta = s;
    if (!std::isfinite(s)) break;
    if (s <= tol) {
      chart += step;
      out.converged = true;
      break;
    }
    if (k >= 1 && s > previous) break;
    if (k == max_steps) break;
    chart += step;
    ++out.newton_steps;
    previous = s;
  }
  out.zeta = SpherePoint::normalize(x.coords() + basis * chart);
  return out;
}

bool second_kind_contraction_holds(const std::vector<double>& step_norms, double slack) {
  if (step_norms.empty()) return true;
  const double first = step_norms.front();
  for (std::size_t k = 1; k < step_norms.size(); ++k) {
    double bound = k >= 11 ? 0.0 : std::ldexp(first, 1 - (1 << k));
    if (step_norms[k] > bound + slack) return false;
  }
  return true;
}

RobustCertificate robust_certify(const PolynomialSystem& f, const SpherePoint& x, double delta, int steps) {
  if (delta < 0.0) throw DomainError("robust_certify: delta must be >= 0");
  PolynomialSystem fn = f.normalized();
  RobustCertificate rc{false, 0.0, 0.0, 0.0, 0.0, {}, {}};
  double beta = chart_beta(fn, x);
  double gamma = gamma_bound(fn, x);
  if (!std::isfinite(beta) || !std::isfinite(gamma)) {
    rc.alpha = kInf;
    return rc;
  }
  rc.alpha = beta * gamma;
  if (rc.alpha == 0.0) {
    if (delta > 0.0) throw DomainError("robust_certify: delta too large for alpha = 0");
    rc.certified = true;
    rc.envelope.assign(static_cast<std::size_t>(steps) + 1, 0.0);
    rc.distance_bounds.assign(static_cast<std::size_t>(steps) + 1, 0.0);
    return rc;
  }
  if (rc.alpha > theory::constants().alpha_tight) return rc;
  rc.r = theory::r0(rc.alpha);
  rc.u0 = theory::robust_u0(rc.alpha);
  if (2.0 * delta >= rc.u0) throw DomainError("robust_certify: delta too large for alpha");
  rc.certified = rc.alpha <= theory::robust_alpha_threshold();
  if (!rc.certified) return rc;
  rc.noise_tolerance = delta * rc.r * beta / rc.u0;
  rc.envelope = theory::gamma_error_sequence(rc.u0, steps, delta);
  for (double u : rc.envelope) rc.distance_bounds.push_back(rc.r * u / rc.u0 * beta);
  return rc;
}

}  // namespace realroots
