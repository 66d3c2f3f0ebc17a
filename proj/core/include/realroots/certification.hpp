#pragma once

// Alpha-theory on the sphere. The chart at x is F_x(X) = f(x + U X) on the
// affine tangent space x + x^perp, with U an orthonormal basis of x^perp.

#include <vector>

#include "realroots/poly.hpp"

namespace realroots {

struct TangentFrame {
  SpherePoint base;
  /// (n+1) x n, orthonormal columns spanning base^perp.
  Matrix basis;
};

/// Householder completion of x, columns sign-normalized (first nonzero entry positive).
TangentFrame tangent_frame(const SpherePoint& x);

/// ||M^{-1} f(x)|| with M = Df(x) U, the Newton step length of F_x at 0.
/// +inf when M is singular.
double chart_beta(const PolynomialSystem& f, const SpherePoint& x);

/// (max d)^{3/2} / 2 * ||f|| * mu(f, x), an upper bound for gamma(F_x, 0).
double gamma_bound(const PolynomialSystem& f, const SpherePoint& x);

struct Certificate {
  SpherePoint point;
  double beta;
  double gamma_bound;
  double alpha_bound;
  double mu;
  double f_norm_at_x;
  /// r0(alpha_*) mu ||f(x)||
  double inclusion_radius;
  bool admissible;
};

/// Normalizes f, then decides (max d)^{3/2} mu^2 ||f(x)|| < alpha_*.
Certificate inclusion_test(const PolynomialSystem& f, const SpherePoint& x);

/// The same decision from precomputed ||f(x)|| and sigma_min of the scaled
/// restricted Jacobian of the normalized system.
bool admissible(double f_norm_at_x, double sigma_min, int max_degree);

/// min(||f(x)|| / sqrt(max d), sqrt 2) for the normalized f: no zero lies
/// within that angular distance of x.
double exclusion_radius(const PolynomialSystem& f, const SpherePoint& x);

struct RefinedZero {
  SpherePoint zeta;
  int newton_steps;
  double final_beta;
  bool converged;
  /// ||X_{k+1} - X_k|| for every step computed, the last one included.
  std::vector<double> step_norms;
};

/// Newton on F_x from X_0 = 0 until a step is at most `tol` or `max_steps`
/// steps were taken, then zeta = (x + U X) / ||x + U X||. A singular chart
/// Jacobian or a growing step stops the iteration with converged = false.
RefinedZero refine_zero(const PolynomialSystem& f, const SpherePoint& x, double tol = 1e-13,
                        int max_steps = 60);

/// Whether the recorded steps satisfy ||X_{k+1} - X_k|| <= 2^{1 - 2^k} ||X_1 - X_0||,
/// allowing `slack` absolute error per step for rounding.
bool second_kind_contraction_holds(const std::vector<double>& step_norms, double slack = 1e-15);

struct RobustCertificate {
  bool certified;
  double alpha;
  double r;
  double u0;
  /// Largest per-step perturbation ||x_{i+1} - N(x_i)|| in chart coordinates
  /// the envelope tolerates: delta r beta / u0.
  double noise_tolerance;
  /// u_0 .. u_steps from u_{i+1} = u_i^2 / psi(u_i) + delta.
  std::vector<double> envelope;
  /// r u_i / u0 * beta, bounds on ||x_i - zeta|| in chart coordinates.
  std::vector<double> distance_bounds;
};

/// Robust alpha certificate at x for the chart F_x, using alpha = beta * gamma_bound.
/// Certified when alpha <= the robust threshold. Throws DomainError when
/// delta < 0 or 2 delta >= u0.
RobustCertificate robust_certify(const PolynomialSystem& f, const SpherePoint& x, double delta, int steps = 8);

}  // namespace realroots
