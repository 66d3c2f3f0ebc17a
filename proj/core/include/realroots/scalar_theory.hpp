#pragma once

// Univariate alpha-theory: the polynomial psi, the universal functions h_gamma
// and h_{beta,gamma}, their closed-form Newton orbits, and the convergence
// constants derived from them.

#include <string>
#include <vector>

namespace realroots::theory {

struct AlphaConstants {
  double alpha0;        // (13 - 3 sqrt 17) / 4
  double u_first_kind;  // (3 - sqrt 7) / 2
  double u_strict;      // (5 - sqrt 17) / 4
  double u_robust_max;  // 2 - sqrt 14 / 2
  double alpha_tight;   // 3 - 2 sqrt 2
  double alpha_star;    // smallest positive root of a = alpha0 (1 - a r0(a))^2
  double alpha_robust;  // alpha with robust_u0(alpha) = u_robust_max
};

/// Computed once, on first use.
const AlphaConstants& constants();

/// 1 - 4u + 2u^2
double psi(double u);

/// (1 + a - sqrt(1 - 6a + a^2)) / (4a), defined for 0 < a <= 3 - 2 sqrt 2.
double r0(double alpha);
/// (1 - 3a - sqrt(1 - 6a + a^2)) / (4a); r0 - r1 = 1.
double r1(double alpha);

double alpha_star();

/// u0(a) = r a / ((1 - r a) psi(r a)) with r = r0(a).
double robust_u0(double alpha);
double robust_alpha_threshold();

/// h_gamma(t) = t - gamma t^2 / (1 - gamma t).
double h_gamma(double gamma, double t);
double h_gamma_derivative(double gamma, double t);
/// N(h_gamma, t) = -gamma t^2 / psi(gamma t). Throws SingularError at psi = 0.
double newton_h_gamma(double gamma, double t);

/// u_{i+1} = u_i^2 / psi(u_i) + delta, returns u_0 .. u_steps.
/// delta = 0 requires u0 < (5 - sqrt 17)/4; delta > 0 requires
/// 2 delta <= u0 <= 2 - sqrt 14 / 2.
std::vector<double> gamma_error_sequence(double u0, int steps, double delta = 0.0);

/// The worst-case function h(t) = beta - t + gamma t^2 / (1 - gamma t) and the
/// data describing Newton's orbit from 0 on it.
class UniversalQuadratic {
 public:
  /// Throws DomainError unless beta, gamma > 0 and beta gamma <= 3 - 2 sqrt 2.
  UniversalQuadratic(double beta, double gamma);

  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double alpha() const noexcept { return alpha_; }
  double discriminant() const noexcept { return delta_; }
  double zeta1() const noexcept { return zeta1_; }
  double zeta2() const noexcept { return zeta2_; }
  double q() const noexcept { return q_; }
  /// zeta1 / zeta2
  double eta_ratio() const noexcept { return eta_ratio_; }

  double evaluate(double t) const;
  /// 2 (t - zeta1)(t - zeta2) / (1/gamma - t)
  double product_form(double t) const;
  double derivative(double t) const;
  double newton(double t) const;

  /// t_i = zeta1 (1 - q^{2^i - 1}) / (1 - eta q^{2^i - 1}).
  double orbit(int i) const;

 private:
  double beta_, gamma_, alpha_, delta_, zeta1_, zeta2_, q_, eta_ratio_;
};

double universal_orbit_closed(double beta, double gamma, int i);

/// Sharp alpha-theorem bound on ||x_i - zeta|| in units of beta:
/// q^{2^i-1} (1 - eta) / (1 - eta q^{2^i-1}) r0(alpha).
double error_bound_alpha(double alpha, int i);

/// C_0 .. C_{i_max} with (t_{i+1} - t_i) / beta = C_i q^{2^i - 1}.
std::vector<double> contraction_coefficients(double alpha, int i_max);

/// gamma(h_{beta,gamma}, zeta1) zeta1 through its closed form in alpha.
double zeta1_gamma_closed(double alpha);

/// binom(k + d - 1, d - 1), the coefficients of 1 / (1 - t)^d.
double geometric_series_coeff(int d, int k);
/// (1 - u)^2 / psi(u), for 0 <= u < 1 - sqrt 2 / 2.
double g_deriv(double u);
/// 1 / ((1 - u) psi(u)), for 0 <= u < 1 - sqrt 2 / 2.
double g_gamma_drift(double u);

/// Rows i = 1.. of -log2 ratios for a fixed set of columns.
struct ConvergenceTable {
  std::vector<std::string> column_labels;
  std::vector<double> column_values;
  std::vector<std::vector<double>> rows;
};

/// -log2(u_i / u_0) for u0 in {1/32, 1/16, 1/10, 1/8, (3-sqrt7)/2}, i = 1..5.
ConvergenceTable gamma_convergence_table();
/// -log2(error_bound_alpha(a, i)) for a in {1/32, 1/16, 1/10, 1/8, alpha0}, i = 1..6.
ConvergenceTable alpha_convergence_table();

}  // namespace realroots::theory
