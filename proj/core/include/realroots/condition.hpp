#pragma once

// Singular values and Eckart-Young distances, the normalized condition number
// mu(f, x), the counting condition number kappa(f, x), and Monte Carlo
// statistics of kappa for Gaussian systems.

#include <cstdint>
#include <vector>

#include "realroots/poly.hpp"
#include "realroots/sphere_mesh.hpp"

namespace realroots {

struct SingularSpectrum {
  /// Nonzero singular values, non-increasing.
  Vector values;
  int rows = 0;
  int cols = 0;
  int rank = 0;
};

/// Values below 1e-14 sigma_1 (or exactly zero) count as rank deficiency.
SingularSpectrum singular_values(const Matrix& a);
/// sigma_{min(m,n)}, zero for rank-deficient input.
double min_singular_value(const Matrix& a);

struct RankDeficientDistance {
  double distance;
  /// B = -sigma_min u v^T, so that A + B drops rank and ||B||_F = distance.
  Matrix correction;
};

RankDeficientDistance distance_to_rank_deficient(const Matrix& a);

/// Hot-path form for a unit vector x: writes f(x) into `values` (n entries)
/// and returns sigma_min of the scaled restricted Jacobian at x.
double scaled_sigma_min(const PolynomialSystem& f, const double* x, double* values);

/// diag(d_i^{-1/2}) Df(x) U, with U the tangent frame of x (n x n).
Matrix scaled_restricted_jacobian(const PolynomialSystem& f, const SpherePoint& x);

/// ||f|| / sigma_min(diag(d_i^{-1/2}) Df(x)|x^perp); +inf when singular.
double mu(const PolynomialSystem& f, const SpherePoint& x);
/// The same for x off the sphere, through the ||x||^{1 - d_i} weights.
double mu(const PolynomialSystem& f, const Vector& x);

/// For ||f|| = 1: g with ||f - g|| = 1/mu(f, x) whose scaled restricted
/// Jacobian at x is singular. The correction lies in the span of
/// sqrt(d_i) <y, x>^{d_i - 1} <y, u_j>, so g(x) = f(x). Returns f when mu = inf.
PolynomialSystem minimal_singular_perturbation(const PolynomialSystem& f, const SpherePoint& x);

/// For ||f|| = 1: g with g(x) = 0, singular Dg(x)|x^perp and
/// ||f - g|| = 1/kappa(f, x).
PolynomialSystem nearest_singular_at_point(const PolynomialSystem& f, const SpherePoint& x);

struct ConditionData {
  double mu;
  double kappa_point;
  double f_norm_at_x;
};

/// f is normalized first, so the result is scale invariant.
ConditionData condition_data(const PolynomialSystem& f, const SpherePoint& x);
/// 1 / sqrt(mu^{-2} + ||f(x)||^2) for the normalized f.
double kappa_point(const PolynomialSystem& f, const SpherePoint& x);

struct KappaGridEstimate {
  /// max over the mesh of kappa(f, x), a lower bound for kappa(f).
  double kappa_lower;
  /// 1 / (min over the mesh of 1/kappa(f, x) - (max d) * covering radius), an
  /// upper bound for kappa(f) via the Lipschitz bound on 1/kappa; +inf when the
  /// mesh is too coarse to give one.
  double kappa_upper;
  double covering_radius;
  std::size_t argmax;
};

KappaGridEstimate kappa_grid(const PolynomialSystem& f, const SphereMesh& mesh, int threads = 1);

struct MuVariation {
  double lower;
  double upper;
  double observed;
};

/// Sandwich mu(f,x)/(1+u+v) <= mu(g,y) <= mu(f,x)/(1-u-v) with
/// u = (max d) mu(f, x) rho(x, y) and v = mu(f, x) ||f - g||. Both systems
/// must have unit norm. `upper` is +inf when u + v >= 1.
MuVariation mu_variation_check(const PolynomialSystem& f, const PolynomialSystem& g,
                               const SpherePoint& x, const SpherePoint& y);

/// Coefficient of x^a drawn from N(0, multinomial(d; a)), independent across
/// coefficients, so ||f||^2 is chi-square with N degrees of freedom.
PolynomialSystem sample_gaussian_system(int n, const std::vector<int>& degrees, std::uint64_t seed);

/// K_n = 8 (max d)^2 sqrt(D) sqrt(N) n^{5/2} + 1, D the Bezout number.
double kappa_constant_kn(int n, const std::vector<int>& degrees);
/// ln K + sqrt(ln K) + 1/sqrt(ln K) + ln(2n) / 2.
double expected_ln_kappa_bound(int n, const std::vector<int>& degrees);
/// 2 ln N + 4 ln n + 2 ln D + ln(1/sigma) + 6.
double smoothed_ln_kappa_bound(int n, const std::vector<int>& degrees, double sigma);

struct MonteCarloKappa {
  std::vector<double> ln_kappa;  // per trial, in trial order
  double mean_ln_kappa;
  double bound;
  double k_n;
};

/// Trial k samples with seed + k and estimates ln kappa on build_mesh(n, mesh_t).
MonteCarloKappa monte_carlo_ln_kappa(int n, const std::vector<int>& degrees, int trials, int mesh_t,
                                     std::uint64_t seed, int threads = 1);

}  // namespace realroots
