#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "realroots/certification.hpp"
#include "realroots/condition.hpp"
#include "realroots/errors.hpp"
#include "realroots/scalar_theory.hpp"
#include "realroots/sphere_mesh.hpp"

using namespace realroots;

namespace {

PolynomialSystem single(HomogeneousPolynomial p) { return PolynomialSystem({std::move(p)}); }

// Sampled lower bound for gamma(F_x, 0) = sup_k ||DF^{-1} D^k F / k!||^{1/(k-1)},
// with D^k F_x(0) = D^k f(x) restricted to x^perp.
double sampled_gamma(const PolynomialSystem& f, const SpherePoint& x, std::mt19937_64& rng, int directions) {
  TangentFrame fr = tangent_frame(x);
  const int n = f.n();
  Matrix m = jacobian(f, x.coords()) * fr.basis;
  Matrix minv = m.inverse();
  double best = 0.0;
  for (int k = 2; k <= f.max_degree(); ++k) {
    std::vector<SymmetricTensor> t;
    for (int i = 0; i < n; ++i)
      t.push_back(k <= f[i].degree() ? derivative_tensor(f[i], x.coords(), k) : SymmetricTensor{n + 1, k, {}});
    double fact = std::tgamma(k + 1.0);
    for (int s = 0; s < directions; ++s) {
      Vector w = fr.basis * oracle::random_unit(rng, n);
      Vector v(n);
      for (int i = 0; i < n; ++i) {
        const auto& ti = t[static_cast<std::size_t>(i)];
        v[i] = ti.entries.empty() ? 0.0 : ti.apply(w) / fact;
      }
      best = std::max(best, std::pow((minv * v).norm(), 1.0 / (k - 1)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("tangent frames") {
  auto fr = tangent_frame(SpherePoint::basis_vector(3, 0));
  CHECK(std::abs(std::abs(fr.basis(1, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(fr.basis(2, 1)) - 1.0) < 1e-15);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    SpherePoint x(oracle::random_unit(rng, 4));
    auto a = tangent_frame(x), b = tangent_frame(x);
    CHECK(a.basis == b.basis);
    Matrix full(4, 4);
    full << x.coords(), a.basis;
    CHECK((full.transpose() * full - Matrix::Identity(4, 4)).norm() < 1e-12);
  }
}

TEST_CASE("chart beta") {
  SpherePoint e0 = SpherePoint::basis_vector(2, 0);
  CHECK(chart_beta(single(oracle::linear_form({0, 1})), e0) == 0.0);
  CHECK(chart_beta(single(oracle::linear_form({-0.1, 1})), e0) == doctest::Approx(0.1).epsilon(1e-14));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = oracle::random_system(rng, {2, 2});
    SpherePoint x(oracle::random_unit(rng, 3));
    Matrix m = jacobian(f, x.coords()) * tangent_frame(x).basis;
    Vector step = m.fullPivLu().solve(evaluate(f, x.coords()));
    CHECK(chart_beta(f, x) == doctest::Approx(step.norm()).epsilon(1e-12));
  }
  // x0^2 is nonzero at e0 with zero derivative along the tangent e1.
  CHECK(std::isinf(chart_beta(single(oracle::multiply(oracle::linear_form({1, 0}), oracle::linear_form({1, 0}))), e0)));
}

TEST_CASE("gamma bound dominates sampled gamma") {
  std::mt19937_64 rng(3);
  // Linear systems have gamma = 0.
  PolynomialSystem lin({oracle::linear_form({0.2, 1, 0}), oracle::linear_form({0, 0.5, 1})});
  SpherePoint p(oracle::random_unit(rng, 3));
  CHECK(sampled_gamma(lin, p, rng, 10) == 0.0);
  CHECK(gamma_bound(lin, p) >= 0.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = oracle::random_system(rng, {3}).normalized();
    SpherePoint x(oracle::random_unit(rng, 2));
    double g = sampled_gamma(f, x, rng, 1000);
    CHECK(g <= gamma_bound(f, x) * (1 + 1e-12));
    // Scaling the system leaves gamma unchanged and the bound grows with ||f||.
    CHECK(g <= gamma_bound(f.scaled(5.0), x) * (1 + 1e-12));
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto f = oracle::random_system(rng, {2, 3}).normalized();
    SpherePoint x(oracle::random_unit(rng, 3));
    CHECK(sampled_gamma(f, x, rng, 300) <= gamma_bound(f, x) * (1 + 1e-12));
  }
}

TEST_CASE("inclusion test examples") {
  SpherePoint e0 = SpherePoint::basis_vector(2, 0);
  auto c = inclusion_test(single(oracle::linear_form({0, 1})), e0);
  CHECK(c.admissible);
  CHECK(c.inclusion_radius == 0.0);
  CHECK(c.f_norm_at_x == 0.0);

  const double eps = 1e-4;
  auto f = single(oracle::linear_form({-eps, 1}));
  auto ce = inclusion_test(f, e0);
  CHECK(ce.admissible);
  auto z = refine_zero(f, e0);
  CHECK(z.converged);
  Vector expect = Vector(Eigen::Vector2d(1, eps)) / std::sqrt(1 + eps * eps);
  CHECK((z.zeta.coords() - expect).norm() < 1e-10);
  CHECK(angular_distance(e0, z.zeta) <= ce.inclusion_radius * (1 + 1e-12));

  auto q = single(oracle::product_of_roots({1.0, -1.0}));  // x1^2 - x0^2
  CHECK_FALSE(inclusion_test(q, e0).admissible);
  CHECK_FALSE(admissible(0.5, 0.0, 2));
}

TEST_CASE("exclusion radius") {
  SpherePoint e0 = SpherePoint::basis_vector(2, 0);
  CHECK(exclusion_radius(single(oracle::linear_form({0, 1})), e0) == 0.0);
  // Unit-norm quartic with |f(e0)| = 0.5: radius 0.5 / sqrt 4.
  std::vector<Term> terms{Term{MultiIndex({4, 0}), 0.5}, Term{MultiIndex({0, 4}), std::sqrt(0.75)}};
  auto f = single(HomogeneousPolynomial(2, 4, terms));
  CHECK(exclusion_radius(f, e0) == doctest::Approx(0.25).epsilon(1e-14));

  // No zero of the system within the radius of the sample point.
  std::mt19937_64 rng(4);
  auto circle = oracle::dense_samples(2, 2000);
  auto sphere = oracle::dense_samples(3, 120);
  for (int trial = 0; trial < 50; ++trial) {
    bool s1 = trial % 2 == 0;
    auto f = s1 ? oracle::random_system(rng, {3}) : oracle::random_system(rng, {2, 2});
    auto zeros = oracle::sphere_zeros(f, s1 ? circle : sphere);
    SpherePoint x(oracle::random_unit(rng, s1 ? 2 : 3));
    double r = exclusion_radius(f, x);
    for (const auto& z : zeros) CHECK(angular_distance(x, SpherePoint::normalize(z)) >= r);
  }
}

TEST_CASE("refine zero") {
  SpherePoint e0 = SpherePoint::basis_vector(2, 0);
  auto at_zero = refine_zero(single(oracle::linear_form({0, 1})), e0);
  CHECK(at_zero.newton_steps == 0);
  CHECK((at_zero.zeta.coords() - e0.coords()).norm() == 0.0);

  auto lin = single(oracle::linear_form({-0.1, 1}));
  auto z = refine_zero(lin, e0);
  CHECK(z.converged);
  CHECK(z.newton_steps == 1);
  CHECK(std::abs(z.zeta[1] / z.zeta[0] - 0.1) < 1e-15);

  const double roots[] = {-0.8, 0.15, 1.7};
  auto cubic = single(oracle::product_of_roots({roots[0], roots[1], roots[2]})).normalized();
  for (double r : roots) {
    double th = std::atan(r) + 1e-3;
    SpherePoint x(Vector(Eigen::Vector2d(std::cos(th), std::sin(th))));
    REQUIRE(inclusion_test(cubic, x).admissible);
    auto rz = refine_zero(cubic, x);
    CHECK(rz.converged);
    Vector expect = Vector(Eigen::Vector2d(1, r)) / std::sqrt(1 + r * r);
    CHECK((rz.zeta.coords() - expect).norm() < 1e-12);
  }
}

TEST_CASE("second-kind contraction from admissible points") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto f = oracle::random_system(rng, {2, 2}).normalized();
    auto zeros = oracle::sphere_zeros(f, oracle::dense_samples(3, 80));
    for (const auto& z : zeros) {
      SpherePoint x = SpherePoint::normalize(z + 1e-4 * oracle::random_unit(rng, 3));
      auto c = inclusion_test(f, x);
      if (!c.admissible) continue;
      ++checked;
      auto rz = refine_zero(f, x);
      CHECK(second_kind_contraction_holds(rz.step_norms));
      CHECK(angular_distance(x, rz.zeta) <= c.inclusion_radius * (1 + 1e-9) + 1e-15);
      CHECK(chart_beta(f, x) == doctest::Approx(c.beta));
    }
  }
  CHECK(checked > 20);
  CHECK_FALSE(second_kind_contraction_holds({1.0, 0.6}));
  CHECK(second_kind_contraction_holds({1.0, 0.5, 0.125}));
}

TEST_CASE("robust certification") {
  std::mt19937_64 rng(6);
  auto f = single(oracle::product_of_roots({0.4, -1.2})).normalized();
  SpherePoint x(Vector(Eigen::Vector2d(std::cos(std::atan(0.4) + 1e-3), std::sin(std::atan(0.4) + 1e-3))));
  auto plain = robust_certify(f, x, 0.0);
  CHECK(plain.certified);
  CHECK(plain.noise_tolerance == 0.0);
  auto u = theory::gamma_error_sequence(plain.u0, 8);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(plain.envelope[i] == doctest::Approx(u[i]));
  CHECK_THROWS_AS(robust_certify(f, x, plain.u0), DomainError);
  CHECK_THROWS_AS(robust_certify(f, x, -1.0), DomainError);

  // Envelope of the noisy recursion at u0 = 0.12, delta = 0.01 settles below 2 delta.
  auto env = theory::gamma_error_sequence(0.12, 12, 0.01);
  for (std::size_t i = 0; i < env.size(); ++i)
    CHECK(env[i] / 0.12 <= std::max(std::ldexp(2.0, -(1 << std::min<std::size_t>(i, 30))), 2 * 0.01 / 0.12) + 1e-12);

  // Noisy Newton on the chart of a quadratic stays inside the distance bounds.
  const double delta = 0.25 * plain.u0;
  auto rc = robust_certify(f, x, delta);
  REQUIRE(rc.certified);
  TangentFrame fr = tangent_frame(x);
  auto zr = refine_zero(f, x);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    double X = 0.0;
    for (int i = 1; i <= 6; ++i) {
      Vector p = x.coords() + fr.basis.col(0) * X;
      double val = f[0](p);
      double der = f[0].gradient(p).dot(fr.basis.col(0));
      X = X - val / der + rc.noise_tolerance * noise(rng);
      Vector y = x.coords() + fr.basis.col(0) * X;
      double err = angular_distance(SpherePoint::normalize(y), zr.zeta);
      // Chart distance dominates angular distance.
      if (err > rc.distance_bounds[static_cast<std::size_t>(i)] * (1 + 1e-9) + 1e-15) ++violations;
    }
  }
  CHECK(violations == 0);
}
