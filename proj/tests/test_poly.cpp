#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "oracles.hpp"
#include "realroots/errors.hpp"
#include "realroots/poly.hpp"

using namespace realroots;
using boost::multiprecision::cpp_rational;

namespace {

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

HomogeneousPolynomial poly(int n_vars, int d, std::vector<std::pair<std::vector<int>, double>> t) {
  std::vector<Term> terms;
  for (auto& [e, c] : t) terms.push_back(Term{mi(e), c});
  return HomogeneousPolynomial(n_vars, d, std::move(terms));
}

double exact_eval(const HomogeneousPolynomial& f, const Vector& x) {
  cpp_rational sum = 0;
  for (const auto& t : f.terms()) {
    cpp_rational term = cpp_rational(t.coeff);
    for (std::size_t i = 0; i < t.index.size(); ++i)
      for (int k = 0; k < t.index[i]; ++k) term *= cpp_rational(x[static_cast<int>(i)]);
    sum += term;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("multi-index order and counts") {
  auto m = monomials_of_degree(3, 2);
  REQUIRE(m.size() == 6);
  CHECK(m.front().exponents() == std::vector<int>{2, 0, 0});
  CHECK(m.back().exponents() == std::vector<int>{0, 0, 2});
  for (std::size_t i = 0; i + 1 < m.size(); ++i) CHECK(graded_lex_before(m[i], m[i + 1]));
  CHECK(multinomial(mi({1, 1})) == 2.0);
  CHECK(multinomial(mi({2, 1, 1})) == 12.0);
}

TEST_CASE("construction merges like terms and validates degree") {
  auto f = poly(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{2, 0}, 2.0}, {{1, 1}, 0.0}});
  CHECK(f.terms().size() == 2);
  CHECK(f.coefficient(mi({2, 0})) == 3.0);
  CHECK_THROWS_AS(poly(2, 2, {{{1, 0}, 1.0}}), DimensionError);
  CHECK_THROWS_AS(poly(2, 2, {{{1, 0, 1}, 1.0}}), DimensionError);
}

TEST_CASE("evaluation examples") {
  auto f = poly(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  CHECK(f(Vector(Eigen::Vector2d(3, 4))) == doctest::Approx(25.0));
  auto g = poly(2, 1, {{{0, 1}, 1.0}, {{1, 0}, -0.1}});
  CHECK(g(Vector(Eigen::Vector2d(1, 0))) == doctest::Approx(-0.1));
}

TEST_CASE("evaluation agrees with exact rational arithmetic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = oracle::random_poly(rng, 3, 3);
    Vector x(3);
    for (int i = 0; i < 3; ++i) x[i] = u(rng);
    double exact = exact_eval(f, x);
    CHECK(std::abs(f(x) - exact) <= 1e-12 * (1.0 + std::abs(exact)));
    std::vector<double> xs(x.data(), x.data() + 3);
    CHECK(std::abs(f(std::span<const double>(xs)) - exact) <= 1e-12 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("jacobian examples and finite differences") {
  PolynomialSystem a({poly(2, 1, {{{0, 1}, 1.0}})});
  Matrix j = jacobian(a, Vector(Eigen::Vector2d(1, 0)));
  CHECK(j(0, 0) == 0.0);
  CHECK(j(0, 1) == 1.0);
  PolynomialSystem b({poly(2, 2, {{{1, 1}, 1.0}})});
  Matrix jb = jacobian(b, Vector(Eigen::Vector2d(0.3, -2)));
  CHECK(jb(0, 0) == doctest::Approx(-2.0));
  CHECK(jb(0, 1) == doctest::Approx(0.3));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = oracle::random_system(rng, {2, 3});
    Vector x = oracle::random_unit(rng, 3);
    Matrix jac = jacobian(f, x);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
      Vector e = Vector::Zero(3);
      e[k] = h;
      Vector fd = (evaluate(f, x + e) - evaluate(f, x - e)) / (2 * h);
      for (int i = 0; i < 2; ++i) CHECK(std::abs(fd[i] - jac(i, k)) <= 1e-6 * (1.0 + std::abs(jac(i, k))));
    }
    // The flattened evaluator gives the same numbers.
    std::vector<double> vals(2), jflat(6);
    f.evaluator().values_and_jacobian(x.data(), vals.data(), jflat.data());
    for (int i = 0; i < 2; ++i) {
      CHECK(vals[static_cast<std::size_t>(i)] == doctest::Approx(f[i](x)).epsilon(1e-13));
      for (int k = 0; k < 3; ++k)
        CHECK(jflat[static_cast<std::size_t>(i * 3 + k)] == doctest::Approx(jac(i, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("homogeneity and Euler identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 1 + trial % 5;
    auto f = oracle::random_poly(rng, 3, d);
    Vector x = oracle::random_unit(rng, 3);
    double l = lam(rng);
    double fx = f(x);
    CHECK(std::abs(f(Vector(l * x)) - std::pow(l, d) * fx) <= 1e-10 * (1.0 + std::abs(fx)));
    CHECK(x.dot(f.gradient(x)) == doctest::Approx(d * fx).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("derivative tensors") {
  auto sq = poly(2, 2, {{{2, 0}, 1.0}});
  auto t = derivative_tensor(sq, Vector(Eigen::Vector2d(0.4, -3)), 2);
  CHECK(t.entries == std::vector<double>{2, 0, 0, 0});
  auto xy = poly(2, 2, {{{1, 1}, 1.0}});
  auto g = derivative_tensor(xy, Vector(Eigen::Vector2d(1, 2)), 1);
  CHECK(g.entries == std::vector<double>{2, 1});

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 4;
    auto f = oracle::random_poly(rng, 3, d);
    Vector x = oracle::random_unit(rng, 3);
    Vector y = oracle::random_unit(rng, 3);
    Vector h = y - x;
    double taylor = f(x), fact = 1.0;
    for (int k = 1; k <= d; ++k) {
      fact *= k;
      taylor += derivative_tensor(f, x, k).apply(h) / fact;
    }
    CHECK(taylor == doctest::Approx(f(y)).epsilon(1e-10).scale(1.0));
  }
  CHECK_THROWS(derivative_tensor(oracle::random_poly(rng, 6, 2), Vector::Ones(6), 1));
}

TEST_CASE("Weyl inner product") {
  auto sq = poly(2, 2, {{{2, 0}, 1.0}});
  auto xy = poly(2, 2, {{{1, 1}, 1.0}});
  CHECK(weyl_inner(sq, sq) == doctest::Approx(1.0));
  CHECK(weyl_inner(xy, xy) == doctest::Approx(0.5));
  CHECK(weyl_inner(sq, xy) == 0.0);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 1 + trial % 4;
    auto f = oracle::random_poly(rng, 3, d);
    auto g = oracle::random_poly(rng, 3, d);
    Matrix q = oracle::random_rotation(rng, 3);
    CHECK(weyl_inner(rotate(f, q), rotate(g, q)) == doctest::Approx(weyl_inner(f, g)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("reproducing kernel") {
  Vector e0 = Vector::Unit(2, 0), e1 = Vector::Unit(2, 1);
  CHECK(kernel_eval(2, e0, e0) == 1.0);
  CHECK(kernel_eval(3, e0, e1) == 0.0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = oracle::random_poly(rng, 3, 4);
    Vector y = oracle::random_unit(rng, 3);
    CHECK(weyl_inner(f, kernel_polynomial(4, y)) == doctest::Approx(f(y)).epsilon(1e-10).scale(1.0));
    Vector x = oracle::random_unit(rng, 3);
    CHECK(kernel_polynomial(4, y)(x) == doctest::Approx(kernel_eval(4, x, y)).epsilon(1e-12));

    // Derivative form: Df(y) u = <f, d/ds K(., y + s u)> at s = 0, by central differences.
    Vector u = oracle::random_unit(rng, 3);
    const double h = 1e-5;
    double fd = (weyl_inner(f, kernel_polynomial(4, y + h * u)) - weyl_inner(f, kernel_polynomial(4, y - h * u))) / (2 * h);
    CHECK(fd == doctest::Approx(f.gradient(y).dot(u)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("rotation") {
  std::mt19937_64 rng(19);
  auto f = oracle::random_poly(rng, 3, 3);
  CHECK(rotate(f, Matrix::Identity(3, 3)) == f);

  Matrix q(2, 2);
  q << 0, -1, 1, 0;  // e0 -> e1
  auto x0 = poly(2, 1, {{{1, 0}, 1.0}});
  auto r = rotate(x0, q);
  Vector z(2);
  z << 0.3, 0.8;
  CHECK(std::abs(r(z)) == doctest::Approx(std::abs(z[1])));

  Matrix rq = oracle::random_rotation(rng, 3);
  auto fr = rotate(f, rq);
  for (int k = 0; k < 20; ++k) {
    Vector x = oracle::random_unit(rng, 3);
    CHECK(fr(x) == doctest::Approx(f(Vector(rq * x))).epsilon(1e-10).scale(1.0));
  }
  Matrix bad = Matrix::Identity(3, 3) * 1.1;
  CHECK_THROWS_AS(rotate(f, bad), DomainError);
}

TEST_CASE("system norm, dimension and Bezout number") {
  std::mt19937_64 rng(23);
  auto f = oracle::random_system(rng, {2, 3});
  CHECK(f.weyl_norm() * f.weyl_norm() ==
        doctest::Approx(weyl_inner(f[0], f[0]) + weyl_inner(f[1], f[1])).epsilon(1e-12));
  CHECK(f.max_degree() == 3);
  CHECK(f.dimension() == 6 + 10);
  CHECK(f.bezout_number() == 6.0);
  CHECK(f.normalized().weyl_norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(PolynomialSystem({oracle::random_poly(rng, 3, 2)}), DimensionError);
}

TEST_CASE("sphere points") {
  CHECK_THROWS_AS(SpherePoint(Vector(Eigen::Vector2d(1, 1))), DomainError);
  CHECK_THROWS_AS(SpherePoint::normalize(Vector::Zero(3)), DomainError);
  auto p = SpherePoint::normalize(Vector(Eigen::Vector2d(3, 4)));
  CHECK(p[0] == doctest::Approx(0.6));
}

TEST_CASE("affine lift") {
  AffinePolynomial g{1, {Term{mi({1}), 1.0}, Term{mi({0}), -2.0}}};
  PolynomialSystem lifted = lift_affine({g});
  CHECK(lifted.n() == 2);
  CHECK(lifted.n_vars() == 3);
  CHECK(lifted.degrees() == std::vector<int>{1, 2});
  // x1 - 2 x0 and x0 u - x1^2.
  CHECK(lifted[0].coefficient(mi({0, 1, 0})) == 1.0);
  CHECK(lifted[0].coefficient(mi({1, 0, 0})) == -2.0);
  CHECK(lifted[1].coefficient(mi({1, 0, 1})) == 1.0);
  CHECK(lifted[1].coefficient(mi({0, 2, 0})) == -1.0);

  std::mt19937_64 rng(29);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<AffinePolynomial> sys;
    for (int i = 0; i < 2; ++i) {
      AffinePolynomial a{2, {}};
      for (int deg = 0; deg <= 2; ++deg)
        for (const auto& m : monomials_of_degree(2, deg)) a.terms.push_back(Term{m, nd(rng)});
      sys.push_back(a);
    }
    PolynomialSystem L = lift_affine(sys);
    CHECK(L.degrees() == std::vector<int>{2, 2, 2});
    Vector pole = Vector::Zero(4);
    pole[3] = 1.0;
    CHECK(evaluate(L, pole).norm() == 0.0);
    pole[3] = -1.0;
    CHECK(evaluate(L, pole).norm() == 0.0);
    // Homogenization agrees with the affine polynomial at y0 = 1.
    Vector x(2);
    x << nd(rng), nd(rng);
    Vector y(3);
    y << 1.0, x[0], x[1];
    CHECK(homogenize(sys[0])(y) == doctest::Approx(sys[0](x)).epsilon(1e-12));
  }
}
