#include "realroots/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "realroots/errors.hpp"
#include "realroots/linalg.hpp"
#include "realroots/parallel.hpp"

namespace realroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix scaled_restricted(const PolynomialSystem& f, const double* x, double* values) {
  const int n = f.n(), nv = f.n_vars();
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> jac(n, nv);
  f.evaluator().values_and_jacobian(x, values, jac.data());
  for (int i = 0; i < n; ++i) jac.row(i) /= std::sqrt(static_cast<double>(f.degrees()[static_cast<std::size_t>(i)]));
  Matrix frame = linalg::orthogonal_complement(Eigen::Map<const Vector>(x, nv));
  return jac * frame;
}

// Coefficients of y -> <y, x>^{d-1} <y, u>.
HomogeneousPolynomial kernel_derivative(int d, const Vector& x, const Vector& u) {
  const int nv = static_cast<int>(x.size());
  std::vector<Term> terms;
  for (const auto& b : monomials_of_degree(nv, d)) {
    double c = 0.0;
    std::vector<int> e = b.exponents();
    for (int j = 0; j < nv; ++j) {
      if (e[static_cast<std::size_t>(j)] == 0 || u[j] == 0.0) continue;
      --e[static_cast<std::size_t>(j)];
      MultiIndex a(e);
      double m = multinomial(a);
      for (int k = 0; k < nv; ++k) m *= std::pow(x[k], e[static_cast<std::size_t>(k)]);
      c += u[j] * m;
      ++e[static_cast<std::size_t>(j)];
    }
    if (c != 0.0) terms.push_back(Term{b, c});
  }
  return HomogeneousPolynomial(nv, d, std::move(terms));
}

// Rank-one correction h with scaled D h(x)|x^perp = sigma_min u v^T.
std::vector<HomogeneousPolynomial> rank_one_correction(const PolynomialSystem& f, const SpherePoint& x) {
  Matrix a = scaled_restricted_jacobian(f, x);
  auto s = linalg::svd(a);
  const int n = f.n();
  Matrix frame = linalg::orthogonal_complement(x.coords());
  double sigma = s.sigma[n - 1];
  Vector tangent = frame * s.v.col(n - 1);
  std::vector<HomogeneousPolynomial> h;
  for (int i = 0; i < n; ++i) {
    int d = f.degrees()[static_cast<std::size_t>(i)];
    double scale = sigma * s.u(i, n - 1) * std::sqrt(static_cast<double>(d));
    h.push_back(kernel_derivative(d, x.coords(), tangent) * scale);
  }
  return h;
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

SingularSpectrum singular_values(const Matrix& a) {
  if (!a.allFinite()) throw DomainError("singular_values: non-finite entry");
  SingularSpectrum out;
  out.rows = static_cast<int>(a.rows());
  out.cols = static_cast<int>(a.cols());
  Vector s = linalg::singular_values(a);
  int r = 0;
  if (s.size() > 0 && s[0] > 0.0) {
    const double cut = 1e-14 * s[0];
    while (r < s.size() && s[r] > cut) ++r;
  }
  out.rank = r;
  out.values = s.head(r);
  return out;
}

double min_singular_value(const Matrix& a) {
  Vector s = linalg::singular_values(a);
  return s.size() == 0 ? 0.0 : s[s.size() - 1];
}

RankDeficientDistance distance_to_rank_deficient(const Matrix& a) {
  auto s = linalg::svd(a);
  const Eigen::Index k = s.sigma.size();
  if (k == 0) return {0.0, Matrix::Zero(a.rows(), a.cols())};
  double sigma = s.sigma[k - 1];
  Matrix b = -sigma * s.u.col(k - 1) * s.v.col(k - 1).transpose();
  return {sigma, b};
}

double scaled_sigma_min(const PolynomialSystem& f, const double* x, double* values) {
  return min_singular_value(scaled_restricted(f, x, values));
}

Matrix scaled_restricted_jacobian(const PolynomialSystem& f, const SpherePoint& x) {
  if (x.dim() != f.n_vars()) throw DimensionError("point has wrong dimension for the system");
  std::vector<double> values(static_cast<std::size_t>(f.n()));
  return scaled_restricted(f, x.coords().data(), values.data());
}

double mu(const PolynomialSystem& f, const SpherePoint& x) {
  double s = min_singular_value(scaled_restricted_jacobian(f, x));
  return s > 0.0 ? f.weyl_norm() / s : kInf;
}

double mu(const PolynomialSystem& f, const Vector& x) {
  if (x.size() != f.n_vars()) throw DimensionError("point has wrong dimension for the system");
  double r = x.norm();
  if (!(r > 0.0)) throw DomainError("mu: zero vector");
  Matrix jac = jacobian(f, x);
  for (int i = 0; i < f.n(); ++i) {
    int d = f.degrees()[static_cast<std::size_t>(i)];
    jac.row(i) *= std::pow(r, 1 - d) / std::sqrt(static_cast<double>(d));
  }
  double s = min_singular_value(jac * linalg::orthogonal_complement(x / r));
  return s > 0.0 ? f.weyl_norm() / s : kInf;
}

PolynomialSystem minimal_singular_perturbation(const PolynomialSystem& f, const SpherePoint& x) {
  if (!std::isfinite(mu(f, x))) return f;
  auto h = rank_one_correction(f, x);
  std::vector<HomogeneousPolynomial> g;
  for (int i = 0; i < f.n(); ++i) g.push_back(f[i] - h[static_cast<std::size_t>(i)]);
  return PolynomialSystem(std::move(g));
}

PolynomialSystem nearest_singular_at_point(const PolynomialSystem& f, const SpherePoint& x) {
  Vector fx = evaluate(f, x.coords());
  std::vector<HomogeneousPolynomial> g;
  bool regular = std::isfinite(mu(f, x));
  std::vector<HomogeneousPolynomial> h;
  if (regular) h = rank_one_correction(f, x);
  for (int i = 0; i < f.n(); ++i) {
    HomogeneousPolynomial gi = f[i] - kernel_polynomial(f.degrees()[static_cast<std::size_t>(i)], x.coords()) * fx[i];
    if (regular) gi = gi - h[static_cast<std::size_t>(i)];
    g.push_back(std::move(gi));
  }
  return PolynomialSystem(std::move(g));
}

ConditionData condition_data(const PolynomialSystem& f, const SpherePoint& x) {
  PolynomialSystem fn = f.normalized();
  ConditionData c{};
  c.mu = mu(fn, x);
  c.f_norm_at_x = evaluate(fn, x.coords()).norm();
  double inv_mu = std::isfinite(c.mu) ? 1.0 / c.mu : 0.0;
  double denom = std::sqrt(inv_mu * inv_mu + c.f_norm_at_x * c.f_norm_at_x);
  c.kappa_point = denom > 0.0 ? 1.0 / denom : kInf;
  return c;
}

double kappa_point(const PolynomialSystem& f, const SpherePoint& x) { return condition_data(f, x).kappa_point; }

KappaGridEstimate kappa_grid(const PolynomialSystem& f, const SphereMesh& mesh, int threads) {
  if (mesh.dim() != f.n_vars()) throw DimensionError("kappa_grid: mesh dimension mismatch");
  PolynomialSystem fn = f.normalized();
  std::vector<double> inv_kappa(mesh.count());
  parallel_for(mesh.count(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> values(static_cast<std::size_t>(fn.n()));
    for (std::size_t i = begin; i < end; ++i) {
      double s = scaled_sigma_min(fn, mesh.data(i), values.data());
      double fx2 = 0.0;
      for (double v : values) fx2 += v * v;
      inv_kappa[i] = std::sqrt(fx2 + s * s);
    }
  });
  KappaGridEstimate est{};
  est.covering_radius = mesh.covering_radius();
  std::size_t arg = 0;
  for (std::size_t i = 1; i < inv_kappa.size(); ++i)
    if (inv_kappa[i] < inv_kappa[arg]) arg = i;
  double lo = inv_kappa.empty() ? 0.0 : inv_kappa[arg];
  est.argmax = arg;
  est.kappa_lower = lo > 0.0 ? 1.0 / lo : kInf;
  double slack = lo - fn.max_degree() * est.covering_radius;
  est.kappa_upper = slack > 0.0 ? 1.0 / slack : kInf;
  return est;
}

MuVariation mu_variation_check(const PolynomialSystem& f, const PolynomialSystem& g, const SpherePoint& x,
                               const SpherePoint& y) {
  double mfx = mu(f, x);
  double u = f.max_degree() * mfx * angular_distance(x, y);
  double v = mfx * (f - g).weyl_norm();
  MuVariation out{};
  out.lower = mfx / (1.0 + u + v);
  out.upper = u + v < 1.0 ? mfx / (1.0 - u - v) : kInf;
  out.observed = mu(g, y);
  return out;
}

PolynomialSystem sample_gaussian_system(int n, const std::vector<int>& degrees, std::uint64_t seed) {
  if (n < 1 || static_cast<int>(degrees.size()) != n)
    throw DimensionError("sample_gaussian_system: need one degree per equation");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<HomogeneousPolynomial> polys;
  for (int d : degrees) {
    if (d < 1) throw DomainError("sample_gaussian_system: degrees must be >= 1");
    std::vector<Term> terms;
    for (auto& a : monomials_of_degree(n + 1, d)) {
      double c = std::sqrt(multinomial(a)) * normal(rng);
      terms.push_back(Term{std::move(a), c});
    }
    polys.emplace_back(n + 1, d, std::move(terms));
  }
  return PolynomialSystem(std::move(polys));
}

namespace {
struct DegreeData {
  double max_d;
  double bezout;
  double dim;
};
DegreeData degree_data(int n, const std::vector<int>& degrees) {
  if (n < 1 || static_cast<int>(degrees.size()) != n) throw DimensionError("need one degree per equation");
  DegreeData dd{0.0, 1.0, 0.0};
  for (int d : degrees) {
    if (d < 1) throw DomainError("degrees must be >= 1");
    dd.max_d = std::max(dd.max_d, static_cast<double>(d));
    dd.bezout *= d;
    double b = 1.0;  // binom(n + d, d)
    for (int j = 1; j <= d; ++j) b = b * (n + j) / j;
    dd.dim += std::round(b);
  }
  return dd;
}
}  // namespace

double kappa_constant_kn(int n, const std::vector<int>& degrees) {
  auto dd = degree_data(n, degrees);
  return 8.0 * dd.max_d * dd.max_d * std::sqrt(dd.bezout) * std::sqrt(dd.dim) * std::pow(n, 2.5) + 1.0;
}

double expected_ln_kappa_bound(int n, const std::vector<int>& degrees) {
  double l = std::log(kappa_constant_kn(n, degrees));
  return l + std::sqrt(l) + 1.0 / std::sqrt(l) + 0.5 * std::log(2.0 * n);
}

double smoothed_ln_kappa_bound(int n, const std::vector<int>& degrees, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("smoothed bound: sigma must be positive");
  auto dd = degree_data(n, degrees);
  return 2.0 * std::log(dd.dim) + 4.0 * std::log(n) + 2.0 * std::log(dd.bezout) + std::log(1.0 / sigma) + 6.0;
}

MonteCarloKappa monte_carlo_ln_kappa(int n, const std::vector<int>& degrees, int trials, int mesh_t,
                                     std::uint64_t seed, int threads) {
  if (trials < 1) throw DomainError("monte_carlo_ln_kappa: need at least one trial");
  SphereMesh mesh = build_mesh(n, mesh_t);
  MonteCarloKappa out{};
  out.ln_kappa.assign(static_cast<std::size_t>(trials), 0.0);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      auto f = sample_gaussian_system(n, degrees, seed + k);
      out.ln_kappa[k] = std::log(kappa_grid(f, mesh, 1).kappa_lower);
    }
  });
  out.mean_ln_kappa = mean_of(out.ln_kappa);
  out.k_n = kappa_constant_kn(n, degrees);
  out.bound = expected_ln_kappa_bound(n, degrees);
  return out;
}

}  // namespace realroots
