#include "realroots/sphere_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "realroots/errors.hpp"

namespace realroots {

// Equal to arccos<x, y> on unit vectors, but accurate for nearby and
// nearly antipodal points, where arccos loses half the digits.
double angular_distance(const double* x, const double* y, int dim) {
  double minus = 0.0, plus = 0.0;
  for (int i = 0; i < dim; ++i) {
    minus += (x[i] - y[i]) * (x[i] - y[i]);
    plus += (x[i] + y[i]) * (x[i] + y[i]);
  }
  return 2.0 * std::atan2(std::sqrt(minus), std::sqrt(plus));
}

double angular_distance(const SpherePoint& x, const SpherePoint& y) {
  if (x.dim() != y.dim()) throw DimensionError("angular_distance: dimension mismatch");
  return angular_distance(x.coords().data(), y.coords().data(), x.dim());
}

double mesh_point_count(int n, int t) {
  double m = std::ldexp(1.0, t);
  return std::pow(2.0 * m + 1.0, n + 1) - std::pow(2.0 * m - 1.0, n + 1);
}

double mesh_count_bound(int n, int t) {
  return 2.0 * (n + 1) * std::pow(1.0 + std::ldexp(1.0, t + 1), n);
}

SphereMesh::SphereMesh(int n, int t, std::vector<double> coords)
    : n_(n), t_(t), eta_(std::ldexp(1.0, -t)), coords_(std::move(coords)) {
  if (coords_.size() % static_cast<std::size_t>(n + 1) != 0)
    throw DimensionError("SphereMesh: coordinate buffer is not a whole number of points");
  count_ = coords_.size() / static_cast<std::size_t>(n + 1);
}

double SphereMesh::covering_radius() const noexcept { return eta_ * std::sqrt(static_cast<double>(n_)) / 2.0; }

SpherePoint SphereMesh::point(std::size_t i) const {
  return SpherePoint(Eigen::Map<const Vector>(data(i), dim()));
}

namespace {

struct LatticeWalker {
  int dim;
  int m;
  std::vector<int> k;
  std::vector<double>* out;

  void emit() {
    double s = 0.0;
    for (int v : k) s += static_cast<double>(v) * v;
    double inv = 1.0 / std::sqrt(s);
    for (int v : k) out->push_back(v * inv);
  }

  // Lexicographic order over k; once no coordinate of the prefix reached the
  // boundary, the last coordinate is restricted to +-M.
  void walk(int pos, bool on_boundary) {
    if (pos == dim - 1) {
      if (on_boundary) {
        for (int v = -m; v <= m; ++v) {
          k[static_cast<std::size_t>(pos)] = v;
          emit();
        }
      } else {
        k[static_cast<std::size_t>(pos)] = -m;
        emit();
        k[static_cast<std::size_t>(pos)] = m;
        emit();
      }
      return;
    }
    for (int v = -m; v <= m; ++v) {
      k[static_cast<std::size_t>(pos)] = v;
      walk(pos + 1, on_boundary || v == -m || v == m);
    }
  }
};

}  // namespace

SphereMesh build_mesh(int n, int t, std::size_t max_points) {
  if (n < 1) throw DomainError("build_mesh: need n >= 1");
  if (t < 0) throw DomainError("build_mesh: need t >= 0");
  if (t > 28) throw ResourceLimitError("build_mesh: refinement level too large");
  double count = mesh_point_count(n, t);
  if (count > static_cast<double>(max_points))
    throw ResourceLimitError("build_mesh: mesh of " + std::to_string(count) + " points exceeds the cap");
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(n + 1));
  LatticeWalker walker{n + 1, 1 << t, std::vector<int>(static_cast<std::size_t>(n + 1), 0), &coords};
  walker.walk(0, false);
  return SphereMesh(n, t, std::move(coords));
}

NearestMeshPoint covering_check(const SphereMesh& mesh, const SpherePoint& z) {
  if (z.dim() != mesh.dim()) throw DimensionError("covering_check: dimension mismatch");
  double best = -2.0;
  std::size_t arg = 0;
  const double* zp = z.coords().data();
  for (std::size_t i = 0; i < mesh.count(); ++i) {
    const double* p = mesh.data(i);
    double d = 0.0;
    for (int j = 0; j < mesh.dim(); ++j) d += p[j] * zp[j];
    if (d > best) {
      best = d;
      arg = i;
    }
  }
  return {arg, angular_distance(mesh.data(arg), zp, mesh.dim())};
}

namespace {

// Lawson-Hanson active-set NNLS: min ||A l - b|| subject to l >= 0.
Vector nnls(const Matrix& a, const Vector& b) {
  const Eigen::Index n = a.cols();
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  auto solve_passive = [&](Vector& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Matrix ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) ap.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
    Vector zp = ap.colPivHouseholderQr().solve(b);
    z.setZero(n);
    for (std::size_t c = 0; c < idx.size(); ++c) z[idx[c]] = zp[static_cast<Eigen::Index>(c)];
  };
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    Vector w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      Vector z;
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      double step = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) step = std::min(step, x[j] / (x[j] - z[j]));
      x += step * (z - x);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && std::abs(x[j]) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
    }
  }
  return x;
}

void require_hemisphere(const std::vector<SpherePoint>& y) {
  if (y.empty()) throw DomainError("sch_membership: empty point set");
  Vector mean = Vector::Zero(y.front().dim());
  for (const auto& p : y) {
    if (p.dim() != mean.size()) throw DimensionError("sch_membership: dimension mismatch");
    mean += p.coords();
  }
  double nrm = mean.norm();
  if (!(nrm > 1e-12)) throw DomainError("sch_membership: point set has vanishing mean");
  mean /= nrm;
  for (const auto& p : y) {
    if (!(p.coords().dot(mean) > 0.0))
      throw DomainError("sch_membership: mean does not certify an open hemisphere");
  }
}

}  // namespace

bool sch_membership(const SpherePoint& x, const std::vector<SpherePoint>& y) {
  require_hemisphere(y);
  if (x.dim() != y.front().dim()) throw DimensionError("sch_membership: dimension mismatch");
  Matrix a(x.dim(), static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = y[i].coords();
  Vector lambda = nnls(a, x.coords());
  return (a * lambda - x.coords()).norm() < 1e-10;
}

bool convexity_cover_check(const std::vector<SpherePoint>& y, const std::vector<double>& radii,
                           const SpherePoint& x, const std::optional<SpherePoint>& witness) {
  if (y.size() != radii.size()) throw DimensionError("convexity_cover_check: one radius per point");
  auto in_all = [&](const SpherePoint& p) {
    for (std::size_t i = 0; i < y.size(); ++i)
      if (angular_distance(p, y[i]) > radii[i]) return false;
    return true;
  };
  bool found = false;
  if (witness) {
    found = in_all(*witness);
  } else {
    for (const auto& p : y) {
      if (in_all(p)) {
        found = true;
        break;
      }
    }
    if (!found) {
      Vector mean = Vector::Zero(x.dim());
      for (const auto& p : y) mean += p.coords();
      if (mean.norm() > 1e-12) found = in_all(SpherePoint::normalize(mean));
    }
  }
  if (!found) throw DomainError("convexity_cover_check: caps have no common point");
  if (!sch_membership(x, y)) return true;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (angular_distance(x, y[i]) <= radii[i]) return true;
  return false;
}

}  // namespace realroots
