#pragma once

// The grid C(eta) on S^n: normalized points of the eta-lattice on the surface
// of the cube ||x||_inf = 1, plus spherical convex hull primitives.

#include <cstddef>
#include <optional>
#include <vector>

#include "realroots/poly.hpp"

namespace realroots {

/// Largest mesh build_mesh will materialize unless told otherwise.
inline constexpr std::size_t kDefaultMeshCap = 40'000'000;

double angular_distance(const SpherePoint& x, const SpherePoint& y);
/// Raw form over `dim` coordinates, both arguments unit vectors.
double angular_distance(const double* x, const double* y, int dim);

/// Exact number of mesh points, (2M+1)^{n+1} - (2M-1)^{n+1} with M = 2^t.
double mesh_point_count(int n, int t);
/// 2 (n+1) (1 + 2^{t+1})^n
double mesh_count_bound(int n, int t);

class SphereMesh {
 public:
  SphereMesh(int n, int t, std::vector<double> coords);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }
  int t() const noexcept { return t_; }
  double eta() const noexcept { return eta_; }
  std::size_t count() const noexcept { return count_; }
  /// eta sqrt(n) / 2
  double covering_radius() const noexcept;

  const double* data(std::size_t i) const noexcept { return coords_.data() + i * static_cast<std::size_t>(dim()); }
  SpherePoint point(std::size_t i) const;

 private:
  int n_;
  int t_;
  double eta_;
  std::size_t count_;
  std::vector<double> coords_;
};

/// Lattice points k in [-M, M]^{n+1}, M = 2^t, with some |k_j| = M, normalized,
/// in lexicographic order of k. Each cube point appears once. Throws
/// ResourceLimitError when the count would exceed `max_points`.
SphereMesh build_mesh(int n, int t, std::size_t max_points = kDefaultMeshCap);

struct NearestMeshPoint {
  std::size_t index;
  double distance;
};

/// Exhaustive nearest mesh point; ties go to the lower index.
NearestMeshPoint covering_check(const SphereMesh& mesh, const SpherePoint& z);

/// Whether x lies in the spherical convex hull of Y, decided by nonnegative
/// least squares on the cone condition. Throws DomainError when the normalized
/// mean of Y does not certify that Y lies in an open hemisphere.
bool sch_membership(const SpherePoint& x, const std::vector<SpherePoint>& y);

/// Evaluates x in SCH(Y) => x in some B(y_i, r_i). The caps must share a
/// point: `witness` if given, otherwise one of the y_i or the normalized mean
/// of Y is tried. Throws DomainError when no common point is found.
bool convexity_cover_check(const std::vector<SpherePoint>& y, const std::vector<double>& radii,
                           const SpherePoint& x, const std::optional<SpherePoint>& witness = std::nullopt);

}  // namespace realroots
