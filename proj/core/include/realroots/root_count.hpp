#pragma once

// Inclusion-exclusion zero counting on S^n over successively finer meshes.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "realroots/certification.hpp"
#include "realroots/poly.hpp"
#include "realroots/sphere_mesh.hpp"

namespace realroots {

struct GraphVertex {
  /// Cube-surface lattice point k, x = k / ||k||.
  std::vector<int> lattice;
  Certificate certificate;
};

struct CertGraph {
  double eta = 0.0;
  int t = 0;
  /// Admissible mesh points, in mesh (lexicographic lattice) order.
  std::vector<GraphVertex> vertices;
  /// Pairs (i, j), i < j, with rho(x_i, x_j) <= r_i + r_j. Left empty unless requested.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// Component label per vertex, labels numbered by first vertex.
  std::vector<std::size_t> component;
  std::size_t component_count = 0;
  /// Lower bound for the smallest ||f(x)|| over non-admissible mesh points
  /// (+inf if none), exact whenever it does not exceed the exclusion threshold
  /// eta sqrt(n max d) / 2. Blocks of points are skipped only when a Lipschitz
  /// bound already places them above that threshold.
  double min_excluded_f_norm = 0.0;
  std::size_t evaluations = 0;
};

struct GraphOptions {
  int threads = 1;
  bool store_edges = true;
};

/// Vertices are the admissible points of the mesh for the normalized f.
/// Every mesh point is evaluated.
CertGraph build_graph(const PolynomialSystem& f, const SphereMesh& mesh, const GraphOptions& options = {});

/// The same graph for C(2^{-t}) without materializing the mesh. Cube facets are
/// subdivided into lattice blocks; a block is skipped when
/// ||f(c)|| - sqrt(sum d_i ||f_i||^2) R exceeds both the exclusion threshold and
/// the level above which no point can be admissible, R bounding the angular
/// radius of the block around its center c. Vertices, components and the stop
/// decision agree with the exhaustive overload; `evaluations` counts the
/// evaluations actually performed.
CertGraph build_graph(const PolynomialSystem& f, int t, const GraphOptions& options = {});

struct StopCheck {
  bool separation_ok;
  bool exclusion_ok;
  bool stop() const noexcept { return separation_ok && exclusion_ok; }
};

/// separation: rho(x, y) > 2 eta sqrt(n) for vertices in distinct components;
/// exclusion: ||f(x)|| > eta sqrt(n max d) / 2 at every non-admissible point.
StopCheck check_stop(const PolynomialSystem& f, const SphereMesh& mesh, const CertGraph& graph);
StopCheck check_stop(const PolynomialSystem& f, const CertGraph& graph);

struct IterationStats {
  int t;
  double eta;
  std::size_t mesh_points;
  std::size_t vertices;
  std::size_t components;
  bool separation_ok;
  bool exclusion_ok;
  std::size_t evaluations;
};

struct CountResult {
  int count = 0;
  /// One refined zero per component, in component order.
  std::vector<RefinedZero> zeros;
  double final_eta = 0.0;
  int iterations = 0;
  std::size_t evaluations = 0;
  bool stopped = false;
  std::optional<double> predicted_eta_threshold;
  std::vector<IterationStats> history;
};

struct CountOptions {
  /// Finest mesh level tried, eta = 2^{-max_t}.
  int max_t = 12;
  int threads = 1;
  /// When set, predicted_eta_threshold is filled in from it.
  std::optional<double> kappa_estimate;
};

/// Largest power of two <= 1 / sqrt(2n), as the exponent t with eta = 2^{-t}.
int initial_mesh_level(int n);

CountResult root_count(const PolynomialSystem& f, const CountOptions& options);
CountResult root_count(const PolynomialSystem& f, int max_t);

/// 1/((max d)^{3/2} kappa^2) min(alpha_*, kappa/(2 sqrt n) (1 - 2 alpha_* r0(alpha_*))).
double predicted_eta_threshold(const PolynomialSystem& f, double kappa);

struct ComplexityBound {
  /// ceil(log2(initial eta / threshold)) + 1
  int iterations_bound;
  /// 2n (1 + 4 (max d)^{3/2} sqrt(n) kappa^2)^n
  double evaluations_bound;
};

ComplexityBound predicted_complexity(const PolynomialSystem& f, double kappa);

}  // namespace realroots
