#include "realroots/root_count.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "realroots/condition.hpp"
#include "realroots/errors.hpp"
#include "realroots/parallel.hpp"
#include "realroots/scalar_theory.hpp"

namespace realroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxLevel = 28;
constexpr std::size_t kLeafPoints = 64;
constexpr std::size_t kTaskCount = 512;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Candidate {
  std::vector<int> lattice;
  double f_norm;
  double sigma;
};

struct Partial {
  std::vector<Candidate> admissible;
  double min_excluded = kInf;
  std::size_t evaluations = 0;
};

// Everything the per-point test needs, shared read-only across workers.
class PointClassifier {
 public:
  explicit PointClassifier(const PolynomialSystem& fn)
      : fn_(fn), dpow_(std::pow(fn.max_degree(), 1.5)), astar_(theory::alpha_star()) {
    // mu >= sqrt(n), so (max d)^{3/2} n ||f(x)|| >= alpha_* rules x out
    // without computing mu.
    quick_reject_ = astar_ / (dpow_ * fn.n()) * (1.0 + 1e-12);
  }

  double quick_reject() const { return quick_reject_; }

  void classify(const double* x, std::vector<int> lattice, double* values, Partial& out) const {
    fn_.evaluator().values(x, values);
    ++out.evaluations;
    double fx2 = 0.0;
    for (int i = 0; i < fn_.n(); ++i) fx2 += values[i] * values[i];
    double fx = std::sqrt(fx2);
    if (fx >= quick_reject_) {
      out.min_excluded = std::min(out.min_excluded, fx);
      return;
    }
    double s = scaled_sigma_min(fn_, x, values);
    ++out.evaluations;
    if (admissible(fx, s, fn_.max_degree())) {
      out.admissible.push_back(Candidate{std::move(lattice), fx, s});
    } else {
      out.min_excluded = std::min(out.min_excluded, fx);
    }
  }

 private:
  const PolynomialSystem& fn_;
  double dpow_;
  double astar_;
  double quick_reject_;
};

std::vector<int> lattice_key(const double* x, int dim, int m) {
  double top = 0.0;
  for (int i = 0; i < dim; ++i) top = std::max(top, std::abs(x[i]));
  std::vector<int> k(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) k[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(x[i] / top * m));
  return k;
}

// Closed integer box of lattice points on one cube facet.
struct Block {
  std::vector<int> lo, hi;
  std::size_t size() const {
    std::size_t c = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (hi[i] < lo[i]) return 0;
      c *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
    }
    return c;
  }
  std::pair<Block, Block> split() const {
    std::size_t widest = 0;
    for (std::size_t i = 1; i < lo.size(); ++i)
      if (hi[i] - lo[i] > hi[widest] - lo[widest]) widest = i;
    Block a = *this, b = *this;
    int mid = lo[widest] + (hi[widest] - lo[widest]) / 2;
    a.hi[widest] = mid;
    b.lo[widest] = mid + 1;
    return {a, b};
  }
};

class LazyMeshSweep {
 public:
  LazyMeshSweep(const PolynomialSystem& fn, int t, const PointClassifier& classifier, double exclusion_threshold)
      : fn_(fn), dim_(fn.n_vars()), m_(1 << t), classifier_(classifier) {
    prune_level_ = std::max(classifier.quick_reject(), exclusion_threshold);
    double lip2 = 0.0;
    for (const auto& p : fn.polynomials()) {
      double nrm = p.norm();
      lip2 += p.degree() * nrm * nrm;
    }
    lipschitz_ = std::sqrt(lip2);
  }

  // Point k belongs to facet j = min{i : |k_i| = M}: earlier coordinates stay
  // strictly inside (-M, M).
  std::vector<Block> tasks() const {
    std::vector<Block> blocks;
    for (int j = 0; j < dim_; ++j) {
      for (int s : {-1, 1}) {
        Block b{std::vector<int>(static_cast<std::size_t>(dim_)), std::vector<int>(static_cast<std::size_t>(dim_))};
        for (int i = 0; i < dim_; ++i) {
          auto ui = static_cast<std::size_t>(i);
          if (i < j) {
            b.lo[ui] = -m_ + 1;
            b.hi[ui] = m_ - 1;
          } else if (i == j) {
            b.lo[ui] = b.hi[ui] = s * m_;
          } else {
            b.lo[ui] = -m_;
            b.hi[ui] = m_;
          }
        }
        if (b.size() > 0) blocks.push_back(std::move(b));
      }
    }
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.size();
    const std::size_t target = std::max(kLeafPoints, total / kTaskCount);
    std::vector<Block> out;
    std::vector<Block> stack(blocks.rbegin(), blocks.rend());
    while (!stack.empty()) {
      Block b = std::move(stack.back());
      stack.pop_back();
      if (b.size() <= target) {
        out.push_back(std::move(b));
        continue;
      }
      auto [a, c] = b.split();
      stack.push_back(std::move(c));
      stack.push_back(std::move(a));
    }
    return out;
  }

  void process(const Block& b, Partial& out) const {
    std::vector<double> values(static_cast<std::size_t>(fn_.n()));
    std::vector<double> x(static_cast<std::size_t>(dim_));
    walk(b, values, x, out);
  }

 private:
  void walk(const Block& b, std::vector<double>& values, std::vector<double>& x, Partial& out) const {
    const std::size_t size = b.size();
    if (size == 0) return;
    if (size > kLeafPoints) {
      double nrm2 = 0.0, half2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        auto ui = static_cast<std::size_t>(i);
        double c = 0.5 * (static_cast<double>(b.lo[ui]) + b.hi[ui]);
        x[ui] = c;
        nrm2 += c * c;
        double h = 0.5 * (static_cast<double>(b.hi[ui]) - b.lo[ui]);
        half2 += h * h;
      }
      double inv = 1.0 / std::sqrt(nrm2);
      for (double& v : x) v *= inv;
      fn_.evaluator().values(x.data(), values.data());
      ++out.evaluations;
      double fc = 0.0;
      for (double v : values) fc += v * v;
      fc = std::sqrt(fc);
      // Every point of the box has norm >= M, so the chord to the center is
      // at most half-diagonal / M.
      double chord = std::sqrt(half2) / m_;
      double radius = 2.0 * std::asin(std::min(1.0, chord / 2.0));
      double lower = fc - lipschitz_ * radius;
      if (radius <= M_PI / 2 && lower > prune_level_) {
        out.min_excluded = std::min(out.min_excluded, lower);
        return;
      }
      auto [l, r] = b.split();
      walk(l, values, x, out);
      walk(r, values, x, out);
      return;
    }
    std::vector<int> k = b.lo;
    while (true) {
      double nrm2 = 0.0;
      for (int v : k) nrm2 += static_cast<double>(v) * v;
      double inv = 1.0 / std::sqrt(nrm2);
      for (int i = 0; i < dim_; ++i) x[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)] * inv;
      classifier_.classify(x.data(), k, values.data(), out);
      int pos = dim_ - 1;
      while (pos >= 0) {
        auto up = static_cast<std::size_t>(pos);
        if (k[up] < b.hi[up]) {
          ++k[up];
          break;
        }
        k[up] = b.lo[up];
        --pos;
      }
      if (pos < 0) break;
    }
  }

  const PolynomialSystem& fn_;
  int dim_;
  int m_;
  const PointClassifier& classifier_;
  double prune_level_;
  double lipschitz_;
};

std::vector<std::size_t> sweep_order(const CertGraph& g) {
  std::vector<std::size_t> order(g.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.vertices[a].certificate.point[0] < g.vertices[b].certificate.point[0];
  });
  return order;
}

double exclusion_threshold(const PolynomialSystem& f, double eta) {
  return eta * std::sqrt(static_cast<double>(f.n()) * f.max_degree()) / 2.0;
}

// Certificates, edges and components from the admissible candidates.
CertGraph assemble(const PolynomialSystem& fn, int t, std::vector<Partial>& parts, const GraphOptions& options) {
  CertGraph g;
  g.t = t;
  g.eta = std::ldexp(1.0, -t);
  g.min_excluded_f_norm = kInf;
  std::vector<Candidate> cands;
  for (auto& part : parts) {
    g.evaluations += part.evaluations;
    g.min_excluded_f_norm = std::min(g.min_excluded_f_norm, part.min_excluded);
    for (auto& c : part.admissible) cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.lattice < b.lattice; });

  const double dpow = std::pow(fn.max_degree(), 1.5);
  const double r0_star = theory::r0(theory::alpha_star());
  for (auto& cand : cands) {
    Vector k(fn.n_vars());
    for (int i = 0; i < fn.n_vars(); ++i) k[i] = cand.lattice[static_cast<std::size_t>(i)];
    SpherePoint x(k / k.norm());
    Certificate c{x, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, true};
    c.f_norm_at_x = cand.f_norm;
    c.mu = 1.0 / cand.sigma;
    c.beta = chart_beta(fn, x);
    c.gamma_bound = dpow / 2.0 * c.mu;
    c.alpha_bound = c.beta * c.gamma_bound;
    c.inclusion_radius = r0_star * c.mu * c.f_norm_at_x;
    g.vertices.push_back(GraphVertex{std::move(cand.lattice), std::move(c)});
  }

  const std::size_t nv = g.vertices.size();
  UnionFind uf(nv);
  double max_r = 0.0;
  for (const auto& v : g.vertices) max_r = std::max(max_r, v.certificate.inclusion_radius);
  // |x_0 - y_0| <= ||x - y|| <= rho(x, y), so a sweep on the first coordinate
  // sees every pair within reach.
  auto order = sweep_order(g);
  for (std::size_t a = 0; a < nv; ++a) {
    const auto& ca = g.vertices[order[a]].certificate;
    for (std::size_t b = a + 1; b < nv; ++b) {
      const auto& cb = g.vertices[order[b]].certificate;
      if (cb.point[0] - ca.point[0] > 2.0 * max_r) break;
      if (angular_distance(ca.point, cb.point) <= ca.inclusion_radius + cb.inclusion_radius) {
        uf.unite(order[a], order[b]);
        if (options.store_edges) g.edges.emplace_back(std::min(order[a], order[b]), std::max(order[a], order[b]));
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());

  g.component.assign(nv, 0);
  std::vector<std::size_t> label(nv, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < nv; ++i) {
    std::size_t root = uf.find(i);
    if (label[root] == std::numeric_limits<std::size_t>::max()) label[root] = g.component_count++;
    g.component[i] = label[root];
  }
  return g;
}

}  // namespace

CertGraph build_graph(const PolynomialSystem& f, const SphereMesh& mesh, const GraphOptions& options) {
  if (mesh.dim() != f.n_vars()) throw DimensionError("build_graph: mesh dimension mismatch");
  const PolynomialSystem fn = f.normalized();
  PointClassifier classifier(fn);
  const std::size_t count = mesh.count();
  const std::size_t chunks = std::min<std::size_t>(kTaskCount, std::max<std::size_t>(count, 1));
  const std::size_t chunk = (count + chunks - 1) / chunks;
  std::vector<Partial> parts(chunks);
  const int m = 1 << mesh.t();
  parallel_for(chunks, options.threads, [&](std::size_t cb, std::size_t ce) {
    std::vector<double> values(static_cast<std::size_t>(fn.n()));
    for (std::size_t c = cb; c < ce; ++c) {
      const std::size_t begin = c * chunk, end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i)
        classifier.classify(mesh.data(i), lattice_key(mesh.data(i), mesh.dim(), m), values.data(), parts[c]);
    }
  });
  return assemble(fn, mesh.t(), parts, options);
}

CertGraph build_graph(const PolynomialSystem& f, int t, const GraphOptions& options) {
  if (t < 0) throw DomainError("build_graph: need t >= 0");
  if (t > kMaxLevel) throw ResourceLimitError("build_graph: refinement level too large");
  const PolynomialSystem fn = f.normalized();
  PointClassifier classifier(fn);
  LazyMeshSweep sweep(fn, t, classifier, exclusion_threshold(fn, std::ldexp(1.0, -t)));
  auto tasks = sweep.tasks();
  std::vector<Partial> parts(tasks.size());
  parallel_for(tasks.size(), options.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) sweep.process(tasks[i], parts[i]);
  });
  return assemble(fn, t, parts, options);
}

StopCheck check_stop(const PolynomialSystem& f, const CertGraph& graph) {
  const double eta = graph.eta;
  StopCheck s{true, true};
  s.exclusion_ok = graph.min_excluded_f_norm > exclusion_threshold(f, eta);
  const double sep = 2.0 * eta * std::sqrt(static_cast<double>(f.n()));
  auto order = sweep_order(graph);
  for (std::size_t a = 0; a < order.size() && s.separation_ok; ++a) {
    const auto& ca = graph.vertices[order[a]].certificate;
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& cb = graph.vertices[order[b]].certificate;
      if (cb.point[0] - ca.point[0] > sep) break;
      if (graph.component[order[a]] == graph.component[order[b]]) continue;
      if (angular_distance(ca.point, cb.point) <= sep) {
        s.separation_ok = false;
        break;
      }
    }
  }
  return s;
}

StopCheck check_stop(const PolynomialSystem& f, const SphereMesh& mesh, const CertGraph& graph) {
  if (mesh.dim() != f.n_vars()) throw DimensionError("check_stop: mesh dimension mismatch");
  return check_stop(f, graph);
}

int initial_mesh_level(int n) {
  if (n < 1) throw DomainError("initial_mesh_level: need n >= 1");
  const double target = 1.0 / std::sqrt(2.0 * n);
  int t = 0;
  while (std::ldexp(1.0, -t) > target) ++t;
  return t;
}

CountResult root_count(const PolynomialSystem& f, const CountOptions& options) {
  const PolynomialSystem fn = f.normalized();
  CountResult result;
  if (options.kappa_estimate) result.predicted_eta_threshold = predicted_eta_threshold(fn, *options.kappa_estimate);
  GraphOptions gopt{options.threads, false};
  for (int t = initial_mesh_level(fn.n()) + 1; t <= options.max_t; ++t) {
    CertGraph graph = build_graph(fn, t, gopt);
    StopCheck stop = check_stop(fn, graph);
    ++result.iterations;
    result.evaluations += graph.evaluations;
    result.final_eta = graph.eta;
    result.history.push_back(IterationStats{t, graph.eta, static_cast<std::size_t>(mesh_point_count(fn.n(), t)),
                                            graph.vertices.size(), graph.component_count, stop.separation_ok,
                                            stop.exclusion_ok, graph.evaluations});
    result.count = static_cast<int>(graph.component_count);
    if (!stop.stop()) continue;

    result.stopped = true;
    std::vector<std::size_t> rep(graph.component_count, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
      std::size_t c = graph.component[i];
      if (rep[c] == std::numeric_limits<std::size_t>::max() ||
          graph.vertices[i].certificate.f_norm_at_x < graph.vertices[rep[c]].certificate.f_norm_at_x)
        rep[c] = i;
    }
    for (std::size_t r : rep) result.zeros.push_back(refine_zero(fn, graph.vertices[r].certificate.point));
    return result;
  }
  return result;
}

CountResult root_count(const PolynomialSystem& f, int max_t) {
  CountOptions options;
  options.max_t = max_t;
  return root_count(f, options);
}

double predicted_eta_threshold(const PolynomialSystem& f, double kappa) {
  if (!(kappa >= 1.0)) throw DomainError("predicted_eta_threshold: kappa must be >= 1");
  const double astar = theory::alpha_star();
  const double dpow = std::pow(f.max_degree(), 1.5);
  const double second = kappa / (2.0 * std::sqrt(static_cast<double>(f.n()))) * (1.0 - 2.0 * astar * theory::r0(astar));
  return std::min(astar, second) / (dpow * kappa * kappa);
}

ComplexityBound predicted_complexity(const PolynomialSystem& f, double kappa) {
  const double threshold = predicted_eta_threshold(f, kappa);
  const double eta0 = std::ldexp(1.0, -initial_mesh_level(f.n()));
  ComplexityBound b{};
  b.iterations_bound = static_cast<int>(std::ceil(std::log2(eta0 / threshold))) + 1;
  const int n = f.n();
  b.evaluations_bound =
      2.0 * n * std::pow(1.0 + 4.0 * std::pow(f.max_degree(), 1.5) * std::sqrt(static_cast<double>(n)) * kappa * kappa, n);
  return b;
}

}  // namespace realroots
