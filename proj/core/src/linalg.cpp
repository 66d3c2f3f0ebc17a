#include "realroots/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "realroots/errors.hpp"

namespace realroots::linalg {

namespace {

constexpr int kMaxSweeps = 80;

// Hestenes one-sided Jacobi on the columns of w (rows >= cols). On return the
// columns of w are mutually orthogonal and w = A v.
void jacobi_columns(Matrix& w, Matrix& v) {
  const Eigen::Index n = w.cols();
  v.setIdentity(n, n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double a = w.col(i).squaredNorm();
        double b = w.col(j).squaredNorm();
        double g = w.col(i).dot(w.col(j));
        if (g == 0.0 || std::abs(g) <= kJacobiTol * std::sqrt(a * b)) continue;
        rotated = true;
        double zeta = (b - a) / (2.0 * g);
        double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
          double wi = w(r, i), wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          double vi = v(r, i), vj = v(r, j);
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) return;
  }
}

// Fills zero columns of u (marked by `filled == false`) with an orthonormal
// completion of the others, by Gram-Schmidt against the standard basis.
void complete_columns(Matrix& u, const std::vector<bool>& filled) {
  const Eigen::Index m = u.rows();
  Eigen::Index next_e = 0;
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    if (filled[static_cast<std::size_t>(c)]) continue;
    while (next_e < m) {
      Vector cand = Vector::Unit(m, next_e++);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index k = 0; k < u.cols(); ++k) {
          if (k == c) continue;
          if (k > c && !filled[static_cast<std::size_t>(k)]) continue;
          cand -= u.col(k).dot(cand) * u.col(k);
        }
      }
      double nrm = cand.norm();
      if (nrm > 1e-8) {
        u.col(c) = cand / nrm;
        break;
      }
    }
  }
}

}  // namespace

Svd svd(const Matrix& a) {
  const bool wide = a.rows() < a.cols();
  Matrix w = wide ? Matrix(a.transpose()) : a;
  Matrix v;
  const Eigen::Index k = w.cols();
  if (k == 0 || w.rows() == 0) return Svd{Matrix(a.rows(), 0), Vector(0), Matrix(a.cols(), 0)};
  jacobi_columns(w, v);

  Vector sigma(k);
  for (Eigen::Index c = 0; c < k; ++c) sigma[c] = w.col(c).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return sigma[x] > sigma[y]; });

  Svd out;
  out.sigma.resize(k);
  Matrix left(w.rows(), k), right(k, k);
  std::vector<bool> filled(static_cast<std::size_t>(k), true);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::Index src = order[static_cast<std::size_t>(c)];
    double s = sigma[src];
    out.sigma[c] = s;
    right.col(c) = v.col(src);
    if (s > 0.0) {
      left.col(c) = w.col(src) / s;
    } else {
      left.col(c).setZero();
      filled[static_cast<std::size_t>(c)] = false;
    }
  }
  complete_columns(left, filled);
  if (wide) {
    out.u = std::move(right);
    out.v = std::move(left);
  } else {
    out.u = std::move(left);
    out.v = std::move(right);
  }
  return out;
}

Vector singular_values(const Matrix& a) { return svd(a).sigma; }

Vector solve(const Matrix& m, const Vector& b) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || b.size() != n) throw DimensionError("solve: shape mismatch");
  Matrix a = m;
  Vector rhs = b;
  std::vector<Eigen::Index> col(static_cast<std::size_t>(n));
  std::iota(col.begin(), col.end(), 0);
  const double threshold = 1e-14 * m.norm();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = k, pc = k;
    double best = -1.0;
    for (Eigen::Index r = k; r < n; ++r)
      for (Eigen::Index c = k; c < n; ++c)
        if (std::abs(a(r, c)) > best) {
          best = std::abs(a(r, c));
          pr = r;
          pc = c;
        }
    if (!(best > threshold)) throw SingularError("solve: matrix is numerically singular");
    a.row(k).swap(a.row(pr));
    std::swap(rhs[k], rhs[pr]);
    a.col(k).swap(a.col(pc));
    std::swap(col[static_cast<std::size_t>(k)], col[static_cast<std::size_t>(pc)]);
    for (Eigen::Index r = k + 1; r < n; ++r) {
      double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      a.row(r).tail(n - k) -= f * a.row(k).tail(n - k);
      rhs[r] -= f * rhs[k];
    }
  }
  Vector y(n);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    double s = rhs[k];
    for (Eigen::Index c = k + 1; c < n; ++c) s -= a(k, c) * y[c];
    y[k] = s / a(k, k);
  }
  Vector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[col[static_cast<std::size_t>(k)]] = y[k];
  return out;
}

Matrix orthogonal_complement(const Vector& x) {
  const Eigen::Index dim = x.size();
  if (dim < 2) throw DimensionError("orthogonal_complement: need at least two coordinates");
  // H = I - 2 w w^T / (w^T w) with w = x - s e_0 sends x to s e_0, hence e_0 to
  // s x. Choosing s = -sign(x_0) avoids cancellation in w_0.
  Vector w = x;
  double s = x[0] >= 0.0 ? -1.0 : 1.0;
  w[0] -= s;
  double ww = w.squaredNorm();
  Matrix basis(dim, dim - 1);
  for (Eigen::Index j = 1; j < dim; ++j) {
    Vector col = Vector::Unit(dim, j);
    if (ww > 0.0) col -= (2.0 * w[j] / ww) * w;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (col[r] != 0.0) {
        if (col[r] < 0.0) col = -col;
        break;
      }
    }
    basis.col(j - 1) = col;
  }
  return basis;
}

}  // namespace realroots::linalg
