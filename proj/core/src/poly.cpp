#include "realroots/poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "realroots/errors.hpp"

namespace realroots {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Stack storage for the common small case, heap otherwise.
class ScratchBuffer {
 public:
  explicit ScratchBuffer(std::size_t n) {
    if (n > inline_.size()) heap_.resize(n);
    data_ = n > inline_.size() ? heap_.data() : inline_.data();
  }
  double* data() noexcept { return data_; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }

 private:
  std::array<double, 128> inline_{};
  std::vector<double> heap_;
  double* data_;
};

void check_arity(int expected, std::ptrdiff_t got, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(expected) +
                         " coordinates, got " + std::to_string(got));
  }
}

std::vector<Term> merge_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return graded_lex_before(a.index, b.index);
  });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().index == t.index) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
  return merged;
}

void enumerate_monomials(int n_vars, int remaining, int pos, std::vector<int>& cur,
                         std::vector<MultiIndex>& out) {
  if (pos == n_vars - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<std::size_t>(pos)] = e;
    enumerate_monomials(n_vars, remaining - e, pos + 1, cur, out);
  }
}

// General sparse polynomial used while expanding f(Qx).
using SparsePoly = std::map<std::vector<int>, double>;

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw DomainError("multi-index exponents must be nonnegative");
    degree_ += e;
  }
}

bool graded_lex_before(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

double multinomial(const MultiIndex& a) {
  double result = 1.0;
  int running = 0;
  for (int e : a.exponents()) {
    for (int k = 1; k <= e; ++k) {
      ++running;
      result = result * running / k;
    }
  }
  return result;
}

std::vector<MultiIndex> monomials_of_degree(int n_vars, int d) {
  if (n_vars < 1 || d < 0) throw DomainError("monomials_of_degree: need n_vars >= 1, d >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(n_vars), 0);
  enumerate_monomials(n_vars, d, 0, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// HomogeneousPolynomial

HomogeneousPolynomial::HomogeneousPolynomial(int n_vars, int degree)
    : HomogeneousPolynomial(n_vars, degree, {}) {}

HomogeneousPolynomial::HomogeneousPolynomial(int n_vars, int degree, std::vector<Term> terms)
    : n_vars_(n_vars), degree_(degree) {
  if (n_vars < 1) throw DimensionError("polynomial needs at least one variable");
  if (degree < 1) throw DomainError("homogeneous polynomial degree must be >= 1");
  for (const auto& t : terms) {
    if (static_cast<int>(t.index.size()) != n_vars) {
      throw DimensionError("term has " + std::to_string(t.index.size()) +
                           " exponents, polynomial has " + std::to_string(n_vars) + " variables");
    }
    if (t.index.degree() != degree) {
      throw DimensionError("term of degree " + std::to_string(t.index.degree()) +
                           " in a homogeneous polynomial of degree " + std::to_string(degree));
    }
    if (!std::isfinite(t.coeff)) throw DomainError("polynomial coefficients must be finite");
  }
  terms_ = merge_terms(std::move(terms));
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(const MultiIndex& a, double coeff) {
  return HomogeneousPolynomial(static_cast<int>(a.size()), a.degree(), {Term{a, coeff}});
}

double HomogeneousPolynomial::coefficient(const MultiIndex& a) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), a, [](const Term& t, const MultiIndex& m) {
    return graded_lex_before(t.index, m);
  });
  return (it != terms_.end() && it->index == a) ? it->coeff : 0.0;
}

double HomogeneousPolynomial::operator()(std::span<const double> x) const {
  check_arity(n_vars_, static_cast<std::ptrdiff_t>(x.size()), "evaluate");
  double sum = 0.0;
  for (const auto& t : terms_) {
    double m = t.coeff;
    for (int j = 0; j < n_vars_; ++j) m *= ipow(x[static_cast<std::size_t>(j)], t.index[static_cast<std::size_t>(j)]);
    sum += m;
  }
  return sum;
}

double HomogeneousPolynomial::operator()(const Vector& x) const {
  return (*this)(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Vector HomogeneousPolynomial::gradient(const Vector& x) const {
  check_arity(n_vars_, x.size(), "gradient");
  Vector g = Vector::Zero(n_vars_);
  for (const auto& t : terms_) {
    for (int j = 0; j < n_vars_; ++j) {
      const int aj = t.index[static_cast<std::size_t>(j)];
      if (aj == 0) continue;
      double m = t.coeff * aj * ipow(x[j], aj - 1);
      for (int l = 0; l < n_vars_; ++l) {
        if (l != j) m *= ipow(x[l], t.index[static_cast<std::size_t>(l)]);
      }
      g[j] += m;
    }
  }
  return g;
}

HomogeneousPolynomial HomogeneousPolynomial::operator+(const HomogeneousPolynomial& other) const {
  if (other.n_vars_ != n_vars_ || other.degree_ != degree_) {
    throw DimensionError("adding polynomials of different degree or arity");
  }
  std::vector<Term> all(terms_.begin(), terms_.end());
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return HomogeneousPolynomial(n_vars_, degree_, std::move(all));
}

HomogeneousPolynomial HomogeneousPolynomial::operator-(const HomogeneousPolynomial& other) const {
  return *this + other * -1.0;
}

HomogeneousPolynomial HomogeneousPolynomial::operator*(double s) const {
  std::vector<Term> scaled(terms_.begin(), terms_.end());
  for (auto& t : scaled) t.coeff *= s;
  return HomogeneousPolynomial(n_vars_, degree_, std::move(scaled));
}

double HomogeneousPolynomial::norm() const { return std::sqrt(weyl_inner(*this, *this)); }

bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (a.n_vars_ != b.n_vars_ || a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].index == b.terms_[i].index) || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// SystemEvaluator

SystemEvaluator::SystemEvaluator(std::span<const HomogeneousPolynomial> polynomials)
    : n_(static_cast<int>(polynomials.size())) {
  term_begin_.reserve(polynomials.size() + 1);
  for (const auto& p : polynomials) {
    term_begin_.push_back(static_cast<int>(coeffs_.size()));
    max_degree_ = std::max(max_degree_, p.degree());
    for (const auto& t : p.terms()) {
      coeffs_.push_back(t.coeff);
      exponents_.insert(exponents_.end(), t.index.exponents().begin(), t.index.exponents().end());
    }
  }
  term_begin_.push_back(static_cast<int>(coeffs_.size()));
}

void SystemEvaluator::values(const double* x, double* f) const {
  const int nv = n_ + 1;
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  ScratchBuffer pw(static_cast<std::size_t>(nv) * stride);
  for (int j = 0; j < nv; ++j) {
    double* row = pw.data() + static_cast<std::size_t>(j) * stride;
    row[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * x[j];
  }
  for (int i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (int t = term_begin_[static_cast<std::size_t>(i)]; t < term_begin_[static_cast<std::size_t>(i) + 1]; ++t) {
      const int* a = exponents_.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(nv);
      double m = coeffs_[static_cast<std::size_t>(t)];
      for (int j = 0; j < nv; ++j) m *= pw[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(a[j])];
      sum += m;
    }
    f[i] = sum;
  }
}

void SystemEvaluator::values_and_jacobian(const double* x, double* f, double* jac) const {
  const int nv = n_ + 1;
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  const std::size_t unv = static_cast<std::size_t>(nv);
  ScratchBuffer pw(unv * stride + 2 * (unv + 1));
  double* prefix = pw.data() + unv * stride;
  double* suffix = prefix + unv + 1;
  for (std::size_t j = 0; j < unv; ++j) {
    double* row = pw.data() + j * stride;
    row[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * x[j];
  }
  std::fill(jac, jac + static_cast<std::size_t>(n_) * unv, 0.0);
  for (int i = 0; i < n_; ++i) {
    double sum = 0.0;
    double* jrow = jac + static_cast<std::size_t>(i) * unv;
    for (int t = term_begin_[static_cast<std::size_t>(i)]; t < term_begin_[static_cast<std::size_t>(i) + 1]; ++t) {
      const int* a = exponents_.data() + static_cast<std::size_t>(t) * unv;
      const double c = coeffs_[static_cast<std::size_t>(t)];
      prefix[0] = 1.0;
      for (std::size_t j = 0; j < unv; ++j) prefix[j + 1] = prefix[j] * pw[j * stride + static_cast<std::size_t>(a[j])];
      suffix[unv] = 1.0;
      for (std::size_t j = unv; j-- > 0;) suffix[j] = suffix[j + 1] * pw[j * stride + static_cast<std::size_t>(a[j])];
      sum += c * prefix[unv];
      for (std::size_t j = 0; j < unv; ++j) {
        if (a[j] == 0) continue;
        jrow[j] += c * a[j] * pw[j * stride + static_cast<std::size_t>(a[j] - 1)] * prefix[j] * suffix[j + 1];
      }
    }
    f[i] = sum;
  }
}

// ---------------------------------------------------------------------------
// PolynomialSystem

namespace {
std::vector<HomogeneousPolynomial> validated(std::vector<HomogeneousPolynomial> polys) {
  if (polys.empty()) throw DimensionError("a polynomial system needs at least one polynomial");
  const int nv = static_cast<int>(polys.size()) + 1;
  for (const auto& p : polys) {
    if (p.n_vars() != nv) {
      throw DimensionError("system of " + std::to_string(polys.size()) + " polynomials needs " +
                           std::to_string(nv) + " variables, got a polynomial in " +
                           std::to_string(p.n_vars()));
    }
  }
  return polys;
}
}  // namespace

PolynomialSystem::PolynomialSystem(std::vector<HomogeneousPolynomial> polynomials)
    : polys_(validated(std::move(polynomials))), evaluator_(polys_) {
  double sq = 0.0;
  for (const auto& p : polys_) {
    degrees_.push_back(p.degree());
    max_degree_ = std::max(max_degree_, p.degree());
    sq += weyl_inner(p, p);
  }
  weyl_norm_ = std::sqrt(sq);
}

long long PolynomialSystem::dimension() const {
  long long total = 0;
  for (int d : degrees_) {
    // binom(n + d, d)
    long long b = 1;
    for (int k = 1; k <= d; ++k) b = b * (n() + k) / k;
    total += b;
  }
  return total;
}

double PolynomialSystem::bezout_number() const {
  double p = 1.0;
  for (int d : degrees_) p *= d;
  return p;
}

PolynomialSystem PolynomialSystem::scaled(double s) const {
  std::vector<HomogeneousPolynomial> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(p * s);
  return PolynomialSystem(std::move(out));
}

PolynomialSystem PolynomialSystem::normalized() const {
  if (!(weyl_norm_ > 0.0)) throw DomainError("cannot normalize the zero system");
  return scaled(1.0 / weyl_norm_);
}

PolynomialSystem PolynomialSystem::operator+(const PolynomialSystem& other) const {
  if (other.n() != n()) throw DimensionError("adding systems of different size");
  std::vector<HomogeneousPolynomial> out;
  for (int i = 0; i < n(); ++i) out.push_back((*this)[i] + other[i]);
  return PolynomialSystem(std::move(out));
}

PolynomialSystem PolynomialSystem::operator-(const PolynomialSystem& other) const {
  return *this + other.scaled(-1.0);
}

// ---------------------------------------------------------------------------
// SpherePoint

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DimensionError("sphere points need at least two coordinates");
  const double norm = coords_.norm();
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw DomainError("sphere point has norm " + std::to_string(norm));
  }
}

SpherePoint SpherePoint::normalize(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalize a zero or non-finite vector");
  return SpherePoint(v / norm);
}

SpherePoint SpherePoint::basis_vector(int dim, int i) {
  return SpherePoint(Vector::Unit(dim, i));
}

// ---------------------------------------------------------------------------
// Evaluation and calculus

double evaluate(const HomogeneousPolynomial& f, const Vector& x) { return f(x); }

Vector evaluate(const PolynomialSystem& f, const Vector& x) {
  check_arity(f.n_vars(), x.size(), "evaluate");
  Vector out(f.n());
  f.evaluator().values(x.data(), out.data());
  return out;
}

Matrix jacobian(const PolynomialSystem& f, const Vector& x) {
  check_arity(f.n_vars(), x.size(), "jacobian");
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> jac(f.n(), f.n_vars());
  Vector fx(f.n());
  f.evaluator().values_and_jacobian(x.data(), fx.data(), jac.data());
  return jac;
}

double SymmetricTensor::at(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order) throw DimensionError("tensor index has wrong order");
  std::size_t flat = 0;
  for (int i : index) flat = flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i);
  return entries[flat];
}

double SymmetricTensor::apply(const Vector& u) const {
  std::vector<Vector> us(static_cast<std::size_t>(order), u);
  return apply(us);
}

double SymmetricTensor::apply(std::span<const Vector> us) const {
  if (static_cast<int>(us.size()) != order) throw DimensionError("tensor applied to wrong number of vectors");
  for (const auto& u : us) check_arity(dim, u.size(), "tensor apply");
  if (order == 0) return entries.at(0);
  std::vector<int> idx(static_cast<std::size_t>(order), 0);
  double sum = 0.0;
  for (std::size_t flat = 0; flat < entries.size(); ++flat) {
    double w = entries[flat];
    for (int l = 0; l < order && w != 0.0; ++l) w *= us[static_cast<std::size_t>(l)][idx[static_cast<std::size_t>(l)]];
    sum += w;
    for (int l = order - 1; l >= 0; --l) {
      if (++idx[static_cast<std::size_t>(l)] < dim) break;
      idx[static_cast<std::size_t>(l)] = 0;
    }
  }
  return sum;
}

SymmetricTensor derivative_tensor(const HomogeneousPolynomial& f, const Vector& x, int k) {
  check_arity(f.n_vars(), x.size(), "derivative_tensor");
  if (f.n_vars() > 5 || f.degree() > 6) {
    throw ResourceLimitError("derivative_tensor is limited to n_vars <= 5 and degree <= 6");
  }
  if (k < 0 || k > f.degree()) throw DomainError("derivative order must satisfy 0 <= k <= degree");
  const int dim = f.n_vars();
  SymmetricTensor tensor;
  tensor.dim = dim;
  tensor.order = k;
  std::size_t size = 1;
  for (int l = 0; l < k; ++l) size *= static_cast<std::size_t>(dim);
  tensor.entries.assign(size, 0.0);

  std::map<std::vector<int>, double> cache;
  auto partial_value = [&](const std::vector<int>& b) {
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    double sum = 0.0;
    for (const auto& t : f.terms()) {
      double m = t.coeff;
      for (int j = 0; j < dim && m != 0.0; ++j) {
        const int aj = t.index[static_cast<std::size_t>(j)];
        const int bj = b[static_cast<std::size_t>(j)];
        if (aj < bj) {
          m = 0.0;
          break;
        }
        for (int r = 0; r < bj; ++r) m *= (aj - r);
        m *= ipow(x[j], aj - bj);
      }
      sum += m;
    }
    cache.emplace(b, sum);
    return sum;
  };

  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::vector<int> b(static_cast<std::size_t>(dim), 0);
    for (int i : idx) ++b[static_cast<std::size_t>(i)];
    tensor.entries[flat] = partial_value(b);
    for (int l = k - 1; l >= 0; --l) {
      if (++idx[static_cast<std::size_t>(l)] < dim) break;
      idx[static_cast<std::size_t>(l)] = 0;
    }
  }
  return tensor;
}

// ---------------------------------------------------------------------------
// Weyl inner product and reproducing kernel

double weyl_inner(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g) {
  if (f.degree() != g.degree() || f.n_vars() != g.n_vars()) {
    throw DimensionError("Weyl inner product needs equal degree and arity");
  }
  auto ft = f.terms();
  auto gt = g.terms();
  std::size_t i = 0;
  std::size_t j = 0;
  double sum = 0.0;
  while (i < ft.size() && j < gt.size()) {
    if (ft[i].index == gt[j].index) {
      sum += ft[i].coeff * gt[j].coeff / multinomial(ft[i].index);
      ++i;
      ++j;
    } else if (graded_lex_before(ft[i].index, gt[j].index)) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double weyl_inner(const PolynomialSystem& f, const PolynomialSystem& g) {
  if (f.n() != g.n()) throw DimensionError("Weyl inner product of systems of different size");
  double sum = 0.0;
  for (int i = 0; i < f.n(); ++i) sum += weyl_inner(f[i], g[i]);
  return sum;
}

double kernel_eval(int d, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionError("kernel arguments have different arity");
  return ipow(x.dot(y), d);
}

HomogeneousPolynomial kernel_polynomial(int d, const Vector& y) {
  const int nv = static_cast<int>(y.size());
  std::vector<Term> terms;
  for (auto& a : monomials_of_degree(nv, d)) {
    double c = multinomial(a);
    for (int j = 0; j < nv; ++j) c *= ipow(y[j], a[static_cast<std::size_t>(j)]);
    terms.push_back(Term{std::move(a), c});
  }
  return HomogeneousPolynomial(nv, d, std::move(terms));
}

// ---------------------------------------------------------------------------
// Orthogonal change of variables

HomogeneousPolynomial rotate(const HomogeneousPolynomial& f, const Matrix& q) {
  const int nv = f.n_vars();
  if (q.rows() != nv || q.cols() != nv) throw DimensionError("rotation matrix has wrong size");
  if ((q.transpose() * q - Matrix::Identity(nv, nv)).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("rotate: matrix is not orthogonal");
  }
  // powers[j][e] = ((Qx)_j)^e
  std::vector<std::vector<SparsePoly>> powers(static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    SparsePoly linear;
    for (int k = 0; k < nv; ++k) {
      if (q(j, k) == 0.0) continue;
      std::vector<int> e(static_cast<std::size_t>(nv), 0);
      e[static_cast<std::size_t>(k)] = 1;
      linear[e] = q(j, k);
    }
    auto& pj = powers[static_cast<std::size_t>(j)];
    pj.push_back(SparsePoly{{std::vector<int>(static_cast<std::size_t>(nv), 0), 1.0}});
    for (int e = 1; e <= f.degree(); ++e) pj.push_back(multiply(pj.back(), linear));
  }
  SparsePoly total;
  for (const auto& t : f.terms()) {
    SparsePoly prod{{std::vector<int>(static_cast<std::size_t>(nv), 0), t.coeff}};
    for (int j = 0; j < nv; ++j) {
      const int aj = t.index[static_cast<std::size_t>(j)];
      if (aj > 0) prod = multiply(prod, powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(aj)]);
    }
    for (const auto& [e, c] : prod) total[e] += c;
  }
  std::vector<Term> terms;
  terms.reserve(total.size());
  for (auto& [e, c] : total) terms.push_back(Term{MultiIndex(e), c});
  return HomogeneousPolynomial(nv, f.degree(), std::move(terms));
}

PolynomialSystem rotate(const PolynomialSystem& f, const Matrix& q) {
  std::vector<HomogeneousPolynomial> out;
  out.reserve(static_cast<std::size_t>(f.n()));
  for (const auto& p : f.polynomials()) out.push_back(rotate(p, q));
  return PolynomialSystem(std::move(out));
}

// ---------------------------------------------------------------------------
// Affine inputs

int AffinePolynomial::degree() const {
  int d = -1;
  for (const auto& t : terms) {
    if (t.coeff != 0.0) d = std::max(d, t.index.degree());
  }
  return d;
}

double AffinePolynomial::operator()(const Vector& x) const {
  check_arity(n_vars, x.size(), "affine evaluate");
  double sum = 0.0;
  for (const auto& t : terms) {
    double m = t.coeff;
    for (int j = 0; j < n_vars; ++j) m *= ipow(x[j], t.index[static_cast<std::size_t>(j)]);
    sum += m;
  }
  return sum;
}

HomogeneousPolynomial homogenize(const AffinePolynomial& g) {
  for (const auto& t : g.terms) {
    if (static_cast<int>(t.index.size()) != g.n_vars) throw DimensionError("affine term has wrong arity");
  }
  const int d = g.degree();
  if (d < 0) throw DomainError("cannot lift the zero polynomial");
  if (d == 0) throw DomainError("cannot lift a nonzero constant polynomial");
  std::vector<Term> terms;
  for (const auto& t : g.terms) {
    std::vector<int> e;
    e.reserve(static_cast<std::size_t>(g.n_vars) + 1);
    e.push_back(d - t.index.degree());
    e.insert(e.end(), t.index.exponents().begin(), t.index.exponents().end());
    terms.push_back(Term{MultiIndex(std::move(e)), t.coeff});
  }
  return HomogeneousPolynomial(g.n_vars + 1, d, std::move(terms));
}

PolynomialSystem lift_affine(const std::vector<AffinePolynomial>& system) {
  const int n = static_cast<int>(system.size());
  if (n == 0) throw DimensionError("lift_affine needs at least one equation");
  const int nv = n + 2;
  std::vector<HomogeneousPolynomial> lifted;
  for (const auto& g : system) {
    if (g.n_vars != n) throw DimensionError("affine system must have as many equations as unknowns");
    HomogeneousPolynomial h = homogenize(g);
    std::vector<Term> terms;
    for (const auto& t : h.terms()) {
      std::vector<int> e = t.index.exponents();
      e.push_back(0);
      terms.push_back(Term{MultiIndex(std::move(e)), t.coeff});
    }
    lifted.emplace_back(nv, h.degree(), std::move(terms));
  }
  std::vector<Term> aux;
  {
    std::vector<int> e(static_cast<std::size_t>(nv), 0);
    e[0] = 1;
    e[static_cast<std::size_t>(nv - 1)] = 1;
    aux.push_back(Term{MultiIndex(e), 1.0});
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(nv), 0);
    e[static_cast<std::size_t>(i)] = 2;
    aux.push_back(Term{MultiIndex(std::move(e)), -1.0});
  }
  lifted.emplace_back(nv, 2, std::move(aux));
  return PolynomialSystem(std::move(lifted));
}

}  // namespace realroots
