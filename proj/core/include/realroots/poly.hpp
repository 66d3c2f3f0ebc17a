#pragma once

// Homogeneous polynomials and square systems of them, with the orthogonally
// invariant Weyl (Bombieri) inner product.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace realroots {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Exponent vector a = (a_0, ..., a_n) of a monomial x_0^{a_0} ... x_n^{a_n}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  std::size_t size() const noexcept { return exponents_.size(); }
  int operator[](std::size_t i) const { return exponents_[i]; }
  int degree() const noexcept { return degree_; }
  const std::vector<int>& exponents() const noexcept { return exponents_; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Graded-lexicographic order: larger total degree first, then larger leading
/// exponents first (x_0^d leads every other monomial of degree d).
bool graded_lex_before(const MultiIndex& a, const MultiIndex& b);

/// d! / (a_0! ... a_n!)
double multinomial(const MultiIndex& a);

/// Every exponent vector of length n_vars and total degree d, graded-lex order.
std::vector<MultiIndex> monomials_of_degree(int n_vars, int d);

struct Term {
  MultiIndex index;
  double coeff = 0.0;
};

/// Real homogeneous polynomial of degree d >= 1 in n_vars variables, stored
/// sparsely in graded-lex order.
class HomogeneousPolynomial {
 public:
  /// Zero polynomial.
  HomogeneousPolynomial(int n_vars, int degree);
  /// Like terms are merged and exact zeros dropped. Throws DimensionError when
  /// a multi-index has the wrong length or total degree.
  HomogeneousPolynomial(int n_vars, int degree, std::vector<Term> terms);

  static HomogeneousPolynomial monomial(const MultiIndex& a, double coeff = 1.0);

  int n_vars() const noexcept { return n_vars_; }
  int degree() const noexcept { return degree_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  double coefficient(const MultiIndex& a) const;

  double operator()(std::span<const double> x) const;
  double operator()(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  HomogeneousPolynomial operator+(const HomogeneousPolynomial& other) const;
  HomogeneousPolynomial operator-(const HomogeneousPolynomial& other) const;
  HomogeneousPolynomial operator*(double s) const;

  /// Weyl norm sqrt(<f, f>).
  double norm() const;

  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b);

 private:
  int n_vars_;
  int degree_;
  std::vector<Term> terms_;
};

/// Flattened, allocation-free evaluation of a system and its Jacobian. Hot
/// loops (mesh sweeps) go through this.
class SystemEvaluator {
 public:
  explicit SystemEvaluator(std::span<const HomogeneousPolynomial> polynomials);

  int n() const noexcept { return n_; }
  int n_vars() const noexcept { return n_ + 1; }

  void values(const double* x, double* f) const;
  /// `jac` is row-major n x (n+1).
  void values_and_jacobian(const double* x, double* f, double* jac) const;

 private:
  int n_ = 0;
  int max_degree_ = 0;
  std::vector<int> term_begin_;   // per polynomial, offset into coeffs_
  std::vector<double> coeffs_;
  std::vector<int> exponents_;    // term-major, n+1 entries per term
};

/// n homogeneous polynomials in n+1 variables.
class PolynomialSystem {
 public:
  explicit PolynomialSystem(std::vector<HomogeneousPolynomial> polynomials);

  int n() const noexcept { return static_cast<int>(polys_.size()); }
  int n_vars() const noexcept { return n() + 1; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int max_degree() const noexcept { return max_degree_; }
  /// sqrt(sum_i <f_i, f_i>).
  double weyl_norm() const noexcept { return weyl_norm_; }

  /// N = dim H_d = sum_i binom(n + d_i, d_i).
  long long dimension() const;
  /// Bezout number, the product of the degrees.
  double bezout_number() const;

  const HomogeneousPolynomial& operator[](int i) const { return polys_[static_cast<std::size_t>(i)]; }
  const std::vector<HomogeneousPolynomial>& polynomials() const noexcept { return polys_; }
  const SystemEvaluator& evaluator() const noexcept { return evaluator_; }

  PolynomialSystem scaled(double s) const;
  /// Rescaled to unit Weyl norm. Throws DomainError for the zero system.
  PolynomialSystem normalized() const;

  PolynomialSystem operator+(const PolynomialSystem& other) const;
  PolynomialSystem operator-(const PolynomialSystem& other) const;

 private:
  std::vector<HomogeneousPolynomial> polys_;
  std::vector<int> degrees_;
  int max_degree_ = 0;
  double weyl_norm_ = 0.0;
  SystemEvaluator evaluator_;
};

/// Point of the unit sphere S^n in R^{n+1}.
class SpherePoint {
 public:
  /// Throws DomainError unless | ||coords|| - 1 | <= 1e-12.
  explicit SpherePoint(Vector coords);
  /// Throws DomainError for the zero vector.
  static SpherePoint normalize(const Vector& v);
  static SpherePoint basis_vector(int dim, int i);

  const Vector& coords() const noexcept { return coords_; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }

 private:
  Vector coords_;
};

double evaluate(const HomogeneousPolynomial& f, const Vector& x);
Vector evaluate(const PolynomialSystem& f, const Vector& x);

/// n x (n+1) matrix of partial derivatives.
Matrix jacobian(const PolynomialSystem& f, const Vector& x);

/// Dense symmetric k-linear form, entries indexed by (i_1, ..., i_k) in
/// row-major order over {0..dim-1}^k.
struct SymmetricTensor {
  int dim = 0;
  int order = 0;
  std::vector<double> entries;

  double at(std::span<const int> index) const;
  /// T(u, ..., u).
  double apply(const Vector& u) const;
  /// T(u_1, ..., u_k).
  double apply(std::span<const Vector> us) const;
};

/// D^k f(x). Guarded to n_vars <= 5 and degree <= 6.
SymmetricTensor derivative_tensor(const HomogeneousPolynomial& f, const Vector& x, int k);

double weyl_inner(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g);
double weyl_inner(const PolynomialSystem& f, const PolynomialSystem& g);

/// K_d(x, y) = <x, y>^d.
double kernel_eval(int d, const Vector& x, const Vector& y);
/// The polynomial x -> <x, y>^d, so that <f, K_d(., y)> = f(y).
HomogeneousPolynomial kernel_polynomial(int d, const Vector& y);

/// x -> f(Q x). Throws DomainError unless Q^T Q = I within 1e-10.
HomogeneousPolynomial rotate(const HomogeneousPolynomial& f, const Matrix& q);
PolynomialSystem rotate(const PolynomialSystem& f, const Matrix& q);

/// Non-homogeneous polynomial in n affine variables.
struct AffinePolynomial {
  int n_vars = 0;
  std::vector<Term> terms;

  int degree() const;
  double operator()(const Vector& x) const;
};

/// Standard homogenization with the new variable placed first: x_j -> y_{j+1}.
HomogeneousPolynomial homogenize(const AffinePolynomial& g);

/// Lifts n affine equations in n unknowns to n+1 homogeneous equations in n+2
/// variables (y_0, ..., y_n, u): the homogenizations plus
/// g(y, u) = y_0 u - (y_1^2 + ... + y_n^2). The lifted zero count on S^{n+1} is
/// 2 (affine count + 1) for nondegenerate affine roots.
PolynomialSystem lift_affine(const std::vector<AffinePolynomial>& system);

}  // namespace realroots
