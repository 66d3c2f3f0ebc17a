#pragma once

// Small dense linear algebra used on the hot path: singular values by one-sided
// Jacobi rotations, and Gaussian elimination with complete pivoting.

#include "realroots/poly.hpp"

namespace realroots::linalg {

/// Thin SVD, A = U diag(sigma) V^T with sigma non-increasing.
/// For A of shape m x n and k = min(m, n): U is m x k, V is n x k.
struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
};

/// Off-diagonal convergence tolerance for the Jacobi sweeps.
inline constexpr double kJacobiTol = 1e-13;

Svd svd(const Matrix& a);
Vector singular_values(const Matrix& a);

/// Solves M y = b. Throws SingularError when the largest remaining pivot falls
/// below 1e-14 ||M||_F.
Vector solve(const Matrix& m, const Vector& b);

/// Orthonormal basis of x^perp for a unit x, as the columns 2..n+1 of the
/// Householder reflector mapping e_0 to x, each column sign-normalized so its
/// first nonzero entry is positive. Returns an (n+1) x n matrix.
Matrix orthogonal_complement(const Vector& x);

}  // namespace realroots::linalg
