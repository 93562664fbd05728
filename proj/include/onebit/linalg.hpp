#pragma once

// Dense matrix primitives shared by the estimators and solvers.

#include <Eigen/Dense>

namespace onebit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Norms {
  double op = 0.0;         ///< largest singular value
  double frobenius = 0.0;
  double max = 0.0;        ///< largest entry magnitude
  double nuclear = 0.0;    ///< sum of singular values
  double one_inf = 0.0;    ///< sup_j sum_i |a_ij|
};

/// Relative symmetry tolerance used by routines that require symmetric input.
inline constexpr double kSymmetryTol = 1e-12;

bool is_symmetric(const Matrix& a, double rel_tol = kSymmetryTol);
void require_symmetric(const Matrix& a, const char* what);
/// (A + A^T) / 2
Matrix symmetrize(const Matrix& a);

/// x * 1(|x| >= zeta), entrywise. The boundary |x| = zeta is kept.
double hard_threshold(double x, double zeta);
Matrix hard_threshold(const Matrix& a, double zeta);

/// sign(x) * max(0, |x| - beta), entrywise.
double soft_threshold(double x, double beta);
Vector soft_threshold(const Vector& v, double beta);
Matrix soft_threshold(const Matrix& a, double beta);

/// U * diag(max(0, s_i - beta)) * V^T for A = U diag(s) V^T; the proximal
/// map of beta * nuclear norm.
Matrix svd_soft_threshold(const Matrix& a, double beta);

/// Keeps the nonnegative part of the spectrum of a symmetric matrix.
Matrix positive_part(const Matrix& a);

/// Entrywise clip to [-alpha, alpha]; the Frobenius projection onto the
/// max-norm ball of radius alpha.
Matrix clamp_max_norm(const Matrix& a, double alpha);

Norms norms(const Matrix& a);
double op_norm(const Matrix& a);
double nuclear_norm(const Matrix& a);
Vector singular_values(const Matrix& a);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& a);

void require_finite(const Matrix& a, const char* what);

}  // namespace onebit
