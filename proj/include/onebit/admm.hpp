#pragma once

// Two-block ADMM for the l1-regularized generalized quadratic loss and for the
// max-norm constrained nuclear-norm matrix completion program.

#include <cstddef>
#include <optional>
#include <vector>

#include "onebit/error.hpp"
#include "onebit/linalg.hpp"

namespace onebit {

struct SolverConfig {
  double rho = 1.0;         ///< augmented Lagrangian penalty
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  std::size_t max_iter = 5000;
  std::size_t log_every = 0;  ///< 0 disables progress logging

  void validate() const;
};

struct SolveDiagnostics {
  std::size_t iterations = 0;
  std::vector<double> primal_residual_history;  ///< ||M_t - Z_t||
  std::vector<double> dual_residual_history;    ///< rho * ||Z_t - Z_{t-1}||
  bool converged = false;
};

/// Raised when the iteration budget is exhausted. Carries the diagnostics
/// and the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, SolveDiagnostics diag, Matrix last)
      : Error(msg), diagnostics_(std::move(diag)), last_iterate_(std::move(last)) {}

  [[nodiscard]] const SolveDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  [[nodiscard]] const Matrix& last_iterate() const noexcept { return last_iterate_; }

 private:
  SolveDiagnostics diagnostics_;
  Matrix last_iterate_;
};

/// ADMM state (M, Z, Upsilon). Vectors are stored as d x 1 matrices.
struct AdmmState {
  Matrix m;
  Matrix z;
  Matrix dual;
};

struct LassoSolution {
  Vector theta;  ///< the Z iterate (exactly sparse)
  SolveDiagnostics diagnostics;
};

struct CompletionSolution {
  Matrix theta;  ///< the M iterate (exactly feasible)
  SolveDiagnostics diagnostics;
};

/// argmin_theta 1/2 theta^T Q theta - b^T theta + lambda ||theta||_1.
///
/// Q must be symmetric with smallest eigenvalue >= -1e-10. (Q + rho I) is
/// Cholesky-factored once. Cold start is M = Z = Upsilon = 0 unless `start`
/// is given. Throws ConvergenceError after cfg.max_iter iterations.
LassoSolution admm_lasso(const Matrix& q, const Vector& b, double lambda,
                         const SolverConfig& cfg,
                         const std::optional<AdmmState>& start = std::nullopt);

/// argmin_{||Theta||_max <= alpha} 1/(2n) sum_k (<X_k, Theta> - gamma Y_k)^2
///                                  + lambda ||Theta||_nu
/// written in terms of the aggregates J1 (sum of gamma * Y_k per cell) and
/// J2 (observation count per cell), with n = sum of J2.
///
/// `gamma` is not used by the iterations (it is already folded into J1); it
/// is validated and kept for the caller's bookkeeping.
CompletionSolution admm_mc(const Matrix& j1, const Matrix& j2, double n_total, double alpha,
                           double lambda, double gamma, const SolverConfig& cfg,
                           const std::optional<AdmmState>& start = std::nullopt);

/// 1/2 theta^T Q theta - b^T theta + lambda ||theta||_1
double lasso_objective(const Matrix& q, const Vector& b, double lambda, const Vector& theta);

/// 1/(2n) sum_cells (J2 theta^2 - 2 J1 theta) + lambda ||theta||_nu, i.e. the
/// completion objective up to the theta-independent constant.
double completion_objective(const Matrix& j1, const Matrix& j2, double n_total, double lambda,
                            const Matrix& theta);

}  // namespace onebit
