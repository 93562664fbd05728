#include "onebit/admm.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <string>

namespace onebit {

void SolverConfig::validate() const {
  if (!(rho > 0.0)) throw InvalidParameter("ADMM penalty rho must be positive");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0))
    throw InvalidParameter("ADMM tolerances must be positive");
  if (max_iter < 1) throw InvalidParameter("ADMM max_iter must be at least 1");
}

namespace {

void check_start(const AdmmState& s, Eigen::Index rows, Eigen::Index cols) {
  auto ok = [&](const Matrix& m) { return m.rows() == rows && m.cols() == cols; };
  if (!ok(s.m) || !ok(s.z) || !ok(s.dual)) throw InvalidInput("warm start has wrong shape");
}

// Records residuals for one iteration; returns true once both are within tolerance.
bool record(SolveDiagnostics& diag, const SolverConfig& cfg, double primal, double dual,
            const char* name) {
  diag.iterations += 1;
  diag.primal_residual_history.push_back(primal);
  diag.dual_residual_history.push_back(dual);
  if (cfg.log_every && diag.iterations % cfg.log_every == 0)
    spdlog::debug("{} iter {} primal {:.3e} dual {:.3e}", name, diag.iterations, primal, dual);
  return primal <= cfg.tol_primal && dual <= cfg.tol_dual;
}

}  // namespace

LassoSolution admm_lasso(const Matrix& q, const Vector& b, double lambda,
                         const SolverConfig& cfg, const std::optional<AdmmState>& start) {
  cfg.validate();
  require_symmetric(q, "quadratic term Q");
  require_finite(q, "quadratic term Q");
  if (b.size() != q.rows()) throw InvalidInput("linear term length does not match Q");
  if (!(lambda >= 0.0)) throw InvalidParameter("lambda must be nonnegative");
  const Eigen::Index d = q.rows();
  if (d == 0) return {Vector(), SolveDiagnostics{0, {}, {}, true}};
  if (min_eigenvalue(q) < -1e-10) throw InvalidInput("quadratic term Q must be PSD");

  Eigen::LLT<Matrix> chol(q + cfg.rho * Matrix::Identity(d, d));
  // Q PSD and rho > 0 make Q + rho I positive definite.
  if (chol.info() != Eigen::Success) throw NumericError("Cholesky of Q + rho I failed");

  Vector m = Vector::Zero(d), z = Vector::Zero(d), dual = Vector::Zero(d);
  if (start) {
    check_start(*start, d, 1);
    m = start->m.col(0);
    z = start->z.col(0);
    dual = start->dual.col(0);
  }

  const double shrink = lambda / cfg.rho;
  SolveDiagnostics diag;
  Vector z_prev(d);
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    m = chol.solve(b + cfg.rho * z - dual);
    z_prev = z;
    z = soft_threshold(Vector(m + dual / cfg.rho), shrink);
    dual += cfg.rho * (m - z);
    const double primal = (m - z).norm();
    const double dual_res = cfg.rho * (z - z_prev).norm();
    if (record(diag, cfg, primal, dual_res, "admm_lasso")) {
      diag.converged = true;
      return {z, std::move(diag)};
    }
  }
  const double last_primal = diag.primal_residual_history.back();
  throw ConvergenceError("admm_lasso did not converge in " + std::to_string(cfg.max_iter) +
                             " iterations (primal residual " + std::to_string(last_primal) + ")",
                         std::move(diag), Matrix(z));
}

CompletionSolution admm_mc(const Matrix& j1, const Matrix& j2, double n_total, double alpha,
                           double lambda, double gamma, const SolverConfig& cfg,
                           const std::optional<AdmmState>& start) {
  cfg.validate();
  if (j1.rows() != j2.rows() || j1.cols() != j2.cols())
    throw InvalidInput("J1 and J2 must have the same shape");
  if (j2.size() > 0 && j2.minCoeff() < 0.0) throw InvalidInput("J2 must be nonnegative");
  if (!(alpha > 0.0)) throw InvalidParameter("max-norm bound alpha must be positive");
  if (!(lambda >= 0.0)) throw InvalidParameter("lambda must be nonnegative");
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
  const double count = j2.sum();
  if (std::abs(count - n_total) > 1e-9 * std::max(1.0, n_total))
    throw InvalidInput("n_total must equal the sum of J2");
  // The update divides by n rho + J2, so an empty observation set is handled
  // with n = 1: the data term vanishes and the iteration stays at zero.
  const double n = n_total > 0.0 ? n_total : 1.0;

  const Eigen::Index rows = j1.rows(), cols = j1.cols();
  Matrix m = Matrix::Zero(rows, cols), z = Matrix::Zero(rows, cols),
         dual = Matrix::Zero(rows, cols);
  if (start) {
    check_start(*start, rows, cols);
    m = start->m;
    z = start->z;
    dual = start->dual;
  }

  // n rho + J2 >= n rho > 0 entrywise, so the division below is always defined.
  const Matrix denom = (n * cfg.rho + j2.array()).matrix();
  const double shrink = lambda / cfg.rho;
  SolveDiagnostics diag;
  Matrix z_prev(rows, cols);
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    m = clamp_max_norm(
        ((n * cfg.rho * z + j1 - n * dual).array() / denom.array()).matrix(), alpha);
    z_prev = z;
    z = svd_soft_threshold(dual / cfg.rho + m, shrink);
    dual += cfg.rho * (m - z);
    const double primal = (m - z).norm();
    const double dual_res = cfg.rho * (z - z_prev).norm();
    if (record(diag, cfg, primal, dual_res, "admm_mc")) {
      diag.converged = true;
      return {m, std::move(diag)};
    }
  }
  const double last_primal = diag.primal_residual_history.back();
  throw ConvergenceError("admm_mc did not converge in " + std::to_string(cfg.max_iter) +
                             " iterations (primal residual " + std::to_string(last_primal) + ")",
                         std::move(diag), m);
}

double lasso_objective(const Matrix& q, const Vector& b, double lambda, const Vector& theta) {
  return 0.5 * theta.dot(q * theta) - b.dot(theta) + lambda * theta.lpNorm<1>();
}

double completion_objective(const Matrix& j1, const Matrix& j2, double n_total, double lambda,
                            const Matrix& theta) {
  const double n = n_total > 0.0 ? n_total : 1.0;
  const double fit =
      (j2.array() * theta.array().square() - 2.0 * j1.array() * theta.array()).sum() / (2.0 * n);
  return fit + lambda * nuclear_norm(theta);
}

}  // namespace onebit
