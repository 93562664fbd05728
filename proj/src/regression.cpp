#include "onebit/regression.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

const char* to_string(RegressionMode m) noexcept {
  switch (m) {
    case RegressionMode::qccs: return "qccs";
    case RegressionMode::cs_subg: return "cs_subg";
    case RegressionMode::cs_heavy: return "cs_heavy";
  }
  return "?";
}

void RegressionParams::validate() const {
  if (!(delta >= 1.0)) throw InvalidParameter("delta must be at least 1");
  for (double c : {sigma_y, moment_y, c1_y, c3_y, c4_y, c6, c7, c8, c8prime, c9, c10, c11, c12})
    if (!(c > 0.0)) throw InvalidParameter("regression constants must be positive");
  if (lambda_override && !(*lambda_override > 0.0))
    throw InvalidParameter("lambda must be positive");
}

RegressionSettings select_regression_params(RegressionMode mode, Regime regime, std::int64_t n,
                                            std::int64_t d, const RegressionParams& p) {
  p.validate();
  if (n < 2 || d < 2) throw InvalidParameter("regression needs n >= 2 and d >= 2");
  const double nn = static_cast<double>(n);
  const double dlog = p.delta * std::log(static_cast<double>(d));
  RegressionSettings out;

  switch (mode) {
    case RegressionMode::qccs: {
      CovParams cx = p.covariate;
      cx.regime = regime;
      cx.delta = p.delta;
      CovParams cy = cx;
      cy.sigma = p.sigma_y;
      cy.moment_M = p.moment_y;
      cy.c1 = p.c1_y;
      cy.c3 = p.c3_y;
      cy.c4 = p.c4_y;
      const CovSettings sx = select_cov_params(n, d, cx);
      const CovSettings sy = select_cov_params(n, d, cy);
      out.gamma_x = sx.gamma;
      out.eta_x = sx.eta;
      out.zeta = sx.zeta;
      out.gamma_y = sy.gamma;
      out.eta_y = sy.eta;
      if (regime == Regime::subgaussian) {
        out.lambda = p.c6 * std::log(nn) * std::sqrt(dlog / nn);
      } else {
        const double m = std::max(p.covariate.moment_M, p.moment_y);
        out.lambda = p.c7 * std::sqrt(m) * std::pow(dlog / nn, 0.25);
      }
      break;
    }
    case RegressionMode::cs_subg:
      if (regime != Regime::subgaussian)
        throw InvalidParameter("cs_subg mode requires the sub-Gaussian regime");
      out.gamma_y = p.c8prime * std::sqrt(std::log(nn));
      out.lambda = p.c8 * std::sqrt(dlog * std::log(nn) / nn);
      break;
    case RegressionMode::cs_heavy: {
      if (regime != Regime::heavytailed)
        throw InvalidParameter("cs_heavy mode requires the heavy-tailed regime");
      if (!(p.c11 > p.c10))
        throw InvalidParameter("cs_heavy needs c11 > c10 so that gamma > eta_y");
      const double ratio = nn / dlog;
      out.eta_x = p.c9 * std::pow(ratio, 0.25);
      out.eta_y = p.c10 * std::pow(ratio, 1.0 / 6.0);
      out.gamma_y = p.c11 * std::pow(ratio, 1.0 / 6.0);
      out.lambda = p.c12 * std::pow(1.0 / ratio, 1.0 / 3.0);
      break;
    }
  }
  if (p.lambda_override) out.lambda = *p.lambda_override;
  return out;
}

Vector cross_cov_1bit(const Vector& y_bits, const BitPairBatch& x_bits, double gamma_x,
                      double gamma_y) {
  if (y_bits.size() != x_bits.size())
    throw InvalidInput("response bits and covariate bits differ in length");
  if (y_bits.size() == 0) throw InvalidInput("cross covariance needs samples");
  if (!(gamma_x > 0.0) || !(gamma_y > 0.0)) throw InvalidParameter("gammas must be positive");
  const double scale = gamma_x * gamma_y / static_cast<double>(y_bits.size());
  return scale * (x_bits.bits1.transpose() * y_bits);
}

Vector cross_cov_semi(const Vector& y_bits, const Matrix& x, double gamma_y) {
  if (y_bits.size() != x.rows()) throw InvalidInput("response bits and covariates differ in length");
  if (y_bits.size() == 0) throw InvalidInput("cross covariance needs samples");
  if (!(gamma_y > 0.0)) throw InvalidParameter("gamma must be positive");
  return (gamma_y / static_cast<double>(x.rows())) * (x.transpose() * y_bits);
}

Matrix sample_cov(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0) throw InvalidInput("sample covariance needs samples");
  Matrix s = Matrix::Zero(x.cols(), x.cols());
  s.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / static_cast<double>(x.rows()));
  return s.selfadjointView<Eigen::Lower>();
}

void RegressionProblem::validate() const {
  const bool qccs = mode == RegressionMode::qccs;
  if (qccs != quantized_covariates.has_value() || qccs == covariates.has_value())
    throw InvalidInput(std::string("mode ") + to_string(mode) +
                       " requires exactly its own covariate representation");
  const Eigen::Index n = qccs ? quantized_covariates->size() : covariates->rows();
  if (response_bits.size() != n) throw InvalidInput("response bits length does not match covariates");
  require_bits(response_bits, "response bits");
  if (!(gamma_y > 0.0)) throw InvalidParameter("gamma_y must be positive");
  if (qccs && !(gamma_x > 0.0)) throw InvalidParameter("gamma_x must be positive");
  if (mode == RegressionMode::cs_heavy && !eta_x)
    spdlog::info("cs_heavy problem without covariate truncation");
}

RegressionProblem quantize_regression(RegressionMode mode, Regime regime, const Matrix& x,
                                      const Vector& y, const RegressionSettings& settings,
                                      std::uint64_t seed, bool no_truncation) {
  if (x.rows() != y.size()) throw InvalidInput("covariates and responses differ in length");
  if (!settings.gamma_y) throw InvalidParameter("settings lack gamma_y");
  RegressionProblem prob;
  prob.mode = mode;
  prob.regime = regime;
  prob.gamma_y = *settings.gamma_y;
  if (!no_truncation) {
    prob.eta_x = settings.eta_x;
    prob.eta_y = settings.eta_y;
  }
  const Stream root(seed);
  const QuantConfig ycfg{prob.eta_y, prob.gamma_y, seed};
  prob.response_bits = quantize_responses(y, ycfg, root);
  if (mode == RegressionMode::qccs) {
    if (!settings.gamma_x || !settings.zeta) throw InvalidParameter("qccs settings incomplete");
    prob.gamma_x = *settings.gamma_x;
    prob.zeta = *settings.zeta;
    const QuantConfig xcfg{prob.eta_x, prob.gamma_x, seed};
    prob.quantized_covariates = quantize_covariates(x, xcfg, root);
  } else {
    prob.covariates = x;
  }
  return prob;
}

Vector estimate_sparse(const Matrix& q, const Vector& b, double lambda, const SolverConfig& solver) {
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be positive");
  return admm_lasso(q, b, lambda, solver).theta;
}

RegressionResult run_regression(const RegressionProblem& problem, double lambda,
                                const SolverConfig& solver) {
  problem.validate();
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be positive");
  Matrix q;
  Vector b;
  RegressionDiagnostics diag;

  switch (problem.mode) {
    case RegressionMode::qccs: {
      const BitPairBatch& bits = *problem.quantized_covariates;
      q = problem.known_covariance ? *problem.known_covariance
                                   : hat_sigma(breve_sigma(bits, problem.gamma_x), problem.zeta);
      b = cross_cov_1bit(problem.response_bits, bits, problem.gamma_x, problem.gamma_y);
      break;
    }
    case RegressionMode::cs_subg:
      q = sample_cov(*problem.covariates);
      b = cross_cov_semi(problem.response_bits, *problem.covariates, problem.gamma_y);
      break;
    case RegressionMode::cs_heavy: {
      const Matrix xt =
          problem.eta_x ? truncate(*problem.covariates, *problem.eta_x) : *problem.covariates;
      q = sample_cov(xt);
      b = cross_cov_semi(problem.response_bits, xt, problem.gamma_y);
      break;
    }
  }

  diag.q_min_eigenvalue = min_eigenvalue(q);
  if (diag.q_min_eigenvalue < 0.0 && problem.mode == RegressionMode::qccs) {
    q = positive_part(q);
    diag.psd_repaired = true;
    spdlog::debug("qccs: replaced indefinite Q (min eigenvalue {:.3e}) by its positive part",
                  diag.q_min_eigenvalue);
  }

  LassoSolution sol = admm_lasso(q, b, lambda, solver);
  return {std::move(sol.theta), RegressionDiagnostics{diag.psd_repaired, diag.q_min_eigenvalue,
                                                      std::move(sol.diagnostics)}};
}

}  // namespace onebit
