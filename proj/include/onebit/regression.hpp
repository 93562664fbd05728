#pragma once

// Sparse linear regression from quantized data: quantized-covariate
// compressed sensing (both covariates and responses are 1-bit) and 1-bit
// compressed sensing (full covariates, 1-bit responses).

#include <cstdint>
#include <optional>

#include "onebit/admm.hpp"
#include "onebit/covariance.hpp"
#include "onebit/datagen.hpp"
#include "onebit/linalg.hpp"
#include "onebit/quantizer.hpp"

namespace onebit {

enum class RegressionMode { qccs, cs_subg, cs_heavy };

const char* to_string(RegressionMode m) noexcept;

struct RegressionParams {
  double delta = 4.0;
  /// Covariate channel for qccs: c1/c3/c4 drive gamma_x and eta_x, c2/c5 the
  /// threshold of the covariance estimate; sigma and moment_M describe X.
  CovParams covariate;
  double sigma_y = 1.0;   ///< sub-Gaussian proxy of the response
  double moment_y = 1.0;  ///< fourth-moment bound of the response
  double c1_y = 1.0;      ///< response dither constant, qccs sub-Gaussian
  double c3_y = 1.0;      ///< response truncation constant, qccs heavy-tailed
  double c4_y = 2.0;      ///< response dither constant, qccs heavy-tailed
  double c6 = 1.0;        ///< lambda, qccs sub-Gaussian
  double c7 = 1.0;        ///< lambda, qccs heavy-tailed
  double c8 = 1.0;        ///< lambda, cs sub-Gaussian
  double c8prime = 1.0;   ///< response dither, cs sub-Gaussian
  double c9 = 1.0;        ///< covariate truncation, cs heavy-tailed
  double c10 = 1.0;       ///< response truncation, cs heavy-tailed
  double c11 = 2.0;       ///< response dither, cs heavy-tailed (> c10)
  double c12 = 1.0;       ///< lambda, cs heavy-tailed
  std::optional<double> lambda_override;

  void validate() const;
};

struct RegressionSettings {
  double lambda = 0.0;
  std::optional<double> eta_x;
  std::optional<double> eta_y;
  std::optional<double> gamma_x;
  std::optional<double> gamma_y;
  std::optional<double> zeta;  ///< qccs only
};

/// Parameter rules per mode. `regime` selects the qccs variant and must agree
/// with the cs mode (cs_subg <-> subgaussian, cs_heavy <-> heavytailed).
RegressionSettings select_regression_params(RegressionMode mode, Regime regime, std::int64_t n,
                                            std::int64_t d, const RegressionParams& p);

/// (gamma_x gamma_y / n) sum_k Y_k X_k1.
Vector cross_cov_1bit(const Vector& y_bits, const BitPairBatch& x_bits, double gamma_x,
                      double gamma_y);

/// (gamma_y / n) sum_k Y_k x_k. Pass truncated rows for the heavy-tailed variant.
Vector cross_cov_semi(const Vector& y_bits, const Matrix& x, double gamma_y);

/// (1/n) sum_k x_k x_k^T. Pass truncated rows for the heavy-tailed variant.
Matrix sample_cov(const Matrix& x);

struct RegressionProblem {
  RegressionMode mode = RegressionMode::qccs;
  Regime regime = Regime::subgaussian;
  std::optional<Matrix> covariates;               ///< raw rows (cs modes)
  std::optional<BitPairBatch> quantized_covariates;  ///< qccs
  Vector response_bits;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  std::optional<double> eta_x;
  std::optional<double> eta_y;
  double zeta = 0.0;                       ///< qccs hard threshold
  std::optional<Matrix> known_covariance;  ///< oracle Q = Sigma_XX (qccs only)

  void validate() const;
};

/// Quantizes raw (X, Y) for `mode` with the given settings. Dithers are
/// drawn by quantize_covariates / quantize_responses from Stream(seed), so
/// covariate and response channels are independent.
/// `no_truncation` drops eta_x and eta_y (ablation).
RegressionProblem quantize_regression(RegressionMode mode, Regime regime, const Matrix& x,
                                      const Vector& y, const RegressionSettings& settings,
                                      std::uint64_t seed, bool no_truncation = false);

/// argmin 1/2 theta^T Q theta - b^T theta + lambda ||theta||_1 via ADMM.
/// Throws ConvergenceError on budget exhaustion.
Vector estimate_sparse(const Matrix& q, const Vector& b, double lambda,
                       const SolverConfig& solver = {});

struct RegressionDiagnostics {
  bool psd_repaired = false;
  double q_min_eigenvalue = 0.0;  ///< before any repair
  SolveDiagnostics solve;
};

struct RegressionResult {
  Vector theta_hat;
  RegressionDiagnostics diagnostics;
};

/// Builds (Q, b) for the problem's mode and solves. In qccs mode a Q with a
/// negative eigenvalue is replaced by its positive part.
RegressionResult run_regression(const RegressionProblem& problem, double lambda,
                                const SolverConfig& solver = {});

}  // namespace onebit
