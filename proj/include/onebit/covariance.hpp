#pragma once

// Sparse covariance estimation from two-bit dithered samples.

#include <cstdint>
#include <optional>
#include <span>

#include "onebit/datagen.hpp"
#include "onebit/linalg.hpp"
#include "onebit/quantizer.hpp"

namespace onebit {

struct CovParams {
  Regime regime = Regime::subgaussian;
  double delta = 4.0;     ///< confidence parameter, >= 1
  double sigma = 1.0;     ///< sub-Gaussian norm proxy of each coordinate
  double moment_M = 1.0;  ///< bound on E|X_i|^4 (heavy-tailed regime)
  double c1 = 1.0;        ///< dither scale constant, sub-Gaussian
  double c2 = 1.0;        ///< threshold constant, sub-Gaussian
  double c3 = 1.0;        ///< truncation constant, heavy-tailed
  double c4 = 2.0;        ///< dither scale constant, heavy-tailed (> c3)
  double c5 = 1.0;        ///< threshold constant, heavy-tailed

  void validate() const;
};

struct CovSettings {
  std::optional<double> eta;
  double gamma = 0.0;
  double zeta = 0.0;
};

/// gamma = c1 sigma sqrt(log(n / (2 delta log d))),
/// zeta  = c2 sigma^2 log n sqrt(delta log d / n).
/// Throws InfeasibleConfiguration when n <= 2 delta log d. Logs a warning
/// when gamma <= sigma.
CovSettings select_cov_params_subg(std::int64_t n, std::int64_t d, const CovParams& p);

/// eta   = c3 M^{1/4} (n / (delta log d))^{1/8},
/// gamma = c4 M^{1/4} (n / (delta log d))^{1/8},
/// zeta  = c5 sqrt(M) (delta log d / n)^{1/4}.
CovSettings select_cov_params_heavy(std::int64_t n, std::int64_t d, const CovParams& p);

/// Dispatches on p.regime.
CovSettings select_cov_params(std::int64_t n, std::int64_t d, const CovParams& p);

/// gamma^2 / (2n) sum_k (X_k1 X_k2^T + X_k2 X_k1^T).
Matrix breve_sigma(std::span<const BitPairSample> samples, double gamma);

/// Batch form. Throws InvalidParameter when `gamma` differs from the scale
/// the batch was quantized with.
Matrix breve_sigma(const BitPairBatch& batch, double gamma);

/// Entrywise hard threshold of the intermediate estimator.
Matrix hat_sigma(const Matrix& breve, double zeta);

struct CovOptions {
  bool no_truncation = false;           ///< heavy-tailed ablation
  std::optional<double> gamma_override;
  std::optional<double> eta_override;   ///< permitted in the sub-Gaussian regime, logged
  std::optional<double> zeta_override;
};

struct CovEstimate {
  Matrix breve;
  Matrix hat;
  Matrix hat_plus;  ///< positive part of `hat`
  CovSettings params_used;
};

/// Full pipeline on raw rows: select parameters, quantize (truncating first
/// in the heavy-tailed regime), and build the three estimators. The dither
/// streams are derived from `seed`.
CovEstimate estimate_covariance(const Matrix& raw, const CovParams& p, std::uint64_t seed,
                                const CovOptions& opts = {});

}  // namespace onebit
