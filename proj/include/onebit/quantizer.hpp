#pragma once

// Dithered 1-bit quantization: optional truncation, uniform dither, sign.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "onebit/rng.hpp"

namespace onebit {

/// Parameters of one quantization channel.
struct QuantConfig {
  std::optional<double> eta;  ///< truncation threshold; absent = no truncation
  double gamma = 1.0;         ///< dither half-width, Lambda ~ uni[-gamma, gamma]
  std::uint64_t seed = 0;

  /// Throws InvalidParameter unless gamma > 0 and (eta absent or 0 < eta < gamma).
  void validate() const;
};

/// Two independent 1-bit copies of one covariate vector.
struct BitPairSample {
  Eigen::VectorXd bits1;
  Eigen::VectorXd bits2;

  void validate() const;
};

/// n quantized covariate vectors stored row-wise (row k = sample k).
/// Carries the dither scale it was produced with so estimators can check it.
struct BitPairBatch {
  Eigen::MatrixXd bits1;
  Eigen::MatrixXd bits2;
  double gamma = 0.0;

  [[nodiscard]] Eigen::Index size() const noexcept { return bits1.rows(); }
  [[nodiscard]] Eigen::Index dim() const noexcept { return bits1.cols(); }
  [[nodiscard]] BitPairSample sample(Eigen::Index k) const;
  void validate() const;
};

/// sign(x) with sign(0) = +1.
constexpr double sign_of(double x) noexcept { return x >= 0.0 ? 1.0 : -1.0; }

/// sign(x) * min(|x|, eta).
double truncate(double x, double eta);
Eigen::VectorXd truncate(const Eigen::VectorXd& x, double eta);
Eigen::MatrixXd truncate(const Eigen::MatrixXd& x, double eta);

/// sign(x + dither) for an explicitly supplied dither value.
constexpr double sign_with_dither(double x, double dither) noexcept {
  return sign_of(x + dither);
}

/// Draws Lambda ~ uni[-gamma, gamma] from `rng` and returns sign(x + Lambda).
double dither_sign(double x, double gamma, Stream& rng);

/// Truncates (if cfg.eta is set) and draws two independent dither vectors
/// from `rng`, Gamma_1 first, then Gamma_2.
BitPairSample quantize_covariate_pair(const Eigen::VectorXd& x, const QuantConfig& cfg,
                                      Stream& rng);

/// Truncate-then-dither for one response value.
double quantize_response(double y, const QuantConfig& cfg, Stream& rng);

/// Row-wise batch quantization of an n x d covariate matrix.
///
/// Gamma_k1 entries come from rng.split(channel::kCovariateDither1) and
/// Gamma_k2 from rng.split(channel::kCovariateDither2), each consumed row by
/// row, so the first m rows of a batch do not depend on n.
BitPairBatch quantize_covariates(const Eigen::MatrixXd& x, const QuantConfig& cfg,
                                 const Stream& rng);

/// Element-wise response quantization; dithers come from
/// rng.split(channel::kResponseDither).
Eigen::VectorXd quantize_responses(const Eigen::VectorXd& y, const QuantConfig& cfg,
                                   const Stream& rng);

/// Throws InvalidInput unless every entry is exactly -1 or +1.
void require_bits(const Eigen::Ref<const Eigen::MatrixXd>& bits, const char* what);

}  // namespace onebit
