#include "onebit/quantizer.hpp"

#include <cmath>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

void QuantConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidParameter("dither scale gamma must be positive, got " + std::to_string(gamma));
  if (eta) {
    if (!(*eta > 0.0)) throw InvalidParameter("truncation threshold eta must be positive");
    if (!(gamma > *eta))
      throw InvalidParameter("dither scale gamma must exceed truncation threshold eta");
  }
}

void require_bits(const Eigen::Ref<const Eigen::MatrixXd>& bits, const char* what) {
  for (Eigen::Index j = 0; j < bits.cols(); ++j)
    for (Eigen::Index i = 0; i < bits.rows(); ++i) {
      const double b = bits(i, j);
      if (b != 1.0 && b != -1.0)
        throw InvalidInput(std::string(what) + " must contain only -1/+1 entries");
    }
}

void BitPairSample::validate() const {
  if (bits1.size() != bits2.size()) throw InvalidInput("bit pair vectors differ in length");
  require_bits(bits1, "bits1");
  require_bits(bits2, "bits2");
}

BitPairSample BitPairBatch::sample(Eigen::Index k) const {
  return {bits1.row(k).transpose(), bits2.row(k).transpose()};
}

void BitPairBatch::validate() const {
  if (bits1.rows() != bits2.rows() || bits1.cols() != bits2.cols())
    throw InvalidInput("bit pair batch halves differ in shape");
  require_bits(bits1, "bits1");
  require_bits(bits2, "bits2");
}

double truncate(double x, double eta) {
  if (!(eta > 0.0)) throw InvalidParameter("truncation threshold must be positive");
  return sign_of(x) * std::min(std::abs(x), eta);
}

Eigen::VectorXd truncate(const Eigen::VectorXd& x, double eta) {
  if (!(eta > 0.0)) throw InvalidParameter("truncation threshold must be positive");
  return x.cwiseMax(-eta).cwiseMin(eta);
}

Eigen::MatrixXd truncate(const Eigen::MatrixXd& x, double eta) {
  if (!(eta > 0.0)) throw InvalidParameter("truncation threshold must be positive");
  return x.cwiseMax(-eta).cwiseMin(eta);
}

double dither_sign(double x, double gamma, Stream& rng) {
  if (!(gamma > 0.0)) throw InvalidParameter("dither scale gamma must be positive");
  return sign_with_dither(x, rng.uniform(-gamma, gamma));
}

BitPairSample quantize_covariate_pair(const Eigen::VectorXd& x, const QuantConfig& cfg,
                                      Stream& rng) {
  cfg.validate();
  if (x.size() == 0) throw InvalidInput("cannot quantize an empty covariate vector");
  const Eigen::VectorXd xt = cfg.eta ? truncate(x, *cfg.eta) : x;
  BitPairSample out{Eigen::VectorXd(x.size()), Eigen::VectorXd(x.size())};
  for (Eigen::Index i = 0; i < x.size(); ++i) out.bits1[i] = dither_sign(xt[i], cfg.gamma, rng);
  for (Eigen::Index i = 0; i < x.size(); ++i) out.bits2[i] = dither_sign(xt[i], cfg.gamma, rng);
  return out;
}

double quantize_response(double y, const QuantConfig& cfg, Stream& rng) {
  cfg.validate();
  const double yt = cfg.eta ? truncate(y, *cfg.eta) : y;
  return dither_sign(yt, cfg.gamma, rng);
}

BitPairBatch quantize_covariates(const Eigen::MatrixXd& x, const QuantConfig& cfg,
                                 const Stream& rng) {
  cfg.validate();
  if (x.rows() == 0 || x.cols() == 0) throw InvalidInput("cannot quantize an empty batch");
  Stream g1 = rng.split(channel::kCovariateDither1);
  Stream g2 = rng.split(channel::kCovariateDither2);
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  BitPairBatch out{Eigen::MatrixXd(n, d), Eigen::MatrixXd(n, d), cfg.gamma};
  const double gamma = cfg.gamma;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double v = cfg.eta ? truncate(x(k, i), *cfg.eta) : x(k, i);
      out.bits1(k, i) = sign_with_dither(v, g1.uniform(-gamma, gamma));
      out.bits2(k, i) = sign_with_dither(v, g2.uniform(-gamma, gamma));
    }
  }
  return out;
}

Eigen::VectorXd quantize_responses(const Eigen::VectorXd& y, const QuantConfig& cfg,
                                   const Stream& rng) {
  cfg.validate();
  Stream lambda = rng.split(channel::kResponseDither);
  Eigen::VectorXd out(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const double v = cfg.eta ? truncate(y[k], *cfg.eta) : y[k];
    out[k] = sign_with_dither(v, lambda.uniform(-cfg.gamma, cfg.gamma));
  }
  return out;
}

}  // namespace onebit
