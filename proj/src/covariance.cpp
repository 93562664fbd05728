#include "onebit/covariance.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

void CovParams::validate() const {
  if (!(delta >= 1.0)) throw InvalidParameter("delta must be at least 1");
  if (!(sigma > 0.0) || !(moment_M > 0.0))
    throw InvalidParameter("sigma and moment bound must be positive");
  if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0 && c4 > 0.0 && c5 > 0.0))
    throw InvalidParameter("covariance constants must be positive");
  if (regime == Regime::heavytailed && !(c4 > c3))
    throw InvalidParameter("heavy-tailed covariance needs c4 > c3 so that gamma > eta");
}

namespace {

void require_sizes(std::int64_t n, std::int64_t d) {
  if (n < 1) throw InvalidParameter("sample size must be positive");
  if (d < 2) throw InvalidParameter("dimension must be at least 2");
}

}  // namespace

CovSettings select_cov_params_subg(std::int64_t n, std::int64_t d, const CovParams& p) {
  p.validate();
  require_sizes(n, d);
  const double nn = static_cast<double>(n);
  const double dlog = p.delta * std::log(static_cast<double>(d));
  if (!(nn > 2.0 * dlog))
    throw InfeasibleConfiguration("sub-Gaussian covariance needs n > 2 delta log d (n = " +
                                  std::to_string(n) + ", 2 delta log d = " +
                                  std::to_string(2.0 * dlog) + ")");
  CovSettings out;
  out.gamma = p.c1 * p.sigma * std::sqrt(std::log(nn / (2.0 * dlog)));
  out.zeta = p.c2 * p.sigma * p.sigma * std::log(nn) * std::sqrt(dlog / nn);
  if (out.gamma <= p.sigma)
    spdlog::warn("dither scale gamma = {:.4g} does not exceed sigma = {:.4g}", out.gamma, p.sigma);
  return out;
}

CovSettings select_cov_params_heavy(std::int64_t n, std::int64_t d, const CovParams& p) {
  p.validate();
  if (!(p.c4 > p.c3)) throw InvalidParameter("heavy-tailed covariance needs c4 > c3");
  require_sizes(n, d);
  const double ratio = static_cast<double>(n) / (p.delta * std::log(static_cast<double>(d)));
  const double base = std::pow(p.moment_M, 0.25) * std::pow(ratio, 0.125);
  CovSettings out;
  out.eta = p.c3 * base;
  out.gamma = p.c4 * base;
  out.zeta = p.c5 * std::sqrt(p.moment_M) * std::pow(1.0 / ratio, 0.25);
  return out;
}

CovSettings select_cov_params(std::int64_t n, std::int64_t d, const CovParams& p) {
  return p.regime == Regime::subgaussian ? select_cov_params_subg(n, d, p)
                                         : select_cov_params_heavy(n, d, p);
}

Matrix breve_sigma(std::span<const BitPairSample> samples, double gamma) {
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
  if (samples.empty()) throw InvalidInput("breve_sigma needs at least one sample");
  const Eigen::Index d = samples.front().bits1.size();
  if (d == 0) throw InvalidInput("breve_sigma samples are empty vectors");
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& s : samples) {
    if (s.bits1.size() != d || s.bits2.size() != d)
      throw InvalidInput("breve_sigma samples differ in dimension");
    s.validate();
    acc.noalias() += s.bits1 * s.bits2.transpose();
  }
  const double scale = gamma * gamma / (2.0 * static_cast<double>(samples.size()));
  return scale * (acc + acc.transpose());
}

Matrix breve_sigma(const BitPairBatch& batch, double gamma) {
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
  if (batch.gamma > 0.0 && batch.gamma != gamma)
    throw InvalidParameter("estimator gamma " + std::to_string(gamma) +
                           " differs from quantization gamma " + std::to_string(batch.gamma));
  if (batch.size() == 0 || batch.dim() == 0) throw InvalidInput("breve_sigma needs samples");
  if (batch.bits2.rows() != batch.size() || batch.bits2.cols() != batch.dim())
    throw InvalidInput("bit pair batch halves differ in shape");
  const Matrix cross = batch.bits1.transpose() * batch.bits2;
  const double scale = gamma * gamma / (2.0 * static_cast<double>(batch.size()));
  return scale * (cross + cross.transpose());
}

Matrix hat_sigma(const Matrix& breve, double zeta) {
  require_symmetric(breve, "intermediate covariance estimate");
  return hard_threshold(breve, zeta);
}

CovEstimate estimate_covariance(const Matrix& raw, const CovParams& p, std::uint64_t seed,
                                const CovOptions& opts) {
  if (raw.rows() == 0 || raw.cols() == 0) throw InvalidInput("no covariance samples");
  require_finite(raw, "covariance samples");
  CovSettings used = select_cov_params(raw.rows(), raw.cols(), p);
  if (opts.gamma_override) used.gamma = *opts.gamma_override;
  if (opts.zeta_override) used.zeta = *opts.zeta_override;
  if (opts.eta_override) {
    if (p.regime == Regime::subgaussian)
      spdlog::info("truncation requested in the sub-Gaussian covariance pipeline (eta = {:.4g})",
                   *opts.eta_override);
    used.eta = *opts.eta_override;
  }
  if (opts.no_truncation) used.eta.reset();

  const QuantConfig cfg{used.eta, used.gamma, seed};
  const BitPairBatch bits = quantize_covariates(raw, cfg, Stream(seed));

  CovEstimate out;
  out.breve = breve_sigma(bits, used.gamma);
  out.hat = hat_sigma(out.breve, used.zeta);
  out.hat_plus = positive_part(out.hat);
  out.params_used = used;
  return out;
}

}  // namespace onebit
