#include "onebit/completion.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <string>

#include "onebit/error.hpp"
#include "onebit/quantizer.hpp"

namespace onebit {

void McParams::validate() const {
  if (!(alpha_star > 0.0)) throw InvalidParameter("alpha* must be positive");
  if (!(delta > 1.0)) throw InvalidParameter("delta must exceed 1");
  if (!(sigma > 0.0) || !(moment_M > 0.0))
    throw InvalidParameter("noise scale parameters must be positive");
  for (double c : {c13, c14, c15, c16, c17})
    if (!(c > 0.0)) throw InvalidParameter("completion constants must be positive");
  if (regime == Regime::heavytailed && !(c16 > c15))
    throw InvalidParameter("heavy-tailed completion needs c16 > c15 so that gamma > eta");
}

McAggregate aggregate_observations(std::span<const McObservation> obs, double gamma, int d) {
  if (d < 1) throw InvalidParameter("matrix dimension must be positive");
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
  McAggregate agg{Matrix::Zero(d, d), Matrix::Zero(d, d), 0.0};
  for (const auto& o : obs) {
    if (o.row < 0 || o.row >= d || o.col < 0 || o.col >= d)
      throw InvalidInput("observation index (" + std::to_string(o.row) + ", " +
                         std::to_string(o.col) + ") out of range");
    if (o.y_bit != 1.0 && o.y_bit != -1.0) throw InvalidInput("observation bit must be -1 or +1");
    agg.j1(o.row, o.col) += gamma * o.y_bit;
    agg.j2(o.row, o.col) += 1.0;
  }
  agg.n = static_cast<double>(obs.size());
  return agg;
}

McSettings select_mc_params(std::int64_t n, int d, const McParams& p) {
  p.validate();
  if (n < 1 || d < 2) throw InvalidParameter("completion needs n >= 1 and d >= 2");
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  McSettings out;
  double floor_scale = 0.0;
  if (p.regime == Regime::subgaussian) {
    const double scale = std::max(p.alpha_star, p.sigma);
    const double ratio = nn / (p.delta * dd * std::log(2.0 * dd));
    if (!(ratio > 1.0))
      throw InfeasibleConfiguration("completion needs n > delta d log(2d) for a positive dither scale");
    out.gamma = p.c13 * scale * std::sqrt(std::log(ratio));
    out.lambda = p.c14 * scale * std::sqrt(std::log(nn) * p.delta * std::log(dd) / (nn * dd));
    floor_scale = scale;
  } else {
    if (!(p.c16 > p.c15)) throw InvalidParameter("heavy-tailed completion needs c16 > c15");
    const double scale = std::max(p.alpha_star, std::sqrt(p.moment_M));
    const double base = std::pow(nn / (p.delta * dd * std::log(dd)), 0.25);
    out.eta = p.c15 * scale * base;
    out.gamma = p.c16 * scale * base;
    out.lambda = p.c17 * scale * std::pow(p.delta * std::log(dd) / (nn * dd * dd * dd), 0.25);
    floor_scale = scale;
  }
  out.gamma_margin = out.gamma - 2.0 * floor_scale;
  if (out.gamma_margin < 0.0)
    spdlog::warn("completion dither scale gamma = {:.4g} is below 2 max-scale = {:.4g} (deficit {:.3g})",
                 out.gamma, 2.0 * floor_scale, -out.gamma_margin);
  return out;
}

double default_mc_rho(int d) { return 1.0 / (static_cast<double>(d) * d); }

CompletionSolution estimate_completion(const McAggregate& agg, double alpha_star, double lambda,
                                       double gamma, const SolverConfig& solver) {
  if (agg.j2.size() > 0) {
    const Eigen::ArrayXXd counts = agg.j2.array();
    if ((counts != counts.round()).any()) throw InvalidInput("J2 must hold integer counts");
  }
  return admm_mc(agg.j1, agg.j2, agg.n, alpha_star, lambda, gamma, solver);
}

std::vector<McObservation> quantize_observations(std::span<const int> rows,
                                                 std::span<const int> cols, const Vector& y,
                                                 std::optional<double> eta, double gamma,
                                                 const Stream& rng) {
  if (rows.size() != cols.size() || rows.size() != static_cast<std::size_t>(y.size()))
    throw InvalidInput("observation arrays differ in length");
  const QuantConfig cfg{eta, gamma, 0};
  const Vector bits = quantize_responses(y, cfg, rng);
  std::vector<McObservation> obs(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    obs[k] = {rows[k], cols[k], bits[static_cast<Eigen::Index>(k)]};
  return obs;
}

McRunResult run_completion(std::span<const McObservation> obs, int d, const McRunOptions& opts) {
  const McSettings settings =
      opts.settings ? *opts.settings
                    : select_mc_params(static_cast<std::int64_t>(obs.size()), d, opts.params);
  SolverConfig solver;
  if (opts.solver) {
    solver = *opts.solver;
  } else {
    solver.rho = default_mc_rho(d);
  }
  const McAggregate agg = aggregate_observations(obs, settings.gamma, d);
  CompletionSolution sol =
      estimate_completion(agg, opts.params.alpha_star, settings.lambda, settings.gamma, solver);
  return {std::move(sol.theta), settings, std::move(sol.diagnostics)};
}

}  // namespace onebit
