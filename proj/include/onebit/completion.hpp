#pragma once

// 1-bit low-rank matrix completion with a max-norm constraint.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "onebit/admm.hpp"
#include "onebit/datagen.hpp"
#include "onebit/linalg.hpp"

namespace onebit {

/// One observed cell (0-based indices) and its 1-bit response.
struct McObservation {
  int row = 0;
  int col = 0;
  double y_bit = 1.0;
};

struct McAggregate {
  Matrix j1;  ///< sum of gamma * Y_k per cell
  Matrix j2;  ///< observation count per cell
  double n = 0.0;
};

struct McParams {
  Regime regime = Regime::subgaussian;
  double alpha_star = 1.0;
  double delta = 2.0;    ///< > 1
  double sigma = 1.0;    ///< sub-Gaussian noise proxy
  double moment_M = 1.0; ///< noise second-moment bound (heavy-tailed)
  double c13 = 1.0;      ///< gamma, sub-Gaussian
  double c14 = 1.0;      ///< lambda, sub-Gaussian
  double c15 = 1.0;      ///< eta, heavy-tailed
  double c16 = 2.0;      ///< gamma, heavy-tailed (> c15)
  double c17 = 1.0;      ///< lambda, heavy-tailed

  void validate() const;
};

struct McSettings {
  double gamma = 0.0;
  std::optional<double> eta;
  double lambda = 0.0;
  /// gamma minus 2 max{alpha*, sigma or sqrt(M)}; negative values were logged.
  double gamma_margin = 0.0;
};

/// J1(i,j) = sum_{k in I_ij} gamma Y_k and J2(i,j) = |I_ij| over a d x d grid.
McAggregate aggregate_observations(std::span<const McObservation> obs, double gamma, int d);

/// Sub-Gaussian:
///   gamma  = c13 max{alpha*, sigma} sqrt(log(n / (delta d log 2d))),
///   lambda = c14 max{alpha*, sigma} sqrt(log n delta log d / (n d)).
/// Heavy-tailed (with m = max{alpha*, sqrt M}, c16 > c15):
///   eta    = c15 m (n / (delta d log d))^{1/4},
///   gamma  = c16 m (n / (delta d log d))^{1/4},
///   lambda = c17 m (delta log d / (n d^3))^{1/4}.
McSettings select_mc_params(std::int64_t n, int d, const McParams& p);

/// Solves the constrained nuclear-norm program on aggregated observations.
/// Throws ConvergenceError on budget exhaustion.
CompletionSolution estimate_completion(const McAggregate& agg, double alpha_star, double lambda,
                                       double gamma, const SolverConfig& solver);

/// Dithered 1-bit responses for raw (row, col, y) triplets; truncation at
/// `eta` first when present. Dithers come from rng.split(channel::kResponseDither).
std::vector<McObservation> quantize_observations(std::span<const int> rows,
                                                 std::span<const int> cols, const Vector& y,
                                                 std::optional<double> eta, double gamma,
                                                 const Stream& rng);

struct McRunOptions {
  std::optional<McSettings> settings;  ///< absent: select from McParams
  McParams params;
  std::optional<SolverConfig> solver;  ///< absent: rho = 1/d^2, defaults otherwise
};

struct McRunResult {
  Matrix theta_hat;
  McSettings settings;
  SolveDiagnostics diagnostics;
};

/// Aggregates observations and solves. When `opts.settings` is given, the
/// observations must have been quantized with its gamma.
McRunResult run_completion(std::span<const McObservation> obs, int d, const McRunOptions& opts);

/// Default ADMM penalty for a d x d completion problem.
double default_mc_rho(int d);

}  // namespace onebit
