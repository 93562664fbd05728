#pragma once

// Experiment orchestration: grids of (d, s|r, n) x trials, error records,
// log-log slope fits and CSV / plot-script output.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "onebit/datagen.hpp"

namespace onebit {

/// Tunable constants of every parameter-selection rule, plus solver knobs the
/// experiments need. Defaults live in defaults.cpp and are versioned.
struct Constants {
  // covariance
  double delta_cov, c1, c2, c3, c4, c5;
  // regression (qccs reuses c1..c5 for the covariate channel)
  double delta_reg, c1_x, c2_x, c3_x, c4_x, c5_x, c1_y, c3_y, c4_y;
  double c6, c7, c8, c8prime, c9, c10, c11, c12;
  // completion
  double delta_mc, c13, c14, c15, c16, c17;
  double mc_rho_scale;  ///< ADMM rho = mc_rho_scale / d^2
  double solver_tol;
  double solver_max_iter;

  /// Frozen defaults.
  static Constants defaults();
  /// Sets one constant by name; throws InvalidParameter for unknown names.
  void set(const std::string& name, double value);
  [[nodiscard]] std::map<std::string, double> to_map() const;
};

/// Version tag of the frozen defaults; embedded in every output.
extern const char* const kDefaultsVersion;

enum class Metric { op_norm, l2, frobenius };
const char* to_string(Metric m) noexcept;
Metric metric_for(Problem p) noexcept;

struct ExperimentSpec {
  Problem problem = Problem::cov;
  Regime regime = Regime::subgaussian;
  std::vector<int> d_list;
  std::vector<int> s_or_r_list;
  std::vector<int> n_list;
  int trials = 15;
  std::uint64_t seed = 1;
  Constants constants = Constants::defaults();
  bool no_truncation = false;
  bool mvt_matlab_compat = false;  ///< heavy covariance data with mvtrnd scaling
  GaussianReading noise_reading = GaussianReading::variance;
  int threads = 0;  ///< 0: ONEBIT_THREADS or hardware concurrency
  std::filesystem::path out_dir = "out";

  void validate() const;
};

/// The default scenario for a problem/regime: desk-scale d, grids matching
/// the published experiments.
ExperimentSpec default_spec(Problem problem, Regime regime);

/// Paper-scale dimensions and grids.
ExperimentSpec paper_scale_spec(Problem problem, Regime regime);

struct ErrorRecord {
  Problem problem = Problem::cov;
  Regime regime = Regime::subgaussian;
  int n = 0;
  int d = 0;
  int s_or_r = 0;
  int trial = 0;
  Metric metric = Metric::op_norm;
  double value = 0.0;
  std::string params_json;
};

struct GridFailure {
  int d = 0;
  int s_or_r = 0;
  int n = 0;
  int trial = 0;
  bool convergence = false;  ///< true for solver budget exhaustion
  std::string message;
};

struct ExperimentResult {
  std::vector<ErrorRecord> records;  ///< canonical order: d, s|r, n, trial
  std::vector<GridFailure> failures;
};

/// Runs one trial of the spec's problem at a single grid point. Pure in
/// (spec, d, s_or_r, n, trial).
ErrorRecord run_trial(const ExperimentSpec& spec, int d, int s_or_r, int n, int trial);

/// Runs the full grid. A failing trial drops its whole grid point, is
/// logged and recorded in `failures`; the sweep continues.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// OLS fit of log(y) on log(x). Needs >= 3 distinct x values.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct CurveKey {
  int d = 0;
  int s_or_r = 0;
  auto operator<=>(const CurveKey&) const = default;
};

/// Mean error per n for one (d, s|r) curve, in increasing n.
std::map<int, double> mean_curve(const std::vector<ErrorRecord>& records, CurveKey key);

/// Slope of log(mean error) vs log n for one curve.
SlopeFit fit_slope(const std::vector<ErrorRecord>& records, CurveKey key);

struct SummaryRow {
  Problem problem;
  Regime regime;
  int d, s_or_r, n;
  Metric metric;
  int trials;
  double mean, std_error;
  double mean_sq_over_d2;  ///< mean of value^2 / d^2 (the per-entry MSE for mc)
};

std::vector<SummaryRow> summarize(const std::vector<ErrorRecord>& records);

/// Reference rate shape f(n) for the problem/regime, used for the overlay.
double reference_rate(Problem problem, Regime regime, double n);

std::string results_csv(const std::vector<ErrorRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string plot_script(const ExperimentSpec& spec);
std::string metadata_json(const ExperimentSpec& spec, const ExperimentResult& result);

/// Writes results.csv, summary.csv, plot.py and metadata.json into
/// spec.out_dir, each through a temporary file and a rename.
void emit_outputs(const ExperimentResult& result, const ExperimentSpec& spec);

/// Writes `content` to `path` via `path.tmp` and an atomic rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace onebit
