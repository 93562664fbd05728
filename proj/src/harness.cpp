#include "onebit/harness.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "onebit/completion.hpp"
#include "onebit/covariance.hpp"
#include "onebit/error.hpp"
#include "onebit/regression.hpp"

namespace onebit {

using json = nlohmann::ordered_json;

const char* to_string(Metric m) noexcept {
  switch (m) {
    case Metric::op_norm: return "op_norm";
    case Metric::l2: return "l2";
    case Metric::frobenius: return "frobenius";
  }
  return "?";
}

Metric metric_for(Problem p) noexcept {
  switch (p) {
    case Problem::cov: return Metric::op_norm;
    case Problem::qccs:
    case Problem::cs: return Metric::l2;
    case Problem::mc: return Metric::frobenius;
  }
  return Metric::op_norm;
}

namespace {

std::vector<int> arange(int first, int step, int last) {
  std::vector<int> v;
  for (int x = first; x <= last; x += step) v.push_back(x);
  return v;
}

std::vector<int> n_grid(Problem problem) {
  switch (problem) {
    case Problem::cov: return arange(900, 300, 2700);
    case Problem::qccs:
    case Problem::cs: return arange(900, 300, 2400);
    case Problem::mc: return arange(6000, 1000, 10000);
  }
  return {};
}

}  // namespace

void ExperimentSpec::validate() const {
  if (d_list.empty() || s_or_r_list.empty() || n_list.empty())
    throw InvalidParameter("experiment grids must be nonempty");
  if (trials < 1) throw InvalidParameter("trials must be at least 1");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw InvalidParameter("n list must be strictly increasing");
  for (int n : n_list)
    if (n < 2) throw InvalidParameter("sample sizes must be at least 2");
  for (int d : d_list)
    for (int s : s_or_r_list) {
      if (d < 2 || s < 1 || s > d) throw InvalidParameter("need 1 <= s|r <= d and d >= 2");
      if (problem == Problem::cov && (s < 2 || 3 * s > d))
        throw InvalidParameter("covariance experiments need s >= 2 and 3s <= d");
    }
}

ExperimentSpec default_spec(Problem problem, Regime regime) {
  ExperimentSpec spec;
  spec.problem = problem;
  spec.regime = regime;
  spec.n_list = n_grid(problem);
  switch (problem) {
    case Problem::cov:
      spec.d_list = {200};
      spec.s_or_r_list = {3, 9};
      break;
    case Problem::qccs:
      spec.d_list = {300};
      spec.s_or_r_list = {3, 6};
      break;
    case Problem::cs:
      spec.d_list = {300};
      spec.s_or_r_list = regime == Regime::subgaussian ? std::vector<int>{3, 9}
                                                       : std::vector<int>{3, 6};
      break;
    case Problem::mc:
      spec.d_list = {100};
      spec.s_or_r_list = {1, 2};
      break;
  }
  return spec;
}

ExperimentSpec paper_scale_spec(Problem problem, Regime regime) {
  ExperimentSpec spec = default_spec(problem, regime);
  const bool subg = regime == Regime::subgaussian;
  switch (problem) {
    case Problem::cov:
      spec.d_list = subg ? std::vector<int>{2500, 2700, 2900} : std::vector<int>{2200, 2400, 2600};
      if (!subg) spec.n_list = arange(900, 300, 2400);
      break;
    case Problem::qccs:
    case Problem::cs:
      spec.d_list = {2200, 2400, 2600};
      break;
    case Problem::mc:
      spec.d_list = {100, 120};
      break;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Trials

namespace {

Stream trial_stream(const ExperimentSpec& spec, int d, int s_or_r, int trial) {
  // n is deliberately not part of the key: samples for a larger n extend
  // those for a smaller n (common random numbers along each curve).
  return Stream(spec.seed).split({static_cast<std::uint64_t>(spec.problem) + 1,
                                  static_cast<std::uint64_t>(spec.regime) + 1,
                                  static_cast<std::uint64_t>(d),
                                  static_cast<std::uint64_t>(s_or_r),
                                  static_cast<std::uint64_t>(trial)});
}

inline constexpr std::uint64_t kDitherSeedTag = 0x4449544845520008ULL;

SolverConfig solver_from(const Constants& c) {
  SolverConfig s;
  s.tol_primal = c.solver_tol;
  s.tol_dual = c.solver_tol;
  s.max_iter = static_cast<std::size_t>(c.solver_max_iter);
  return s;
}

json settings_json(std::optional<double> eta, double gamma, double zeta) {
  json j;
  j["eta"] = eta ? json(*eta) : json(nullptr);
  j["gamma"] = gamma;
  j["zeta"] = zeta;
  return j;
}

ErrorRecord cov_trial(const ExperimentSpec& spec, int d, int s, int n, int trial, json& meta) {
  const Constants& c = spec.constants;
  const Matrix sigma = make_sparse_cov(d, s);
  const Stream base = trial_stream(spec, d, s, trial);
  Stream xs = base.split(channel::kCovariates);

  const double var = sigma.diagonal().maxCoeff();
  CovParams p;
  p.regime = spec.regime;
  p.delta = c.delta_cov;
  p.sigma = std::sqrt(var);
  p.c1 = c.c1;
  p.c2 = c.c2;
  p.c3 = c.c3;
  p.c4 = c.c4;
  p.c5 = c.c5;
  Matrix x;
  if (spec.regime == Regime::subgaussian) {
    x = sample_gaussian(sigma, n, xs);
    p.moment_M = 3.0 * var * var;
  } else {
    constexpr double nu = 6.0;
    x = sample_mvt(sigma, nu, n, xs, !spec.mvt_matlab_compat);
    const double v = spec.mvt_matlab_compat ? var * nu / (nu - 2.0) : var;
    p.moment_M = t_kurtosis(nu) * v * v;
  }
  CovOptions opts;
  opts.no_truncation = spec.no_truncation;
  const CovEstimate est = estimate_covariance(x, p, base.split(kDitherSeedTag).key(), opts);
  meta = settings_json(est.params_used.eta, est.params_used.gamma, est.params_used.zeta);
  return {spec.problem, spec.regime, n, d, s, trial, Metric::op_norm, op_norm(est.hat - sigma), {}};
}

// E[(a^T X + e)^4] for a = 1/sqrt(s) on s coordinates with i.i.d. unit-variance
// X_i of kurtosis kx, and independent noise with variance ve and fourth moment me.
double response_fourth_moment(int s, double kx, double ve, double me) {
  const double sd = static_cast<double>(s);
  const double signal4 = kx / sd + 3.0 * (sd - 1.0) / sd;
  return signal4 + 6.0 * ve + me;
}

ErrorRecord regression_trial(const ExperimentSpec& spec, int d, int s, int n, int trial,
                             json& meta) {
  const Constants& c = spec.constants;
  const Vector theta = make_sparse_signal(d, s);
  const Stream base = trial_stream(spec, d, s, trial);
  Stream xs = base.split(channel::kCovariates);
  Stream es = base.split(channel::kNoise);
  const bool subg = spec.regime == Regime::subgaussian;

  Matrix x = subg ? sample_gaussian(Matrix::Identity(d, d), n, xs)
                  : sample_iid_t(n, d, 6.0, std::sqrt(2.0 / 3.0), xs);
  const Vector eps = sample_noise(spec.problem, spec.regime, n, es, spec.noise_reading);
  const Vector y = x * theta + eps;

  const double kx = subg ? 3.0 : t_kurtosis(6.0);
  const double ve = std::pow(noise_std(spec.problem, spec.regime, spec.noise_reading), 2);
  const double me = noise_fourth_moment(spec.problem, spec.regime, spec.noise_reading);

  RegressionParams p;
  p.delta = c.delta_reg;
  p.covariate.sigma = 1.0;
  p.covariate.moment_M = kx;
  p.covariate.c1 = c.c1_x;
  p.covariate.c2 = c.c2_x;
  p.covariate.c3 = c.c3_x;
  p.covariate.c4 = c.c4_x;
  p.covariate.c5 = c.c5_x;
  p.sigma_y = std::sqrt(1.0 + ve);
  p.moment_y = response_fourth_moment(s, kx, ve, me);
  p.c1_y = c.c1_y;
  p.c3_y = c.c3_y;
  p.c4_y = c.c4_y;
  p.c6 = c.c6;
  p.c7 = c.c7;
  p.c8 = c.c8;
  p.c8prime = c.c8prime;
  p.c9 = c.c9;
  p.c10 = c.c10;
  p.c11 = c.c11;
  p.c12 = c.c12;

  RegressionMode mode = RegressionMode::qccs;
  if (spec.problem == Problem::cs) mode = subg ? RegressionMode::cs_subg : RegressionMode::cs_heavy;
  const RegressionSettings st = select_regression_params(mode, spec.regime, n, d, p);
  const RegressionProblem prob = quantize_regression(mode, spec.regime, x, y, st,
                                                     base.split(kDitherSeedTag).key(),
                                                     spec.no_truncation);
  const RegressionResult res = run_regression(prob, st.lambda, solver_from(c));

  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  meta["lambda"] = st.lambda;
  meta["gamma_x"] = opt(st.gamma_x);
  meta["gamma_y"] = opt(st.gamma_y);
  meta["eta_x"] = spec.no_truncation ? json(nullptr) : opt(st.eta_x);
  meta["eta_y"] = spec.no_truncation ? json(nullptr) : opt(st.eta_y);
  meta["zeta"] = opt(st.zeta);
  meta["psd_repaired"] = res.diagnostics.psd_repaired;
  meta["iterations"] = res.diagnostics.solve.iterations;
  return {spec.problem, spec.regime, n, d, s, trial, Metric::l2, (res.theta_hat - theta).norm(), {}};
}

ErrorRecord mc_trial(const ExperimentSpec& spec, int d, int r, int n, int trial, json& meta) {
  const Constants& c = spec.constants;
  const Stream base = trial_stream(spec, d, r, trial);
  Stream sig = base.split(channel::kSignal);
  Stream pos = base.split(channel::kPositions);
  Stream es = base.split(channel::kNoise);

  const LowRankMatrix truth = make_lowrank(d, r, sig);
  std::vector<int> rows(n), cols(n);
  for (int k = 0; k < n; ++k) {
    rows[k] = static_cast<int>(pos.uniform() * d);
    cols[k] = static_cast<int>(pos.uniform() * d);
  }
  const Vector eps = sample_noise(Problem::mc, spec.regime, n, es, spec.noise_reading);
  Vector y(n);
  for (int k = 0; k < n; ++k) y[k] = truth.theta(rows[k], cols[k]) + eps[k];

  McParams p;
  p.regime = spec.regime;
  p.alpha_star = truth.theta.cwiseAbs().maxCoeff();
  p.delta = c.delta_mc;
  p.sigma = noise_std(Problem::mc, spec.regime, spec.noise_reading);
  p.moment_M = p.sigma * p.sigma;
  p.c13 = c.c13;
  p.c14 = c.c14;
  p.c15 = c.c15;
  p.c16 = c.c16;
  p.c17 = c.c17;
  McSettings st = select_mc_params(n, d, p);
  if (spec.no_truncation) st.eta.reset();

  const auto obs = quantize_observations(rows, cols, y, st.eta, st.gamma,
                                         Stream(base.split(kDitherSeedTag).key()));
  SolverConfig solver = solver_from(c);
  solver.rho = c.mc_rho_scale * default_mc_rho(d);
  const McRunResult res = run_completion(obs, d, McRunOptions{st, p, solver});

  meta = settings_json(st.eta, st.gamma, 0.0);
  meta.erase("zeta");
  meta["lambda"] = st.lambda;
  meta["alpha_star"] = p.alpha_star;
  meta["spikiness"] = truth.spikiness;
  meta["iterations"] = res.diagnostics.iterations;
  return {spec.problem, spec.regime, n, d, r, trial, Metric::frobenius,
          (res.theta_hat - truth.theta).norm(), {}};
}

int thread_count(const ExperimentSpec& spec) {
  if (spec.threads > 0) return spec.threads;
  if (const char* env = std::getenv("ONEBIT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

ErrorRecord run_trial(const ExperimentSpec& spec, int d, int s_or_r, int n, int trial) {
  json meta;
  ErrorRecord rec;
  switch (spec.problem) {
    case Problem::cov: rec = cov_trial(spec, d, s_or_r, n, trial, meta); break;
    case Problem::qccs:
    case Problem::cs: rec = regression_trial(spec, d, s_or_r, n, trial, meta); break;
    case Problem::mc: rec = mc_trial(spec, d, s_or_r, n, trial, meta); break;
  }
  json params;
  params["defaults"] = kDefaultsVersion;
  params["constants"] = spec.constants.to_map();
  params["no_truncation"] = spec.no_truncation;
  params["derived"] = std::move(meta);
  rec.params_json = params.dump();
  return rec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Item {
    int d, s, n, t;
  };
  std::vector<Item> items;
  for (int d : spec.d_list)
    for (int s : spec.s_or_r_list)
      for (int n : spec.n_list)
        for (int t = 0; t < spec.trials; ++t) items.push_back({d, s, n, t});

  std::vector<std::optional<ErrorRecord>> slots(items.size());
  std::vector<std::optional<GridFailure>> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const Item& it = items[i];
      try {
        slots[i] = run_trial(spec, it.d, it.s, it.n, it.t);
      } catch (const ConvergenceError& e) {
        errors[i] = GridFailure{it.d, it.s, it.n, it.t, true, e.what()};
      } catch (const std::exception& e) {
        errors[i] = GridFailure{it.d, it.s, it.n, it.t, false, e.what()};
      }
    }
  };
  const int nthreads = std::min<int>(thread_count(spec), static_cast<int>(items.size()));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult result;
  std::set<std::tuple<int, int, int>> failed;
  for (const auto& e : errors)
    if (e) {
      spdlog::error("{} {} d={} s|r={} n={} trial={}: {}", to_string(spec.problem),
                    to_string(spec.regime), e->d, e->s_or_r, e->n, e->trial, e->message);
      failed.insert({e->d, e->s_or_r, e->n});
      result.failures.push_back(*e);
    }
  for (std::size_t i = 0; i < items.size(); ++i)
    if (slots[i] && !failed.contains({items[i].d, items[i].s, items[i].n}))
      result.records.push_back(std::move(*slots[i]));
  return result;
}

// ---------------------------------------------------------------------------
// Statistics

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidInput("slope fit inputs differ in length");
  std::set<double> distinct(x.begin(), x.end());
  if (distinct.size() < 3) throw InvalidInput("slope fit needs at least 3 distinct n values");
  const std::size_t m = x.size();
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidInput("log-log fit needs positive values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ssres = syy - fit.slope * sxy;
  fit.r2 = syy > 0.0 ? 1.0 - ssres / syy : 1.0;
  return fit;
}

std::map<int, double> mean_curve(const std::vector<ErrorRecord>& records, CurveKey key) {
  std::map<int, std::pair<double, int>> acc;
  for (const auto& r : records)
    if (r.d == key.d && r.s_or_r == key.s_or_r) {
      auto& [sum, count] = acc[r.n];
      sum += r.value;
      count += 1;
    }
  std::map<int, double> out;
  for (const auto& [n, sc] : acc) out[n] = sc.first / sc.second;
  return out;
}

SlopeFit fit_slope(const std::vector<ErrorRecord>& records, CurveKey key) {
  const auto curve = mean_curve(records, key);
  std::vector<double> x, y;
  for (const auto& [n, v] : curve) {
    x.push_back(n);
    y.push_back(v);
  }
  return fit_loglog(x, y);
}

std::vector<SummaryRow> summarize(const std::vector<ErrorRecord>& records) {
  std::map<std::tuple<int, int, int>, std::vector<const ErrorRecord*>> groups;
  for (const auto& r : records) groups[{r.d, r.s_or_r, r.n}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, recs] : groups) {
    const auto& first = *recs.front();
    const double m = static_cast<double>(recs.size());
    double sum = 0.0, sq = 0.0;
    for (const auto* r : recs) {
      sum += r->value;
      sq += r->value * r->value;
    }
    const double mean = sum / m;
    double var = 0.0;
    for (const auto* r : recs) var += (r->value - mean) * (r->value - mean);
    const double se = recs.size() > 1 ? std::sqrt(var / (m - 1.0) / m) : 0.0;
    const double d2 = static_cast<double>(first.d) * first.d;
    out.push_back({first.problem, first.regime, first.d, first.s_or_r, first.n, first.metric,
                   static_cast<int>(recs.size()), mean, se, sq / m / d2});
  }
  return out;
}

double reference_rate(Problem problem, Regime regime, double n) {
  const bool subg = regime == Regime::subgaussian;
  switch (problem) {
    case Problem::cov:
    case Problem::qccs: return subg ? std::log(n) / std::sqrt(n) : std::pow(n, -0.25);
    case Problem::cs: return subg ? std::sqrt(std::log(n) / n) : std::pow(n, -1.0 / 3.0);
    case Problem::mc: return subg ? std::sqrt(std::log(n) / n) : std::pow(n, -0.25);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::string results_csv(const std::vector<ErrorRecord>& records) {
  std::string out = "problem,regime,n,d,s_or_r,trial,metric,value,params_json\n";
  for (const auto& r : records)
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.problem), to_string(r.regime), r.n,
                       r.d, r.s_or_r, r.trial, to_string(r.metric), num(r.value),
                       csv_quote(r.params_json));
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "problem,regime,d,s_or_r,n,metric,trials,mean,std_error,mean_sq_over_d2\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(r.problem), to_string(r.regime),
                       r.d, r.s_or_r, r.n, to_string(r.metric), r.trials, num(r.mean),
                       num(r.std_error), num(r.mean_sq_over_d2));
  return out;
}

std::string plot_script(const ExperimentSpec& spec) {
  const bool subg = spec.regime == Regime::subgaussian;
  std::string rate;
  switch (spec.problem) {
    case Problem::cov:
    case Problem::qccs: rate = subg ? "math.log(n) / math.sqrt(n)" : "n ** -0.25"; break;
    case Problem::cs: rate = subg ? "math.sqrt(math.log(n) / n)" : "n ** (-1.0 / 3.0)"; break;
    case Problem::mc: rate = subg ? "math.sqrt(math.log(n) / n)" : "n ** -0.25"; break;
  }
  const char* label = spec.problem == Problem::mc ? "r" : "s";
  return fmt::format(
      R"py(#!/usr/bin/env python3
# Log-log error curves for {problem} / {regime}; reads summary.csv next to this file.
import csv
import math
import os
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
curves = defaultdict(list)
with open(os.path.join(here, "summary.csv"), newline="") as f:
    for row in csv.DictReader(f):
        curves[(int(row["d"]), int(row["s_or_r"]))].append((int(row["n"]), float(row["mean"])))


def rate(n):
    return {rate}


fig, ax = plt.subplots(figsize=(5, 4))
anchor = None
for (d, k), pts in sorted(curves.items()):
    pts.sort()
    ns = [p[0] for p in pts]
    ax.loglog(ns, [p[1] for p in pts], marker="o", label="d={{}}, {label}={{}}".format(d, k))
    if anchor is None:
        anchor = (ns, pts[0][1] / rate(ns[0]))
if anchor is not None:
    ns, scale = anchor
    ax.loglog(ns, [scale * rate(n) for n in ns], "k--", label="reference rate")
ax.set_xlabel("n")
ax.set_ylabel("{metric}")
ax.set_title("{problem} ({regime})")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(here, sys.argv[1] if len(sys.argv) > 1 else "curves.png"), dpi=150)
)py",
      fmt::arg("problem", to_string(spec.problem)), fmt::arg("regime", to_string(spec.regime)),
      fmt::arg("rate", rate), fmt::arg("label", label),
      fmt::arg("metric", to_string(metric_for(spec.problem))));
}

std::string metadata_json(const ExperimentSpec& spec, const ExperimentResult& result) {
  json j;
  j["problem"] = to_string(spec.problem);
  j["regime"] = to_string(spec.regime);
  j["d_list"] = spec.d_list;
  j["s_or_r_list"] = spec.s_or_r_list;
  j["n_list"] = spec.n_list;
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["no_truncation"] = spec.no_truncation;
  j["mvt_matlab_compat"] = spec.mvt_matlab_compat;
  j["noise_reading"] =
      spec.noise_reading == GaussianReading::variance ? "variance" : "standard_deviation";
  j["defaults_version"] = kDefaultsVersion;
  j["constants"] = spec.constants.to_map();
  j["records"] = result.records.size();
  json failures = json::array();
  for (const auto& f : result.failures)
    failures.push_back({{"d", f.d}, {"s_or_r", f.s_or_r}, {"n", f.n}, {"trial", f.trial},
                        {"convergence", f.convergence}, {"message", f.message}});
  j["failures"] = failures;
  const auto now = std::chrono::system_clock::now();
  j["generated_unix_time"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  return j.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void emit_outputs(const ExperimentResult& result, const ExperimentSpec& spec) {
  if (result.records.empty()) throw InvalidInput("no records to write");
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw IoError("cannot create " + spec.out_dir.string() + ": " + ec.message());
  write_atomic(spec.out_dir / "results.csv", results_csv(result.records));
  write_atomic(spec.out_dir / "summary.csv", summary_csv(summarize(result.records)));
  write_atomic(spec.out_dir / "plot.py", plot_script(spec));
  write_atomic(spec.out_dir / "metadata.json", metadata_json(spec, result));
}

}  // namespace onebit
