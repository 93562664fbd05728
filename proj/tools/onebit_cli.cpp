// onebit: run one experiment family over an (n, d, s|r) grid and write
// results.csv, summary.csv, plot.py and metadata.json.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <string>
#include <vector>

#include "onebit/error.hpp"
#include "onebit/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dithered 1-bit estimation experiments"};
  app.require_subcommand(1);

  std::string regime = "subgaussian";
  std::vector<int> d_list, s_list, r_list, n_list;
  int trials = 15;
  std::uint64_t seed = 1;
  bool no_truncation = false;
  bool paper_scale = false;
  bool mvt_compat = false;
  bool noise_sd = false;
  int threads = 0;
  std::string out = "out";
  std::vector<std::string> overrides;
  bool verbose = false;

  for (const char* name : {"cov", "qccs", "cs", "mc"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--regime", regime, "subgaussian or heavytailed")
        ->check(CLI::IsMember({"subgaussian", "heavytailed"}));
    sub->add_option("--d", d_list, "dimensions")->delimiter(',');
    if (std::string(name) == "mc")
      sub->add_option("--r", r_list, "ranks")->delimiter(',');
    else
      sub->add_option("--s", s_list, "sparsity levels")->delimiter(',');
    sub->add_option("--n-list", n_list, "sample sizes, increasing")->delimiter(',');
    sub->add_option("--trials", trials, "trials per grid point")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "master seed");
    sub->add_flag("--no-truncation", no_truncation, "skip the truncation step");
    sub->add_flag("--paper-scale", paper_scale, "use the published dimensions");
    sub->add_flag("--mvt-matlab-compat", mvt_compat, "heavy covariance data without rescaling");
    sub->add_flag("--noise-sd", noise_sd,
                  "read the second Gaussian noise argument as a standard deviation");
    sub->add_option("--threads", threads, "worker threads (default: ONEBIT_THREADS or all cores)");
    sub->add_option("--set", overrides, "override a constant, name=value")->take_all();
    sub->add_option("--out", out, "output directory");
    sub->add_flag("-v,--verbose", verbose, "debug logging");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  spdlog::set_default_logger(spdlog::stderr_color_mt("onebit"));
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    const onebit::Problem problem = onebit::parse_problem(app.get_subcommands().front()->get_name());
    const onebit::Regime reg = onebit::parse_regime(regime);
    onebit::ExperimentSpec spec =
        paper_scale ? onebit::paper_scale_spec(problem, reg) : onebit::default_spec(problem, reg);
    if (!d_list.empty()) spec.d_list = d_list;
    if (problem == onebit::Problem::mc && !r_list.empty()) spec.s_or_r_list = r_list;
    if (problem != onebit::Problem::mc && !s_list.empty()) spec.s_or_r_list = s_list;
    if (!n_list.empty()) spec.n_list = n_list;
    spec.trials = trials;
    spec.seed = seed;
    spec.no_truncation = no_truncation;
    spec.mvt_matlab_compat = mvt_compat;
    spec.noise_reading =
        noise_sd ? onebit::GaussianReading::standard_deviation : onebit::GaussianReading::variance;
    spec.threads = threads;
    spec.out_dir = out;
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw onebit::InvalidParameter("--set expects name=value");
      std::size_t used = 0;
      const std::string value = kv.substr(eq + 1);
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size())
        throw onebit::InvalidParameter("bad value in --set " + kv);
      spec.constants.set(kv.substr(0, eq), v);
    }
    spec.validate();

    const onebit::ExperimentResult result = onebit::run_experiment(spec);
    if (result.records.empty()) {
      spdlog::error("every grid point failed; nothing written");
    } else {
      onebit::emit_outputs(result, spec);
      std::printf("wrote %zu records to %s\n", result.records.size(), spec.out_dir.c_str());
      const auto summary = onebit::summarize(result.records);
      for (int d : spec.d_list)
        for (int k : spec.s_or_r_list) {
          try {
            const auto fit = onebit::fit_slope(result.records, {d, k});
            std::printf("d=%d %s=%d slope=%.4f r2=%.4f\n", d,
                        problem == onebit::Problem::mc ? "r" : "s", k, fit.slope, fit.r2);
          } catch (const onebit::InvalidInput&) {
          }
        }
    }
    for (const auto& f : result.failures)
      if (f.convergence) return kExitConvergence;
    return result.failures.empty() ? 0 : 1;
  } catch (const onebit::IoError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const onebit::Error& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  }
}
