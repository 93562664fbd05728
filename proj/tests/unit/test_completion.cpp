#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "onebit/completion.hpp"
#include "onebit/datagen.hpp"
#include "onebit/error.hpp"

using namespace onebit;

TEST_CASE("aggregation examples") {
  const std::vector<McObservation> obs{{0, 0, 1.0}, {0, 0, -1.0}, {1, 1, 1.0}};
  const McAggregate agg = aggregate_observations(obs, 2.0, 3);
  CHECK(agg.j1(0, 0) == 0.0);
  CHECK(agg.j1(1, 1) == 2.0);
  CHECK(agg.j2(0, 0) == 2.0);
  CHECK(agg.j2(1, 1) == 1.0);
  CHECK(agg.j2.sum() == 3.0);
  CHECK(agg.n == 3.0);
  CHECK(agg.j1.cwiseAbs().sum() == 2.0);

  const McAggregate none = aggregate_observations({}, 1.0, 4);
  CHECK(none.j1.isZero());
  CHECK(none.j2.isZero());
  CHECK(none.n == 0.0);

  const std::vector<McObservation> same(25, {2, 1, 1.0});
  CHECK(aggregate_observations(same, 1.0, 3).j1(2, 1) == 25.0);

  const std::vector<McObservation> bad_index{{3, 0, 1.0}};
  CHECK_THROWS_AS(aggregate_observations(bad_index, 1.0, 3), InvalidInput);
  const std::vector<McObservation> negative{{0, -1, 1.0}};
  CHECK_THROWS_AS(aggregate_observations(negative, 1.0, 3), InvalidInput);
  const std::vector<McObservation> bad_bit{{0, 0, 0.0}};
  CHECK_THROWS_AS(aggregate_observations(bad_bit, 1.0, 3), InvalidInput);
}

TEST_CASE("aggregate bounds hold on random observations") {
  Stream rng(1);
  std::vector<McObservation> obs;
  for (int k = 0; k < 500; ++k)
    obs.push_back({static_cast<int>(rng.uniform() * 7), static_cast<int>(rng.uniform() * 7),
                   rng.uniform() < 0.5 ? -1.0 : 1.0});
  const McAggregate agg = aggregate_observations(obs, 1.5, 7);
  CHECK(agg.j2.sum() == 500.0);
  CHECK(agg.j2.minCoeff() >= 0.0);
  CHECK((agg.j1.cwiseAbs().array() <= 1.5 * agg.j2.array()).all());
}

TEST_CASE("parameter selection formulas") {
  McParams sub;
  sub.c13 = 1.0;
  sub.c14 = 3.0;
  sub.alpha_star = 0.5;
  sub.sigma = 1.0;
  sub.delta = 2.0;
  const McSettings s = select_mc_params(8000, 100, sub);
  CHECK(s.lambda == doctest::Approx(0.0305159).epsilon(1e-5));
  CHECK(s.gamma == doctest::Approx(std::sqrt(std::log(8000.0 / (2.0 * 100.0 * std::log(200.0))))));
  CHECK_FALSE(s.eta.has_value());
  CHECK(s.gamma_margin == doctest::Approx(s.gamma - 2.0));

  // gamma = 1 when n = e delta d log 2d; delta absorbs the rounding of n.
  McParams unit;
  unit.c13 = 1.0;
  unit.delta = 5000.0 / (std::exp(1.0) * 50.0 * std::log(100.0));
  CHECK(select_mc_params(5000, 50, unit).gamma == doctest::Approx(1.0));

  McParams heavy;
  heavy.regime = Regime::heavytailed;
  heavy.c15 = 1.0;
  heavy.c16 = 2.0;
  heavy.delta = 5000.0 / (50.0 * std::log(50.0));
  const McSettings h = select_mc_params(5000, 50, heavy);
  CHECK(*h.eta == doctest::Approx(1.0));
  CHECK(h.gamma == doctest::Approx(2.0));

  heavy.c16 = 1.0;
  CHECK_THROWS_AS(select_mc_params(5000, 50, heavy), InvalidParameter);
  CHECK_THROWS_AS(select_mc_params(100, 50, sub), InfeasibleConfiguration);
  McParams bad_alpha;
  bad_alpha.alpha_star = 0.0;
  CHECK_THROWS_AS(select_mc_params(8000, 100, bad_alpha), InvalidParameter);
}

TEST_CASE("full observation with no penalty reproduces the cell averages") {
  const int d = 6;
  Stream rng(2);
  std::vector<McObservation> obs;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < 3; ++k) obs.push_back({i, j, rng.uniform() < 0.7 ? 1.0 : -1.0});
  McRunOptions opts;
  opts.settings = McSettings{1.0, std::nullopt, 0.0, 0.0};
  opts.params.alpha_star = 2.0;
  const McRunResult res = run_completion(obs, d, opts);
  const McAggregate agg = aggregate_observations(obs, 1.0, d);
  const Matrix avg = (agg.j1.array() / agg.j2.array()).matrix();
  CHECK((res.theta_hat - avg).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(res.diagnostics.converged);
}

TEST_CASE("estimator respects the max-norm bound and the penalty") {
  const int d = 10;
  Stream rng(3);
  std::vector<McObservation> obs;
  for (int k = 0; k < 400; ++k)
    obs.push_back({static_cast<int>(rng.uniform() * d), static_cast<int>(rng.uniform() * d),
                   rng.uniform() < 0.6 ? 1.0 : -1.0});
  McRunOptions opts;
  opts.params.alpha_star = 0.3;
  double prev = 1e300;
  for (double lambda : {0.0, 1e-3, 1e-2, 1e-1}) {
    opts.settings = McSettings{2.0, std::nullopt, lambda, 0.0};
    const McRunResult res = run_completion(obs, d, opts);
    CHECK(res.theta_hat.cwiseAbs().maxCoeff() <= 0.3 + 1e-8);
    const double nuc = nuclear_norm(res.theta_hat);
    CHECK(nuc <= prev + 1e-5);
    prev = nuc;
  }
  opts.settings = McSettings{2.0, std::nullopt, 1e3, 0.0};
  CHECK(run_completion(obs, d, opts).theta_hat.cwiseAbs().maxCoeff() < 1e-6);

  McAggregate frac = aggregate_observations(obs, 2.0, d);
  frac.j2(0, 0) += 0.5;
  frac.n += 0.5;
  CHECK_THROWS_AS(estimate_completion(frac, 1.0, 0.1, 2.0, {}), InvalidInput);
}

TEST_CASE("low-rank recovery from one-bit observations") {
  const int d = 30, r = 1, n = 60000;
  Stream rng(4);
  const LowRankMatrix lr = make_lowrank(d, r, rng);
  // Entries of order one make this a well-conditioned instance.
  const Matrix theta = lr.theta * d;
  std::vector<int> rows(n), cols(n);
  Vector y(n);
  for (int k = 0; k < n; ++k) {
    rows[k] = static_cast<int>(rng.uniform() * d);
    cols[k] = static_cast<int>(rng.uniform() * d);
    y[k] = theta(rows[k], cols[k]) + 0.1 * rng.normal();
  }
  const double alpha = theta.cwiseAbs().maxCoeff();
  McRunOptions opts;
  opts.params.alpha_star = alpha;
  opts.params.sigma = 0.1;
  opts.params.c13 = 1.0;
  // Puts the singular value threshold lambda d^2 near the spectral norm of the dither noise.
  opts.params.c14 = 0.5;
  const McSettings set = select_mc_params(n, d, opts.params);
  CHECK(set.gamma_margin > 0.0);
  const auto obs = quantize_observations(rows, cols, y, std::nullopt, set.gamma, Stream(9));
  const McRunResult res = run_completion(obs, d, opts);
  CHECK(res.settings.gamma == set.gamma);
  CHECK(res.settings.lambda == set.lambda);
  CHECK(res.theta_hat.cwiseAbs().maxCoeff() <= alpha + 1e-8);
  CHECK((res.theta_hat - theta).norm() / theta.norm() < 0.5);

  const auto again = quantize_observations(rows, cols, y, std::nullopt, set.gamma, Stream(9));
  for (int k = 0; k < 100; ++k) CHECK(again[k].y_bit == obs[k].y_bit);
  const std::vector<int> short_rows(3, 0);
  CHECK_THROWS_AS(quantize_observations(short_rows, cols, y, std::nullopt, 1.0, Stream(9)), InvalidInput);
}

TEST_CASE("default penalty scale") { CHECK(default_mc_rho(100) == doctest::Approx(1e-4)); }
