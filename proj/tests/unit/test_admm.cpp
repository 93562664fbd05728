#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "onebit/admm.hpp"
#include "onebit/error.hpp"
#include "onebit/rng.hpp"

using namespace onebit;

namespace {

Vector random_vector(int d, Stream& s, double scale = 1.0) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = scale * s.normal();
  return v;
}

Matrix random_matrix(int r, int c, Stream& s) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = s.normal();
  return m;
}

Matrix random_pd(int d, Stream& s) {
  const Matrix a = random_matrix(d, d, s);
  return a * a.transpose() / d + 0.5 * Matrix::Identity(d, d);
}

// Full observation, one draw per cell: the data term is (1/2n)||theta - J1||_F^2.
Matrix nuclear_prox_oracle(const Matrix& j1, double lambda) {
  return svd_soft_threshold(j1, lambda * static_cast<double>(j1.size()));
}

}  // namespace

TEST_CASE("solver config validation") {
  CHECK_NOTHROW(SolverConfig{}.validate());
  CHECK_THROWS_AS((SolverConfig{0.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((SolverConfig{1.0, 0.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((SolverConfig{1.0, 1e-7, 1e-7, 0}.validate()), InvalidParameter);
}

TEST_CASE("lasso examples") {
  Vector b(5);
  b << 1, 0.2, -1, 0, 0.5;
  const auto sol = admm_lasso(Matrix::Identity(5, 5), b, 0.3, {});
  Vector want(5);
  want << 0.7, 0, -0.7, 0, 0.2;
  CHECK((sol.theta - want).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(sol.diagnostics.converged);
  CHECK(sol.diagnostics.primal_residual_history.size() == sol.diagnostics.iterations);
  CHECK(sol.diagnostics.dual_residual_history.size() == sol.diagnostics.iterations);

  const auto zero = admm_lasso(Matrix::Identity(5, 5), Vector::Zero(5), 0.3, {});
  CHECK(zero.theta.isZero());
  CHECK(zero.diagnostics.iterations <= 2);

  Matrix q(2, 2);
  q << 1, 0, 0, 2;
  const auto ls = admm_lasso(q, Eigen::Vector2d(1, 2), 0.0, {});
  CHECK((ls.theta - Eigen::Vector2d(1, 1)).norm() < 1e-6);
}

TEST_CASE("lasso with identity quadratic matches soft thresholding") {
  Stream s(1);
  for (int t = 0; t < 100; ++t) {
    const Vector b = random_vector(20, s);
    const double lambda = s.uniform(0.05, 1.5);
    const auto sol = admm_lasso(Matrix::Identity(20, 20), b, lambda, {});
    CHECK((sol.theta - soft_threshold(b, lambda)).cwiseAbs().maxCoeff() < 1e-6);
  }
  const Vector b = random_vector(8, s);
  const auto full = admm_lasso(Matrix::Identity(8, 8), b, b.cwiseAbs().maxCoeff(), {});
  CHECK(full.theta.isZero());
}

TEST_CASE("lasso KKT conditions, objective and rho invariance") {
  Stream s(2);
  for (int t = 0; t < 20; ++t) {
    const int d = 6;
    const Matrix q = random_pd(d, s);
    const Vector b = random_vector(d, s);
    const double lambda = s.uniform(0.05, 0.5);
    SolverConfig cfg;
    cfg.tol_primal = cfg.tol_dual = 1e-9;
    const auto sol = admm_lasso(q, b, lambda, cfg);
    const Vector g = q * sol.theta - b;
    for (int i = 0; i < d; ++i) {
      if (sol.theta[i] == 0.0)
        CHECK(std::abs(g[i]) <= lambda + 1e-6);
      else
        CHECK(std::abs(g[i] + lambda * (sol.theta[i] > 0 ? 1.0 : -1.0)) <= 1e-6);
    }
    const double f = lasso_objective(q, b, lambda, sol.theta);
    CHECK(f <= lasso_objective(q, b, lambda, Vector::Zero(d)) + 1e-12);
    for (int k = 0; k < 50; ++k)
      CHECK(f <= lasso_objective(q, b, lambda, sol.theta + 0.01 * random_vector(d, s)) + 1e-12);

    for (double rho : {0.1, 10.0}) {
      SolverConfig c2 = cfg;
      c2.rho = rho;
      c2.max_iter = 20000;
      CHECK((admm_lasso(q, b, lambda, c2).theta - sol.theta).norm() < 10 * 1e-7);
    }
  }
}

TEST_CASE("lasso approaches least squares as lambda vanishes") {
  Stream s(3);
  const Matrix q = random_pd(5, s);
  const Vector b = random_vector(5, s);
  SolverConfig cfg;
  cfg.tol_primal = cfg.tol_dual = 1e-10;
  cfg.max_iter = 20000;
  const auto sol = admm_lasso(q, b, 1e-9, cfg);
  CHECK((sol.theta - q.ldlt().solve(b)).norm() < 1e-6);
}

TEST_CASE("lasso warm start agrees with cold start") {
  Stream s(4);
  const Matrix q = random_pd(6, s);
  const Vector b = random_vector(6, s);
  const SolverConfig cfg;
  const auto cold = admm_lasso(q, b, 0.2, cfg);
  AdmmState warm{random_vector(6, s), random_vector(6, s), random_vector(6, s)};
  const auto hot = admm_lasso(q, b, 0.2, cfg, warm);
  CHECK((cold.theta - hot.theta).norm() < 10 * cfg.tol_primal);
  AdmmState bad{Vector::Zero(3), Vector::Zero(6), Vector::Zero(6)};
  CHECK_THROWS_AS(admm_lasso(q, b, 0.2, cfg, bad), InvalidInput);
}

TEST_CASE("lasso input errors and budget exhaustion") {
  Matrix q(2, 2);
  q << 1, 0, 0, -1;
  CHECK_THROWS_AS(admm_lasso(q, Vector::Zero(2), 0.1, {}), InvalidInput);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(admm_lasso(asym, Vector::Zero(2), 0.1, {}), InvalidInput);
  CHECK_THROWS_AS(admm_lasso(Matrix::Identity(2, 2), Vector::Zero(3), 0.1, {}), InvalidInput);
  CHECK_THROWS_AS(admm_lasso(Matrix::Identity(2, 2), Vector::Zero(2), -0.1, {}), InvalidParameter);

  Stream s(5);
  SolverConfig tight;
  tight.max_iter = 3;
  try {
    admm_lasso(random_pd(10, s), random_vector(10, s), 0.01, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.diagnostics().iterations == 3);
    CHECK_FALSE(e.diagnostics().converged);
    CHECK(e.diagnostics().primal_residual_history.size() == 3);
    CHECK(e.last_iterate().rows() == 10);
  }
}

TEST_CASE("completion examples") {
  const int d = 6;
  const Matrix zero = Matrix::Zero(d, d);
  const auto empty = admm_mc(zero, zero, 0.0, 1.0, 0.1, 1.0, {});
  CHECK(empty.theta.isZero());

  Stream s(6);
  const double gamma = 1.0;
  Matrix j1(d, d);
  for (Eigen::Index i = 0; i < j1.size(); ++i) j1.data()[i] = s.uniform() < 0.5 ? -gamma : gamma;
  const Matrix ones = Matrix::Ones(d, d);
  SolverConfig cfg;
  cfg.rho = 1.0 / (d * d);
  const auto sol = admm_mc(j1, ones, d * d, 1.5 * gamma, 0.0, gamma, cfg);
  CHECK((sol.theta - j1).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("completion with full observation matches the nuclear prox") {
  Stream s(7);
  const int d = 10;
  Matrix j1 = random_matrix(d, d, s);
  const Matrix ones = Matrix::Ones(d, d);
  const double lambda = 0.01;
  const Matrix want = nuclear_prox_oracle(j1, lambda);
  CHECK(want.norm() > 0.0);
  Matrix first;
  for (double rho : {0.1, 1.0, 10.0}) {
    SolverConfig cfg;
    cfg.rho = rho;
    cfg.max_iter = 50000;
    const auto sol = admm_mc(j1, ones, d * d, 1e6, lambda, 1.0, cfg);
    CHECK((sol.theta - want).cwiseAbs().maxCoeff() < 1e-4);
    if (first.size() == 0)
      first = sol.theta;
    else
      CHECK((sol.theta - first).norm() < 10 * cfg.tol_primal);
  }
}

TEST_CASE("completion feasibility, unobserved cells and lambda monotonicity") {
  Stream s(8);
  const int d = 8;
  Matrix j1 = Matrix::Zero(d, d), j2 = Matrix::Zero(d, d);
  for (int k = 0; k < 120; ++k) {
    const int i = static_cast<int>(s.uniform() * d), j = static_cast<int>(s.uniform() * d);
    j1(i, j) += s.uniform() < 0.6 ? 2.0 : -2.0;
    j2(i, j) += 1.0;
  }
  const double n = j2.sum();
  SolverConfig cfg;
  cfg.rho = 1.0 / (d * d);
  cfg.max_iter = 50000;

  const auto free = admm_mc(j1, j2, n, 0.5, 0.0, 2.0, cfg);
  CHECK(free.theta.cwiseAbs().maxCoeff() <= 0.5 + 1e-8);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (j2(i, j) == 0.0) CHECK(std::abs(free.theta(i, j)) <= 1e-6);

  double prev = 1e300;
  for (double lambda : {0.0, 0.001, 0.005, 0.02, 0.1}) {
    const auto sol = admm_mc(j1, j2, n, 0.5, lambda, 2.0, cfg);
    const double nuc = nuclear_norm(sol.theta);
    CHECK(nuc <= prev + 1e-5);
    prev = nuc;
    const double f = completion_objective(j1, j2, n, lambda, sol.theta);
    CHECK(f <= completion_objective(j1, j2, n, lambda, Matrix::Zero(d, d)) + 1e-6);
    const Matrix avg = (j1.array() / j2.array().max(1.0)).matrix();
    CHECK(f <= completion_objective(j1, j2, n, lambda, clamp_max_norm(avg, 0.5)) + 1e-6);
  }
  const auto huge = admm_mc(j1, j2, n, 0.5, 1e3, 2.0, cfg);
  CHECK(huge.theta.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("completion warm start and input errors") {
  Stream s(9);
  const int d = 10;
  const Matrix j1 = random_matrix(d, d, s);
  const Matrix ones = Matrix::Ones(d, d);
  SolverConfig cfg;
  cfg.max_iter = 50000;
  const auto cold = admm_mc(j1, ones, d * d, 1e6, 0.01, 1.0, cfg);
  const Matrix w = random_matrix(d, d, s);
  const auto hot = admm_mc(j1, ones, d * d, 1e6, 0.01, 1.0, cfg, AdmmState{w, w, Matrix::Zero(d, d)});
  // The data term carries weight 1/n, so residuals below tol pin the iterate to about n * tol.
  CHECK((cold.theta - hot.theta).norm() < 10 * cfg.tol_primal * d * d);
  CHECK((cold.theta - svd_soft_threshold(j1, 0.01 * d * d)).norm() < 1e-4);

  CHECK_THROWS_AS(admm_mc(j1, Matrix::Ones(3, 3), 9, 1.0, 0.1, 1.0, cfg), InvalidInput);
  CHECK_THROWS_AS(admm_mc(j1, -ones, -100, 1.0, 0.1, 1.0, cfg), InvalidInput);
  CHECK_THROWS_AS(admm_mc(j1, ones, 50, 1.0, 0.1, 1.0, cfg), InvalidInput);
  CHECK_THROWS_AS(admm_mc(j1, ones, 100, 0.0, 0.1, 1.0, cfg), InvalidParameter);
}
