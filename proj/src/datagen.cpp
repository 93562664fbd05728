#include "onebit/datagen.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

const char* to_string(Problem p) noexcept {
  switch (p) {
    case Problem::cov: return "cov";
    case Problem::qccs: return "qccs";
    case Problem::cs: return "cs";
    case Problem::mc: return "mc";
  }
  return "?";
}

const char* to_string(Regime r) noexcept {
  return r == Regime::subgaussian ? "subgaussian" : "heavytailed";
}

Problem parse_problem(const std::string& s) {
  if (s == "cov") return Problem::cov;
  if (s == "qccs") return Problem::qccs;
  if (s == "cs") return Problem::cs;
  if (s == "mc") return Problem::mc;
  throw InvalidParameter("unknown problem '" + s + "'");
}

Regime parse_regime(const std::string& s) {
  if (s == "subgaussian") return Regime::subgaussian;
  if (s == "heavytailed") return Regime::heavytailed;
  throw InvalidParameter("unknown regime '" + s + "'");
}

Matrix make_sparse_cov(int d, int s) {
  if (s < 2) throw InvalidParameter("sparse covariance needs s >= 2");
  if (3 * s > d) throw InvalidParameter("sparse covariance needs 3s <= d");
  Matrix block = Matrix::Constant(s, s, 0.03);
  block.diagonal().setOnes();
  block(0, 1) = block(1, 0) = 0.99 - (s - 2) * 0.03;

  Matrix sigma = Matrix::Identity(d, d);
  for (int b = 0; b < 3; ++b) sigma.block(b * s, b * s, s, s) = block;
  // Block diagonal: the operator norm is the largest block eigenvalue.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
  const double top = std::max(1.0, eig.eigenvalues().maxCoeff());
  return sigma / top;
}

Matrix covariance_factor(const Matrix& sigma) {
  require_symmetric(sigma, "covariance");
  require_finite(sigma, "covariance");
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition of covariance failed");
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
    throw NumericError("covariance is not positive semi-definite");
  return eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

namespace {

Matrix standard_normal_rows(int n, Eigen::Index d, Stream& rng) {
  Matrix z(n, d);
  for (int k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < d; ++i) z(k, i) = rng.normal();
  return z;
}

}  // namespace

Matrix sample_gaussian(const Matrix& sigma, int n, Stream& rng) {
  if (n < 0) throw InvalidParameter("sample count must be nonnegative");
  const Matrix factor = covariance_factor(sigma);
  return standard_normal_rows(n, sigma.rows(), rng) * factor.transpose();
}

Matrix sample_mvt(const Matrix& sigma, double nu, int n, Stream& rng, bool normalize_cov) {
  if (!(nu > 0.0)) throw InvalidParameter("t degrees of freedom must be positive");
  if (normalize_cov && !(nu > 2.0))
    throw InvalidParameter("covariance normalization needs nu > 2");
  if (n < 0) throw InvalidParameter("sample count must be nonnegative");
  const Matrix factor = covariance_factor(sigma);
  const Eigen::Index d = sigma.rows();
  const double scale = normalize_cov ? std::sqrt((nu - 2.0) / nu) : 1.0;
  Matrix z(n, d);
  for (int k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) z(k, i) = rng.normal();
    const double w = rng.chi_square(nu);
    z.row(k) *= scale / std::sqrt(w / nu);
  }
  return z * factor.transpose();
}

Matrix sample_iid_t(int n, int d, double nu, double scale, Stream& rng) {
  if (n < 0 || d < 0) throw InvalidParameter("shape must be nonnegative");
  Matrix x(n, d);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < d; ++i) x(k, i) = scale * rng.student_t(nu);
  return x;
}

Vector make_sparse_signal(int d, int s) {
  if (s < 1 || s > d) throw InvalidParameter("sparse signal needs 1 <= s <= d");
  Vector theta = Vector::Zero(d);
  theta.head(s).setConstant(1.0 / std::sqrt(static_cast<double>(s)));
  return theta;
}

LowRankMatrix make_lowrank(int d, int r, Stream& rng) {
  if (r < 1 || r > d) throw InvalidParameter("low-rank matrix needs 1 <= r <= d");
  Matrix left(d, r), right(r, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < r; ++j) left(i, j) = rng.normal();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < d; ++j) right(i, j) = rng.normal();
  Matrix theta = left * right;
  theta /= theta.norm();
  const double spikiness = d * theta.cwiseAbs().maxCoeff() / theta.norm();
  return {std::move(theta), spikiness};
}

namespace {

double gaussian_sd(Problem problem, GaussianReading reading) {
  const double v = problem == Problem::mc ? 1.0 / 400.0 : std::sqrt(3.0 / 5.0);
  return reading == GaussianReading::variance ? std::sqrt(v) : v;
}

void require_noise_problem(Problem problem) {
  if (problem == Problem::cov) throw InvalidParameter("covariance problem has no noise law");
}

}  // namespace

Vector sample_noise(Problem problem, Regime regime, int n, Stream& rng, GaussianReading reading) {
  require_noise_problem(problem);
  if (n < 0) throw InvalidParameter("sample count must be nonnegative");
  Vector e(n);
  if (regime == Regime::subgaussian) {
    const double sd = gaussian_sd(problem, reading);
    for (int k = 0; k < n; ++k) e[k] = sd * rng.normal();
  } else if (problem == Problem::mc) {
    const double scale = 1.0 / (250.0 * std::sqrt(3.0));
    for (int k = 0; k < n; ++k) e[k] = scale * rng.student_t(3.0);
  } else {
    for (int k = 0; k < n; ++k) e[k] = 0.3 * rng.student_t(6.0);
  }
  return e;
}

double noise_std(Problem problem, Regime regime, GaussianReading reading) {
  require_noise_problem(problem);
  if (regime == Regime::subgaussian) return gaussian_sd(problem, reading);
  if (problem == Problem::mc) return 1.0 / 250.0;
  return 0.3 * std::sqrt(6.0 / 4.0);
}

double t_kurtosis(double nu) {
  if (!(nu > 4.0)) throw InvalidParameter("t fourth moment needs nu > 4");
  return 3.0 + 6.0 / (nu - 4.0);
}

double noise_fourth_moment(Problem problem, Regime regime, GaussianReading reading) {
  const double sd = noise_std(problem, regime, reading);
  if (regime == Regime::subgaussian) return 3.0 * std::pow(sd, 4);
  // t(3) has no finite fourth moment; only the variance bound is meaningful there.
  if (problem == Problem::mc) return std::numeric_limits<double>::infinity();
  return t_kurtosis(6.0) * std::pow(sd, 4);
}

}  // namespace onebit
