#pragma once

// Synthetic data for the four experiment families.

#include <cstdint>
#include <string>

#include "onebit/linalg.hpp"
#include "onebit/rng.hpp"

namespace onebit {

enum class Problem { cov, qccs, cs, mc };
enum class Regime { subgaussian, heavytailed };

const char* to_string(Problem p) noexcept;
const char* to_string(Regime r) noexcept;
Problem parse_problem(const std::string& s);
Regime parse_regime(const std::string& s);

/// Block-structured sparse covariance with unit operator norm.
///
/// Builds diag(B, B, B, I_{d-3s}) where B is s x s with unit diagonal,
/// B(0,1) = B(1,0) = 0.99 - 0.03 (s - 2) and 0.03 elsewhere, then divides by
/// its operator norm. Requires s >= 2 and 3s <= d.
Matrix make_sparse_cov(int d, int s);

/// Lower-triangular (or symmetric square-root) factor L with L L^T = sigma.
/// Falls back to an eigen square root for singular PSD input.
Matrix covariance_factor(const Matrix& sigma);

/// n i.i.d. rows from N(0, sigma), drawn row by row.
Matrix sample_gaussian(const Matrix& sigma, int n, Stream& rng);

/// n i.i.d. multivariate-t rows: G / sqrt(W / nu) with G ~ N(0, sigma) and
/// W ~ chi^2_nu. With `normalize_cov` the rows are further scaled by
/// sqrt((nu - 2) / nu) so their covariance is sigma; without it the output
/// matches Matlab's mvtrnd (covariance sigma * nu / (nu - 2)).
Matrix sample_mvt(const Matrix& sigma, double nu, int n, Stream& rng, bool normalize_cov = true);

/// n x d matrix of i.i.d. scale * t(nu) entries.
Matrix sample_iid_t(int n, int d, double nu, double scale, Stream& rng);

/// First s entries 1/sqrt(s), the rest 0.
Vector make_sparse_signal(int d, int s);

struct LowRankMatrix {
  Matrix theta;
  double spikiness = 0.0;  ///< d ||theta||_max / ||theta||_F
};

/// Theta_l Theta_r / ||Theta_l Theta_r||_F with i.i.d. N(0,1) factors of
/// shapes d x r and r x d.
LowRankMatrix make_lowrank(int d, int r, Stream& rng);

/// How to read the second argument of the paper-style N(0, v) noise laws.
enum class GaussianReading { variance, standard_deviation };

/// Noise laws of the experiments:
///   regression: N(0, sqrt(3/5)) or 0.3 t(6);
///   mc:         N(0, 1/400)     or (1/250) t(3) / sqrt(3).
Vector sample_noise(Problem problem, Regime regime, int n, Stream& rng,
                    GaussianReading reading = GaussianReading::variance);

/// Population standard deviation of the sample_noise law.
double noise_std(Problem problem, Regime regime,
                 GaussianReading reading = GaussianReading::variance);

/// Population fourth moment E[e^4] of the sample_noise law.
double noise_fourth_moment(Problem problem, Regime regime,
                           GaussianReading reading = GaussianReading::variance);

/// E[T^4] / (E[T^2])^2 for T ~ t(nu), nu > 4.
double t_kurtosis(double nu);

}  // namespace onebit
