#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "onebit/error.hpp"
#include "onebit/linalg.hpp"
#include "onebit/rng.hpp"

using namespace onebit;

namespace {

Matrix random_matrix(int r, int c, Stream& s) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = s.normal();
  return m;
}

Matrix random_symmetric(int d, Stream& s) { return symmetrize(random_matrix(d, d, s)); }

Matrix random_psd(int d, Stream& s) {
  const Matrix a = random_matrix(d, d, s);
  return a * a.transpose() / d;
}

}  // namespace

TEST_CASE("hard threshold examples") {
  CHECK(hard_threshold(0.5, 0.6) == 0.0);
  CHECK(hard_threshold(0.7, 0.6) == 0.7);
  CHECK(hard_threshold(-0.6, 0.6) == -0.6);
  CHECK_THROWS_AS(hard_threshold(1.0, -0.1), InvalidParameter);
  Matrix a(2, 2);
  a << 0.5, 0.7, -0.6, 0.1;
  Matrix want(2, 2);
  want << 0, 0.7, -0.6, 0;
  CHECK(hard_threshold(a, 0.6) == want);
  CHECK(hard_threshold(a, 0.0) == a);
}

TEST_CASE("hard threshold support is monotone in zeta") {
  Stream s(1);
  const Matrix a = random_matrix(5, 5, s);
  Eigen::Index prev = a.size() + 1;
  for (double z = 0.0; z < 3.0; z += 0.05) {
    const Eigen::Index nnz = (hard_threshold(a, z).array() != 0.0).count();
    CHECK(nnz <= prev);
    prev = nnz;
  }
}

TEST_CASE("soft threshold examples") {
  CHECK(soft_threshold(1.0, 0.3) == doctest::Approx(0.7));
  CHECK(soft_threshold(-0.2, 0.3) == 0.0);
  CHECK(soft_threshold(-1.0, 0.3) == doctest::Approx(-0.7));
  CHECK_THROWS_AS(soft_threshold(1.0, -1.0), InvalidParameter);
  Vector v(3);
  v << 1.0, -0.2, -1.0;
  CHECK(soft_threshold(v, 0.3).isApprox(Eigen::Vector3d(0.7, 0.0, -0.7)));
}

TEST_CASE("soft threshold is the l1 prox (grid search)") {
  Stream s(2);
  for (int t = 0; t < 200; ++t) {
    const double x = s.uniform(-3, 3), beta = s.uniform(0, 1.5);
    auto f = [&](double z) { return 0.5 * (z - x) * (z - x) + beta * std::abs(z); };
    double best = 1e300, arg = 0.0;
    for (double z = -4.0; z <= 4.0; z += 1e-4)
      if (f(z) < best) best = f(z), arg = z;
    CHECK(std::abs(soft_threshold(x, beta) - arg) < 2e-4);
    CHECK(f(soft_threshold(x, beta)) <= best + 1e-12);
  }
}

TEST_CASE("svd soft threshold examples") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(svd_soft_threshold(i2, 0.4).isApprox(0.6 * i2, 1e-12));
  Vector u(3), v(3);
  u << 1, 2, 2;
  v << 3, 0, 4;
  u /= u.norm();
  v /= v.norm();
  CHECK(svd_soft_threshold(u * v.transpose(), 1.5).norm() == 0.0);
  Matrix d(2, 2);
  d << 3, 0, 0, 1;
  Matrix want(2, 2);
  want << 1, 0, 0, 0;
  CHECK((svd_soft_threshold(d, 2.0) - want).norm() < 1e-12);
  Matrix bad = d;
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(svd_soft_threshold(bad, 1.0), NumericError);
}

TEST_CASE("svd soft threshold is the nuclear prox") {
  Stream s(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(5, 5, s);
    const double beta = s.uniform(0.1, 2.0);
    const Matrix z = svd_soft_threshold(a, beta);
    const Vector sa = singular_values(a);
    const Vector sz = singular_values(z);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(sz[i] - std::max(0.0, sa[i] - beta)) < 1e-10);
    auto f = [&](const Matrix& m) { return 0.5 * (m - a).squaredNorm() + beta * nuclear_norm(m); };
    const double fz = f(z);
    for (int k = 0; k < 200; ++k) {
      const double scale = k < 100 ? 1e-3 : 1e-1;
      CHECK(fz <= f(z + scale * random_matrix(5, 5, s)) + 1e-12);
    }
  }
}

TEST_CASE("positive part") {
  Matrix a(2, 2);
  a << 1, 0, 0, -2;
  Matrix want(2, 2);
  want << 1, 0, 0, 0;
  CHECK((positive_part(a) - want).norm() < 1e-14);
  CHECK((positive_part(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm() < 1e-14);
  Matrix b(2, 2);
  b << 0, 1, 1, 0;
  CHECK((positive_part(b) - Matrix::Constant(2, 2, 0.5)).norm() < 1e-14);
  Matrix asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(positive_part(asym), InvalidInput);

  Stream s(4);
  for (int t = 0; t < 100; ++t) {
    const Matrix star = random_psd(5, s);
    const Matrix hat = star + 0.5 * random_symmetric(5, s);
    const Matrix plus = positive_part(hat);
    CHECK(is_symmetric(plus));
    CHECK(min_eigenvalue(plus) >= -1e-10);
    CHECK(op_norm(plus - star) <= 2.0 * op_norm(hat - star) + 1e-12);
    // Frobenius projection onto the PSD cone.
    for (int k = 0; k < 20; ++k) {
      const Matrix other = positive_part(plus + 0.1 * random_symmetric(5, s));
      CHECK((plus - hat).norm() <= (other - hat).norm() + 1e-12);
    }
  }
}

TEST_CASE("clamp max norm") {
  Matrix a(1, 2);
  a << 2.0, -0.3;
  const Matrix c = clamp_max_norm(a, 1.0);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(0, 1) == -0.3);
  CHECK(clamp_max_norm(c, 1.0) == c);
  CHECK_THROWS_AS(clamp_max_norm(a, 0.0), InvalidParameter);

  Stream s(5);
  for (int t = 0; t < 100; ++t) {
    const Matrix x = 2.0 * random_matrix(4, 4, s), y = 2.0 * random_matrix(4, 4, s);
    const double alpha = s.uniform(0.1, 2.0);
    const Matrix px = clamp_max_norm(x, alpha), py = clamp_max_norm(y, alpha);
    CHECK(px.cwiseAbs().maxCoeff() <= alpha);
    CHECK((px - py).norm() <= (x - y).norm() + 1e-12);
    for (int k = 0; k < 20; ++k) {
      const Matrix feasible = clamp_max_norm(2.0 * random_matrix(4, 4, s), alpha);
      CHECK((px - x).norm() <= (feasible - x).norm() + 1e-12);
    }
  }
}

TEST_CASE("norms") {
  const Norms i3 = norms(Matrix::Identity(3, 3));
  CHECK(i3.op == doctest::Approx(1.0));
  CHECK(i3.frobenius == doctest::Approx(std::sqrt(3.0)));
  CHECK(i3.max == 1.0);
  CHECK(i3.nuclear == doctest::Approx(3.0));
  CHECK(i3.one_inf == 1.0);
  const Norms z = norms(Matrix::Zero(3, 3));
  CHECK(z.op == 0.0);
  CHECK(z.frobenius == 0.0);
  CHECK(z.nuclear == 0.0);
  Matrix d(2, 2);
  d << 3, 0, 0, 4;
  const Norms n = norms(d);
  CHECK(n.op == doctest::Approx(4.0));
  CHECK(n.frobenius == doctest::Approx(5.0));
  CHECK(n.nuclear == doctest::Approx(7.0));
  Matrix bad = d;
  bad(0, 0) = INFINITY;
  CHECK_THROWS_AS(norms(bad), NumericError);
}

TEST_CASE("symmetry checks") {
  Stream s(6);
  const Matrix a = random_symmetric(6, s);
  CHECK(is_symmetric(a));
  Matrix b = a;
  b(0, 1) += 1e-6;
  CHECK_FALSE(is_symmetric(b));
  CHECK_THROWS_AS(require_symmetric(b, "b"), InvalidInput);
  CHECK(is_symmetric(symmetrize(b)));
  CHECK(min_eigenvalue(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
}

TEST_CASE("decomposition accuracy at desk scale") {
  Stream s(7);
  const Matrix a = random_matrix(300, 300, s);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix rec = svd.matrixU() * svd.singularValues().asDiagonal() * svd.matrixV().transpose();
  CHECK((rec - a).norm() <= 1e-8 * a.norm());
  // Zero threshold reproduces the input.
  CHECK((svd_soft_threshold(a, 0.0) - a).norm() <= 1e-8 * a.norm());
}
