#include "onebit/linalg.hpp"

#include <cmath>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw InvalidParameter(std::string(what) + " must be nonnegative");
}

Eigen::BDCSVD<Matrix> checked_svd(const Matrix& a, unsigned options) {
  require_finite(a, "SVD input");
  Eigen::BDCSVD<Matrix> svd(a, options);
  if (svd.info() != Eigen::Success) throw NumericError("SVD did not converge");
  return svd;
}

}  // namespace

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw NumericError(std::string(what) + " has non-finite entries");
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

void require_symmetric(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) throw InvalidInput(std::string(what) + " must be square");
  if (a.size() > 0 && !is_symmetric(a)) throw InvalidInput(std::string(what) + " must be symmetric");
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double hard_threshold(double x, double zeta) {
  require_nonnegative(zeta, "hard threshold");
  return std::abs(x) >= zeta ? x : 0.0;
}

Matrix hard_threshold(const Matrix& a, double zeta) {
  require_nonnegative(zeta, "hard threshold");
  return a.unaryExpr([zeta](double x) { return std::abs(x) >= zeta ? x : 0.0; });
}

double soft_threshold(double x, double beta) {
  require_nonnegative(beta, "soft threshold");
  const double m = std::abs(x) - beta;
  return m > 0.0 ? std::copysign(m, x) : 0.0;
}

Vector soft_threshold(const Vector& v, double beta) {
  require_nonnegative(beta, "soft threshold");
  return v.unaryExpr([beta](double x) {
    const double m = std::abs(x) - beta;
    return m > 0.0 ? std::copysign(m, x) : 0.0;
  });
}

Matrix soft_threshold(const Matrix& a, double beta) {
  require_nonnegative(beta, "soft threshold");
  return a.unaryExpr([beta](double x) {
    const double m = std::abs(x) - beta;
    return m > 0.0 ? std::copysign(m, x) : 0.0;
  });
}

Matrix svd_soft_threshold(const Matrix& a, double beta) {
  require_nonnegative(beta, "singular value threshold");
  if (a.size() == 0) return a;
  auto svd = checked_svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector shrunk = (svd.singularValues().array() - beta).cwiseMax(0.0).matrix();
  Eigen::Index keep = 0;
  while (keep < shrunk.size() && shrunk[keep] > 0.0) ++keep;
  if (keep == 0) return Matrix::Zero(a.rows(), a.cols());
  return svd.matrixU().leftCols(keep) * shrunk.head(keep).asDiagonal() *
         svd.matrixV().leftCols(keep).transpose();
}

Matrix positive_part(const Matrix& a) {
  require_symmetric(a, "positive_part input");
  require_finite(a, "positive_part input");
  if (a.size() == 0) return a;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
  Matrix out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  return symmetrize(out);
}

Matrix clamp_max_norm(const Matrix& a, double alpha) {
  if (!(alpha > 0.0)) throw InvalidParameter("max-norm radius must be positive");
  return a.cwiseMax(-alpha).cwiseMin(alpha);
}

Vector singular_values(const Matrix& a) {
  if (a.size() == 0) return Vector();
  return checked_svd(a, 0).singularValues();
}

double op_norm(const Matrix& a) {
  const Vector s = singular_values(a);
  return s.size() ? s[0] : 0.0;
}

double nuclear_norm(const Matrix& a) { return singular_values(a).sum(); }

Norms norms(const Matrix& a) {
  require_finite(a, "norm input");
  Norms n;
  if (a.size() == 0) return n;
  const Vector s = singular_values(a);
  n.op = s[0];
  n.nuclear = s.sum();
  n.frobenius = a.norm();
  n.max = a.cwiseAbs().maxCoeff();
  n.one_inf = a.cwiseAbs().colwise().sum().maxCoeff();
  return n;
}

double min_eigenvalue(const Matrix& a) {
  require_symmetric(a, "min_eigenvalue input");
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  return eig.eigenvalues()[0];
}

}  // namespace onebit
