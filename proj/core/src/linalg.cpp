#include "internal/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "levyest/errors.hpp"

namespace levyest::internal {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMat as_matrix(const std::vector<double>& m, int d, const std::string& what) {
  if (m.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
    throw invalid_model_error(what + ": expected a " + std::to_string(d) + "x" +
                              std::to_string(d) + " matrix");
  RowMat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double v = m[static_cast<std::size_t>(i) * d + j];
      if (!std::isfinite(v)) throw invalid_model_error(what + ": non-finite entry");
      a(i, j) = v;
    }
  return a;
}

}  // namespace

void check_symmetric_psd(const std::vector<double>& m, int d, const std::string& what) {
  const RowMat a = as_matrix(m, d, what);
  const double scale = a.cwiseAbs().maxCoeff();
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (scale > 0 ? scale : 1.0))
    throw invalid_model_error(what + ": matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double trace = a.trace();
  if (es.eigenvalues().minCoeff() < -1e-12 * (trace > 0 ? trace : 1.0))
    throw invalid_model_error(what + ": matrix is not positive semidefinite");
}

std::vector<double> psd_factor(const std::vector<double>& m, int d) {
  const RowMat a = as_matrix(m, d, "covariance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd f = es.eigenvectors() * lam.asDiagonal();
  std::vector<double> out(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i) * d + j] = f(i, j);
  return out;
}

}  // namespace levyest::internal
