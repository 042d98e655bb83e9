#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "simmse/errors.hpp"
#include "simmse/linalg.hpp"

namespace simmse {

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() == Eigen::Success) {
    return llt.matrixL();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(sigma);
  if (eigen.info() != Eigen::Success) {
    throw EngineFailure("psd_factor: eigendecomposition failed");
  }
  const Eigen::VectorXd root = eigen.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eigen.eigenvectors() * root.asDiagonal();
}

}  // namespace simmse
