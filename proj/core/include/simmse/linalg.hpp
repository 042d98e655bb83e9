#pragma once

#include <Eigen/Dense>

namespace simmse {

// Factor a symmetric PSD matrix as T T^t: Cholesky when positive definite,
// symmetric eigenvalue square root (negative eigenvalues clamped to zero)
// when the matrix sits on or numerically below the PSD boundary.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma);

}  // namespace simmse
