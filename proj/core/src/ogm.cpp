#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <variant>

#include <Eigen/Dense>

#include "simmse/errors.hpp"
#include "simmse/ogm.hpp"

namespace simmse {

double error_sd(const ErrorDistSpec& spec) {
  return std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, NormalError>) {
          return e.sd;
        } else {
          return e.target_sd;
        }
      },
      spec);
}

void validate_error_dist(const ErrorDistSpec& spec) {
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, NormalError>) {
          if (!(e.sd >= 0.0)) {
            throw InputError("error distribution: sd must not be negative");
          }
        } else if constexpr (std::is_same_v<T, ScaledTError>) {
          if (!(e.df > 2.0)) {
            throw InputError(
                "error distribution: t needs df > 2 for a finite variance");
          }
          if (!(e.target_sd >= 0.0)) {
            throw InputError("error distribution: sd must not be negative");
          }
        } else {
          if (!(e.df >= 1.0)) {
            throw InputError("error distribution: chi-squared needs df >= 1");
          }
          if (!(e.target_sd >= 0.0)) {
            throw InputError("error distribution: sd must not be negative");
          }
        }
      },
      spec);
}

Eigen::VectorXd sample_unit_errors(const ErrorDistSpec& spec, int n,
                                   RngStream& stream) {
  if (n < 1) {
    throw InputError("sample_errors: need a positive sample size");
  }
  validate_error_dist(spec);
  Eigen::VectorXd eps(n);
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, NormalError>) {
          std::normal_distribution<double> normal(0.0, 1.0);
          for (int i = 0; i < n; ++i) eps[i] = normal(stream);
        } else if constexpr (std::is_same_v<T, ScaledTError>) {
          std::student_t_distribution<double> t(e.df);
          const double scale = 1.0 / std::sqrt(e.df / (e.df - 2.0));
          for (int i = 0; i < n; ++i) eps[i] = scale * t(stream);
        } else {
          std::chi_squared_distribution<double> chisq(e.df);
          const double scale = 1.0 / std::sqrt(2.0 * e.df);
          for (int i = 0; i < n; ++i) eps[i] = scale * (chisq(stream) - e.df);
        }
      },
      spec);
  return eps;
}

Eigen::VectorXd sample_errors(const ErrorDistSpec& spec, int n, RngStream& stream) {
  return error_sd(spec) * sample_unit_errors(spec, n, stream);
}

Eigen::VectorXd generate_outcome(const DesignMatrix& design, const OgmSpec& ogm,
                                 RngStream& stream) {
  if (ogm.beta.size() != design.cols()) {
    throw InputError("generate_outcome: beta length must match design columns");
  }
  if (!ogm.beta.allFinite()) {
    throw InputError("generate_outcome: beta must be finite");
  }
  return design.values * ogm.beta +
         sample_errors(ogm.error_dist, static_cast<int>(design.rows()), stream);
}

LseFit fit_lse(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() < x.cols()) {
    throw InputError("fit_lse: need at least as many rows as columns");
  }
  if (y.size() != x.rows()) {
    throw InputError("fit_lse: outcome length must match design rows");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(static_cast<double>(std::max(x.rows(), x.cols())) *
                  std::numeric_limits<double>::epsilon());
  LseFit fit;
  fit.rank_deficient = qr.rank() < x.cols();
  fit.beta_hat = qr.solve(y);
  return fit;
}

}  // namespace simmse
