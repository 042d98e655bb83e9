#include <cmath>
#include <stdexcept>
#include <string>

#include "simmse/dgp.hpp"

namespace simmse {

double mixture_variance(const GaussianMixtureMarginal& mix, MixtureVarianceRule rule) {
  const double a = mix.weight;
  const double gap = mix.first.mean - mix.second.mean;
  const double cross = (rule == MixtureVarianceRule::LawOfTotalVariance)
                           ? a * (1.0 - a)
                           : a * (1.0 - a * a);
  return a * mix.first.variance + (1.0 - a) * mix.second.variance +
         cross * gap * gap;
}

double marginal_mean(const MarginalSpec& marginal) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          return m.mean;
        } else if constexpr (std::is_same_v<T, BernoulliMarginal>) {
          return m.prob;
        } else if constexpr (std::is_same_v<T, LogNormalMarginal>) {
          return std::exp(m.log_mean + 0.5 * m.log_variance);
        } else {
          return m.weight * m.first.mean + (1.0 - m.weight) * m.second.mean;
        }
      },
      marginal);
}

double marginal_variance(const MarginalSpec& marginal) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          return m.variance;
        } else if constexpr (std::is_same_v<T, BernoulliMarginal>) {
          return m.prob * (1.0 - m.prob);
        } else if constexpr (std::is_same_v<T, LogNormalMarginal>) {
          return (std::exp(m.log_variance) - 1.0) *
                 std::exp(2.0 * m.log_mean + m.log_variance);
        } else {
          return mixture_variance(m);
        }
      },
      marginal);
}

namespace {

void check_rho(double rho, const char* what) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": correlation must lie in [-1, 1]");
  }
}

}  // namespace

Eigen::MatrixXd build_correlation_matrix(const CorrelationSpec& spec, int p) {
  if (p < 1) {
    throw std::invalid_argument("build_correlation_matrix: need at least one feature");
  }
  return std::visit(
      [p](const auto& s) -> Eigen::MatrixXd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedCorrelation>) {
          check_rho(s.rho, "fixed correlation");
          Eigen::MatrixXd r = Eigen::MatrixXd::Constant(p, p, s.rho);
          r.diagonal().setOnes();
          return r;
        } else if constexpr (std::is_same_v<T, PowerBlockCorrelation>) {
          check_rho(s.rho, "power block correlation");
          if (s.block_size < 1 || s.block_count < 1 ||
              s.block_size * s.block_count != p) {
            throw std::invalid_argument(
                "power block correlation: block_size * block_count must equal p");
          }
          Eigen::MatrixXd r = Eigen::MatrixXd::Zero(p, p);
          for (int b = 0; b < s.block_count; ++b) {
            const int off = b * s.block_size;
            for (int i = 0; i < s.block_size; ++i) {
              for (int j = 0; j < s.block_size; ++j) {
                r(off + i, off + j) = std::pow(s.rho, std::abs(i - j));
              }
            }
          }
          r.diagonal().setOnes();
          return r;
        } else {
          const Eigen::MatrixXd& m = s.matrix;
          if (m.rows() != p || m.cols() != p) {
            throw std::invalid_argument("explicit correlation: matrix is not p x p");
          }
          constexpr double kTol = 1e-12;
          for (int i = 0; i < p; ++i) {
            if (std::abs(m(i, i) - 1.0) > kTol) {
              throw std::invalid_argument("explicit correlation: diagonal must be one");
            }
            for (int j = i + 1; j < p; ++j) {
              if (std::abs(m(i, j) - m(j, i)) > kTol) {
                throw std::invalid_argument("explicit correlation: matrix must be symmetric");
              }
              if (std::abs(m(i, j)) > 1.0 + kTol) {
                throw std::invalid_argument(
                    "explicit correlation: entries must lie in [-1, 1]");
              }
            }
          }
          // Normalize away representational noise: exact unit diagonal,
          // exact symmetry from the upper triangle.
          Eigen::MatrixXd r = m;
          for (int i = 0; i < p; ++i) {
            r(i, i) = 1.0;
            for (int j = i + 1; j < p; ++j) {
              r(j, i) = r(i, j);
            }
          }
          return r;
        }
      },
      spec);
}

}  // namespace simmse
