#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <variant>

#include "simmse/dgp.hpp"
#include "simmse/errors.hpp"
#include "simmse/linalg.hpp"
#include "simmse/normal.hpp"

namespace simmse {

DesignSampler::DesignSampler(DgpSpec spec) : spec_(std::move(spec)) {
  if (spec_.feature_count < 1 ||
      spec_.marginals.size() != static_cast<std::size_t>(spec_.feature_count) ||
      spec_.column_map.size() != spec_.marginals.size()) {
    throw InputError("DesignSampler: inconsistent DGP spec");
  }
  // Repaired covariances can sit on the PSD boundary, hence psd_factor
  // rather than a bare Cholesky.
  transform_ = psd_factor(spec_.underlying_covariance);
  bernoulli_cut_.resize(spec_.marginals.size(),
                        std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < spec_.marginals.size(); ++i) {
    if (const auto* b = std::get_if<BernoulliMarginal>(&spec_.marginals[i])) {
      bernoulli_cut_[i] = normal_quantile(b->prob);
    }
  }
}

Eigen::MatrixXd DesignSampler::sample_features(int n, RngStream& stream) const {
  if (n < 1) {
    throw InputError("DesignSampler: sample size must be positive");
  }
  const int pu = static_cast<int>(transform_.rows());

  // Draw order is part of the sampler's contract: first the n x pu normal
  // block row by row, then one selection uniform per mixture marginal per
  // row, marginals in order. Coupled streams rely on this.
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(n, pu);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < pu; ++c) {
      z(r, c) = normal(stream);
    }
  }
  const Eigen::MatrixXd u = z * transform_.transpose();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd x(n, spec_.feature_count);
  for (int j = 0; j < spec_.feature_count; ++j) {
    const auto& cols = spec_.column_map[static_cast<std::size_t>(j)];
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, NormalMarginal>) {
            x.col(j) = u.col(cols[0]).array() + m.mean;
          } else if constexpr (std::is_same_v<T, BernoulliMarginal>) {
            const double cut = bernoulli_cut_[static_cast<std::size_t>(j)];
            x.col(j) = (u.col(cols[0]).array() <= cut).cast<double>();
          } else if constexpr (std::is_same_v<T, LogNormalMarginal>) {
            x.col(j) = (u.col(cols[0]).array() + m.log_mean).exp();
          } else {
            for (int r = 0; r < n; ++r) {
              x(r, j) = unit(stream) < m.weight
                            ? m.first.mean + u(r, cols[0])
                            : m.second.mean + u(r, cols[1]);
            }
          }
        },
        spec_.marginals[static_cast<std::size_t>(j)]);
  }
  return x;
}

DesignMatrix DesignSampler::sample(int n, RngStream& stream) const {
  DesignMatrix design;
  design.values.resize(n, spec_.feature_count + 1);
  design.values.col(0).setOnes();
  design.values.rightCols(spec_.feature_count) = sample_features(n, stream);
  return design;
}

DesignMatrix sample_design(const DgpSpec& spec, int n, RngStream& stream) {
  return DesignSampler(spec).sample(n, stream);
}

}  // namespace simmse
