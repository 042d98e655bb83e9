#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simmse/errors.hpp"
#include "simmse/linalg.hpp"
#include "simmse/resampling.hpp"

namespace simmse {

const char* strategy_name(ResampleStrategy strategy) {
  switch (strategy) {
    case ResampleStrategy::kMOutOfN: return "mOutOfN";
    case ResampleStrategy::kNOutOfN: return "nOutOfN";
    case ResampleStrategy::kSubsampling: return "subsampling";
    case ResampleStrategy::kSmoothed: return "smoothed";
    case ResampleStrategy::kWild: return "wild";
    case ResampleStrategy::kNone: return "none";
  }
  return "?";
}

ResampleStrategy strategy_from_name(std::string_view name) {
  for (ResampleStrategy s :
       {ResampleStrategy::kMOutOfN, ResampleStrategy::kNOutOfN,
        ResampleStrategy::kSubsampling, ResampleStrategy::kSmoothed,
        ResampleStrategy::kWild, ResampleStrategy::kNone}) {
    if (name == strategy_name(s)) return s;
  }
  throw InputError("unknown resampling strategy: " + std::string(name));
}

ResamplePlan make_resample_plan(ResampleStrategy strategy, int target_n,
                                double proportion) {
  if (target_n < 1) {
    throw InputError("resample plan: target sample size must be positive");
  }
  ResamplePlan plan;
  plan.strategy = strategy;
  plan.target_n = target_n;
  const bool uses_proportion = strategy == ResampleStrategy::kMOutOfN ||
                               strategy == ResampleStrategy::kSubsampling;
  if (uses_proportion) {
    if (!(proportion > 0.0 && proportion <= 1.0)) {
      throw InputError("resample plan: proportion must lie in (0, 1]");
    }
    plan.proportion = proportion;
    plan.source_size = static_cast<int>(std::ceil(target_n / proportion));
  } else {
    plan.proportion = 1.0;
    plan.source_size = target_n;
  }
  return plan;
}

BandwidthMatrix silverman_bandwidth(const DesignMatrix& source) {
  const Eigen::Index m = source.rows();
  const Eigen::Index d = source.cols() - 1;
  if (m < 2) {
    throw InputError("silverman_bandwidth: need at least two rows");
  }
  if (d < 1) {
    throw InputError("silverman_bandwidth: need at least one feature column");
  }
  const auto features = source.values.rightCols(d);
  const Eigen::MatrixXd centered = features.rowwise() - features.colwise().mean();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(m - 1);
  const double dd = static_cast<double>(d);
  const double scale = std::pow(4.0 / (dd + 2.0), 2.0 / (dd + 4.0)) *
                       std::pow(static_cast<double>(m), -2.0 / (dd + 4.0));
  return BandwidthMatrix{scale * cov};
}

namespace {

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& source,
                            const std::vector<int>& indices) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), source.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = source.row(indices[i]);
  }
  return out;
}

std::vector<int> draw_with_replacement(int count, int source_rows,
                                       RngStream& stream) {
  std::uniform_int_distribution<int> pick(0, source_rows - 1);
  std::vector<int> indices(static_cast<std::size_t>(count));
  for (int& index : indices) index = pick(stream);
  return indices;
}

std::vector<int> draw_without_replacement(int count, int source_rows,
                                          RngStream& stream) {
  std::vector<int> pool(static_cast<std::size_t>(source_rows));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> pick(i, source_rows - 1);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(pick(stream))]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace

DesignMatrix resample(const ResamplePlan& plan, const DesignMatrix& source,
                      RngStream& stream) {
  const int m = static_cast<int>(source.rows());
  const int n = plan.target_n;
  const Eigen::Index d = source.cols() - 1;
  if (m != plan.source_size) {
    throw InputError("resample: source has " + std::to_string(m) +
                     " rows but the plan expects " +
                     std::to_string(plan.source_size));
  }
  if (n < 1) {
    throw InputError("resample: target sample size must be positive");
  }

  DesignMatrix out;
  switch (plan.strategy) {
    case ResampleStrategy::kNone:
      if (n != m) {
        throw InputError("resample: pass-through needs target_n == source size");
      }
      return source;

    case ResampleStrategy::kMOutOfN:
    case ResampleStrategy::kNOutOfN:
      out.values = gather_rows(source.values, draw_with_replacement(n, m, stream));
      break;

    case ResampleStrategy::kSubsampling:
      if (n > m) {
        throw InputError(
            "resample: subsampling cannot draw more rows than the source has");
      }
      out.values =
          gather_rows(source.values, draw_without_replacement(n, m, stream));
      break;

    case ResampleStrategy::kSmoothed: {
      out.values = gather_rows(source.values, draw_with_replacement(n, m, stream));
      const Eigen::MatrixXd transform = psd_factor(silverman_bandwidth(source).h);
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::MatrixXd z(n, d);
      for (int r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) z(r, c) = normal(stream);
      }
      out.values.rightCols(d) += z * transform.transpose();
      break;
    }

    case ResampleStrategy::kWild: {
      if (n != m) {
        throw InputError("resample: wild bootstrap keeps the source size");
      }
      out.values = source.values;
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Eigen::Index j = 1; j <= d; ++j) {
        auto col = out.values.col(j);
        const double mean = col.mean();
        const double sd =
            std::sqrt((col.array() - mean).square().sum() / (m - 1.0));
        if (!(sd > 0.0)) {
          throw InputError("resample: wild bootstrap hit a constant column");
        }
        const double a = normal(stream);
        col = col.array() + a * (col.array() - mean) / sd;
      }
      break;
    }
  }

  // The gather copies the ones column already; force exactness anyway so
  // noise paths can never contaminate the intercept.
  out.values.col(0).setOnes();
  return out;
}

}  // namespace simmse
