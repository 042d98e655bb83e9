#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "simmse/dgp.hpp"
#include "simmse/rng.hpp"

namespace simmse {

// How a Plasmode study turns one source design into fresh designs.
enum class ResampleStrategy {
  kMOutOfN,       // targetN rows with replacement from a larger source
  kNOutOfN,       // classic bootstrap, source size = targetN
  kSubsampling,   // targetN rows without replacement
  kSmoothed,      // bootstrap plus kernel noise (Silverman bandwidth)
  kWild,          // per-column random rescaling around the column mean
  kNone,          // pass the source through unchanged
};

const char* strategy_name(ResampleStrategy strategy);
ResampleStrategy strategy_from_name(std::string_view name);

struct ResamplePlan {
  ResampleStrategy strategy = ResampleStrategy::kNone;
  double proportion = 1.0;  // pi; meaningful for mOutOfN and subsampling
  int target_n = 0;         // rows of every resampled design
  int source_size = 0;      // rows the source design must have
};

// Standard plan: source_size = ceil(target_n / pi) for mOutOfN and
// subsampling, target_n otherwise. pi is required in (0, 1] for the two
// proportion-driven strategies and forced to 1 for the rest. Callers may
// override source_size afterwards to decouple the source from target_n
// (the wrong-sample-size study does exactly that).
ResamplePlan make_resample_plan(ResampleStrategy strategy, int target_n,
                                double proportion = 1.0);

// Silverman's rule-of-thumb bandwidth for the smoothed bootstrap:
// H = (4/(d+2))^(2/(d+4)) m^(-2/(d+4)) S, with S the sample covariance of
// the d feature columns over m source rows.
struct BandwidthMatrix {
  Eigen::MatrixXd h;
};

BandwidthMatrix silverman_bandwidth(const DesignMatrix& source);

// Draw one resampled design of plan.target_n rows. The intercept column is
// always an exact ones column. Draw order is part of the contract: row
// indices first (one uniform draw per output row; subsampling runs a partial
// Fisher-Yates), then any noise (smoothed: target_n x d standard normals row
// by row; wild: d column factors), so index draws couple across strategies
// that share a stream.
DesignMatrix resample(const ResamplePlan& plan, const DesignMatrix& source,
                      RngStream& stream);

}  // namespace simmse
