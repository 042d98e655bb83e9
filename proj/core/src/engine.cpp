#include "simmse/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simmse/errors.hpp"
#include "simmse/parallel.hpp"

namespace simmse {
namespace {

// Replications per truth-oracle chunk. The chunk grid is part of the stream
// derivation, so it is fixed rather than tuned to the worker count.
constexpr long long kChunkReps = 4096;

void require_beta(const OgmSpec& ogm, int coefficient_count, const char* where) {
  if (static_cast<int>(ogm.beta.size()) != coefficient_count) {
    throw InputError(std::string(where) + ": beta length must match the fitted " +
                     "coefficient count (intercept included)");
  }
  if (!ogm.beta.allFinite()) {
    throw InputError(std::string(where) + ": beta entries must be finite");
  }
  validate_error_dist(ogm.error_dist);
}

// Squared-error accumulator exploiting the linearity of the LSE in the
// outcome: with y = X b + s*e, the fit error is bhat - b = s * lse(X, e),
// free of b. Studies therefore fit the unit noise directly and fold the
// error scale in as one final multiplication. This makes the coefficient
// invariance exact and the error-scale scaling a single exact product.
struct SquaredErrorSums {
  Eigen::VectorXd sum_q;   // per-coefficient sum of lse(X, e)^2
  Eigen::VectorXd sum_q2;  // per-coefficient sum of lse(X, e)^4
  long long successes = 0;
  long long rank_deficient = 0;

  explicit SquaredErrorSums(int d)
      : sum_q(Eigen::VectorXd::Zero(d)), sum_q2(Eigen::VectorXd::Zero(d)) {}

  void add_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& unit_errors) {
    const LseFit fit = fit_lse(design, unit_errors);
    if (fit.rank_deficient) {
      ++rank_deficient;
      return;
    }
    const Eigen::ArrayXd q = fit.beta_hat.array().square();
    sum_q.array() += q;
    sum_q2.array() += q.square();
    ++successes;
  }
};

}  // namespace

Eigen::VectorXd analytic_slope_mse(const Eigen::MatrixXd& sigma,
                                   double error_variance, int n) {
  const int p = static_cast<int>(sigma.rows());
  if (p < 1 || sigma.cols() != p) {
    throw InputError("analytic_slope_mse: sigma must be a square p x p matrix");
  }
  if (n <= p + 1) {
    throw InputError("analytic_slope_mse: need n > p + 1");
  }
  if (!(error_variance >= 0.0)) {
    throw InputError("analytic_slope_mse: error variance must be nonnegative");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sigma);
  if (!lu.isInvertible()) {
    throw InputError("analytic_slope_mse: sigma is singular");
  }
  const Eigen::MatrixXd inv = lu.inverse();
  return error_variance * inv.diagonal() / static_cast<double>(n - p - 1);
}

TrueMse estimate_true_mse(const DgpSpec& dgp, const OgmSpec& ogm, int n,
                          long long replications, const StreamKey& key,
                          const TruthOptions& options) {
  const int p = dgp.feature_count;
  const int d = p + (options.include_intercept ? 1 : 0);
  if (n < d) {
    throw InputError(
        "estimate_true_mse: need at least as many observations as coefficients");
  }
  if (replications < 1000) {
    throw InputError("estimate_true_mse: need at least 1000 replications");
  }
  require_beta(ogm, d, "estimate_true_mse");

  const DesignSampler sampler(dgp);
  const double sd = error_sd(ogm.error_dist);
  const double s2 = sd * sd;

  const long long chunk_count = (replications + kChunkReps - 1) / kChunkReps;
  std::vector<SquaredErrorSums> chunks(static_cast<std::size_t>(chunk_count),
                                       SquaredErrorSums(d));

  parallel_chunks(static_cast<int>(chunk_count), options.workers, [&](int c) {
    const long long begin = static_cast<long long>(c) * kChunkReps;
    const long long end = std::min(replications, begin + kChunkReps);
    RngStream stream = key.child(static_cast<std::uint64_t>(c)).stream();
    SquaredErrorSums& sums = chunks[static_cast<std::size_t>(c)];
    for (long long r = begin; r < end; ++r) {
      const Eigen::MatrixXd design =
          options.include_intercept ? sampler.sample(n, stream).values
                                    : sampler.sample_features(n, stream);
      const Eigen::VectorXd unit_errors =
          sample_unit_errors(ogm.error_dist, n, stream);
      sums.add_fit(design, unit_errors);
    }
  });

  // Reduce in chunk order so the totals are bitwise reproducible.
  SquaredErrorSums total(d);
  for (const SquaredErrorSums& c : chunks) {
    total.sum_q += c.sum_q;
    total.sum_q2 += c.sum_q2;
    total.successes += c.successes;
    total.rank_deficient += c.rank_deficient;
  }
  if (total.successes == 0) {
    throw EngineFailure("estimate_true_mse: every replication was rank-deficient");
  }

  const double m = static_cast<double>(total.successes);
  TrueMse result;
  result.per_coefficient = s2 * (total.sum_q / m);
  result.standard_errors = Eigen::VectorXd::Zero(d);
  if (total.successes > 1) {
    const Eigen::ArrayXd var_q =
        ((total.sum_q2.array() - total.sum_q.array().square() / m) / (m - 1.0))
            .max(0.0);
    result.standard_errors = s2 * (var_q / m).sqrt().matrix();
  }
  result.replications = total.successes;
  result.rank_deficient_skipped = total.rank_deficient;
  return result;
}

namespace {

MseEstimate finish_estimate(const SquaredErrorSums& sums, double s2,
                            const char* where) {
  if (sums.successes == 0) {
    throw EngineFailure(std::string(where) +
                        ": every iteration was rank-deficient");
  }
  MseEstimate result;
  result.per_coefficient =
      s2 * (sums.sum_q / static_cast<double>(sums.successes));
  result.successful_iterations = static_cast<int>(sums.successes);
  result.rank_deficient_skipped = static_cast<int>(sums.rank_deficient);
  return result;
}

void require_study_shape(const StudyConfig& config, int p, const char* where) {
  if (config.n <= p) {
    throw InputError(std::string(where) + ": need n greater than the feature count");
  }
  if (config.n_mod < 1 || config.n_mse < 1) {
    throw InputError(std::string(where) + ": n_mod and n_mse must be at least 1");
  }
  require_beta(config.assumed_ogm, p + 1, where);
}

}  // namespace

MseEstimate run_parametric_study(const StudyConfig& config, int repetition) {
  if (!config.assumed_dgp) {
    throw InputError("run_parametric_study: assumed_dgp is required");
  }
  if (repetition < 0) {
    throw InputError("run_parametric_study: repetition must be nonnegative");
  }
  const int p = config.assumed_dgp->feature_count;
  require_study_shape(config, p, "run_parametric_study");

  const DesignSampler sampler(*config.assumed_dgp);
  const double sd = error_sd(config.assumed_ogm.error_dist);
  const auto k = static_cast<std::uint64_t>(repetition);

  SquaredErrorSums sums(p + 1);
  for (int i = 0; i < config.n_mod; ++i) {
    const auto it = static_cast<std::uint64_t>(i);
    RngStream design_stream =
        derive_stream(config.master_seed, {stream_role::kDesign, k, it});
    RngStream noise_stream =
        derive_stream(config.master_seed, {stream_role::kNoise, k, it});
    const DesignMatrix design = sampler.sample(config.n, design_stream);
    const Eigen::VectorXd unit_errors =
        sample_unit_errors(config.assumed_ogm.error_dist, config.n, noise_stream);
    sums.add_fit(design.values, unit_errors);
  }
  return finish_estimate(sums, sd * sd, "run_parametric_study");
}

MseEstimate run_plasmode_study(const StudyConfig& config, int repetition) {
  if (!config.plan) {
    throw InputError("run_plasmode_study: a resample plan is required");
  }
  if (config.assumed_dgp) {
    throw InputError(
        "run_plasmode_study: the design side comes from resampling the true "
        "DGP; leave assumed_dgp empty");
  }
  if (repetition < 0) {
    throw InputError("run_plasmode_study: repetition must be nonnegative");
  }
  const int p = config.truth_dgp.feature_count;
  require_study_shape(config, p, "run_plasmode_study");
  if (config.plan->target_n != config.n) {
    throw InputError("run_plasmode_study: plan target size must equal n");
  }

  const auto k = static_cast<std::uint64_t>(repetition);
  RngStream source_stream =
      derive_stream(config.master_seed, {stream_role::kSource, k});
  const DesignSampler sampler(config.truth_dgp);
  const DesignMatrix source =
      sampler.sample(config.plan->source_size, source_stream);
  const double sd = error_sd(config.assumed_ogm.error_dist);

  SquaredErrorSums sums(p + 1);
  for (int i = 0; i < config.n_mod; ++i) {
    const auto it = static_cast<std::uint64_t>(i);
    RngStream resample_stream =
        derive_stream(config.master_seed, {stream_role::kResample, k, it});
    RngStream noise_stream =
        derive_stream(config.master_seed, {stream_role::kNoise, k, it});
    const DesignMatrix design = resample(*config.plan, source, resample_stream);
    const Eigen::VectorXd unit_errors =
        sample_unit_errors(config.assumed_ogm.error_dist, config.n, noise_stream);
    sums.add_fit(design.values, unit_errors);
  }
  return finish_estimate(sums, sd * sd, "run_plasmode_study");
}

DgpSpec estimate_plugin_dgp(const DgpSpec& truth, int est_sample_size,
                            const StreamKey& key) {
  const int p = truth.feature_count;
  if (est_sample_size <= p + 1) {
    throw InputError("estimate_plugin_dgp: need est_sample_size > p + 1");
  }
  RngStream stream = key.stream();
  const Eigen::MatrixXd features =
      DesignSampler(truth).sample_features(est_sample_size, stream);
  const Eigen::VectorXd mean = features.colwise().mean().transpose();
  const Eigen::MatrixXd centered = features.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) /
                        static_cast<double>(est_sample_size - 1);
  cov = ((cov + cov.transpose()) / 2.0).eval();
  return normal_dgp_from_moments(mean, cov);
}

}  // namespace simmse
