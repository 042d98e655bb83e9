#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "simmse/dgp.hpp"
#include "simmse/ogm.hpp"
#include "simmse/resampling.hpp"
#include "simmse/rng.hpp"

namespace simmse {

// Fixed role counters for stream derivation. Every random draw in a study
// comes from a stream keyed by (masterSeed, role, repetition, iteration), so
// results never depend on scheduling or worker count, and studies that differ
// only in beta or error scale share their underlying draws.
namespace stream_role {
inline constexpr std::uint64_t kTruth = 0;     // true-MSE oracle chunks
inline constexpr std::uint64_t kDesign = 1;    // parametric design draws
inline constexpr std::uint64_t kNoise = 2;     // outcome errors (both methods)
inline constexpr std::uint64_t kSource = 3;    // plasmode source dataset
inline constexpr std::uint64_t kResample = 4;  // plasmode resampling draws
inline constexpr std::uint64_t kPlugin = 5;    // plug-in moment estimation
}  // namespace stream_role

// One simulation-study setup: the true data/outcome model the world follows,
// the assumed model the study simulates from, and the study sizes.
//   - parametric runs need assumed_dgp; plan is ignored.
//   - plasmode runs need plan and must leave assumed_dgp empty (the design
//     side comes from resampling a source drawn from the truth).
struct StudyConfig {
  DgpSpec truth_dgp;
  OgmSpec truth_ogm;
  std::optional<DgpSpec> assumed_dgp;
  OgmSpec assumed_ogm;
  int n = 0;                         // observations per simulated dataset
  int n_mse = 100;                   // study repetitions (outer loop)
  int n_mod = 1000;                  // datasets fitted per repetition
  std::optional<ResamplePlan> plan;  // plasmode resampling scheme
  std::uint64_t master_seed = 0;
};

// Per-coefficient MSE estimate from one study repetition. Rank-deficient
// fits are skipped and counted; the average divides by the successful count.
struct MseEstimate {
  Eigen::VectorXd per_coefficient;  // length p+1 (intercept first)
  int successful_iterations = 0;
  int rank_deficient_skipped = 0;
};

// Monte Carlo ground truth for the estimator MSE, with standard errors of
// the per-coefficient means.
struct TrueMse {
  Eigen::VectorXd per_coefficient;
  Eigen::VectorXd standard_errors;
  long long replications = 0;  // successful fits contributing to the mean
  long long rank_deficient_skipped = 0;
};

struct TruthOptions {
  // Fit with a leading intercept column (the study estimators always do).
  // Disabling it gives the centered no-intercept fit whose MSE has the
  // closed form checked by analytic_slope_mse.
  bool include_intercept = true;
  int workers = 1;
};

// Exact per-slope MSE of the no-intercept LSE under a centered Gaussian
// design with covariance sigma and independent errors of the given
// variance: the mean of the inverse-Wishart Gram inverse gives
// error_variance * (sigma^-1)_jj / (n - p - 1). Requires n > p + 1.
Eigen::VectorXd analytic_slope_mse(const Eigen::MatrixXd& sigma,
                                   double error_variance, int n);

// Monte Carlo oracle: average squared estimation error over fresh draws of
// design and noise. Replications are processed in fixed chunks whose streams
// derive from chunk index below `key`, and chunk results reduce in index
// order, so the result is bitwise identical for any worker count.
// Requires replications >= 1000.
TrueMse estimate_true_mse(const DgpSpec& dgp, const OgmSpec& ogm, int n,
                          long long replications, const StreamKey& key,
                          const TruthOptions& options = {});

// One parametric study repetition: n_mod designs from the assumed DGP,
// outcomes from the assumed OGM, LSE fits, averaged squared errors against
// the assumed coefficients.
MseEstimate run_parametric_study(const StudyConfig& config, int repetition);

// One plasmode study repetition: a fresh source dataset of plan.source_size
// rows drawn from the TRUE DGP, then n_mod resampled designs with outcomes
// from the assumed OGM.
MseEstimate run_plasmode_study(const StudyConfig& config, int repetition);

// Plug-in route: draw one dataset of est_sample_size rows from the true DGP
// and return the all-normal DGP matching its sample mean and covariance.
// Requires est_sample_size > p + 1.
DgpSpec estimate_plugin_dgp(const DgpSpec& truth, int est_sample_size,
                            const StreamKey& key);

}  // namespace simmse
