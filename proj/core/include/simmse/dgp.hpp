#pragma once

#include <array>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "simmse/rng.hpp"

namespace simmse {

// ---------------------------------------------------------------------------
// Marginal distributions of the feature columns.
//
// Non-normal marginals are generated by transforming correlated normals:
// Bernoulli by dichotomizing at the quantile of its success probability
// (values at or below the quantile map to one), log-normal by exponentiation,
// and a two-component Gaussian mixture by a per-row Bernoulli choice between
// two jointly normal columns. The covariance solvers below pick the normal
// covariance that yields a requested correlation after transformation.
// ---------------------------------------------------------------------------

struct NormalMarginal {
  double mean = 0.0;
  double variance = 1.0;
};

struct BernoulliMarginal {
  double prob;  // P(X = 1), in (0, 1)
};

struct LogNormalMarginal {
  double log_mean = 0.0;      // mean of the underlying normal
  double log_variance = 1.0;  // variance of the underlying normal
};

struct MixtureComponent {
  double mean;
  double variance;
};

// With probability `weight` a row takes its value from `first`, otherwise
// from `second`. The selection is independent across rows and independent of
// the underlying normals.
struct GaussianMixtureMarginal {
  double weight;
  MixtureComponent first;
  MixtureComponent second;
};

using MarginalSpec = std::variant<NormalMarginal, BernoulliMarginal,
                                  LogNormalMarginal, GaussianMixtureMarginal>;

// Convention for the mixture variance cross term. LawOfTotalVariance is
// alpha(1-alpha)(mu1-mu2)^2; AlphaSquaredCross keeps the alpha(1-alpha^2)
// variant that some derivations print, retained only for comparison. All
// solvers and samplers use LawOfTotalVariance.
enum class MixtureVarianceRule { LawOfTotalVariance, AlphaSquaredCross };

double marginal_mean(const MarginalSpec& marginal);
double marginal_variance(const MarginalSpec& marginal);
double mixture_variance(const GaussianMixtureMarginal& mix,
                        MixtureVarianceRule rule = MixtureVarianceRule::LawOfTotalVariance);

// ---------------------------------------------------------------------------
// Target correlation structures.
// ---------------------------------------------------------------------------

// Constant pairwise correlation rho off the diagonal.
struct FixedCorrelation {
  double rho;
};

// Block-diagonal with rho^|i-j| inside each block and zero across blocks.
struct PowerBlockCorrelation {
  double rho;
  int block_size;
  int block_count;
};

// A full user-supplied correlation matrix (e.g. estimated from a dataset).
struct ExplicitCorrelation {
  Eigen::MatrixXd matrix;
};

using CorrelationSpec =
    std::variant<FixedCorrelation, PowerBlockCorrelation, ExplicitCorrelation>;

// Materialize the p x p target correlation matrix. Validates symmetry, unit
// diagonal, and entries in [-1, 1]; does not require positive definiteness
// (infeasible targets surface later, during resolution or repair).
Eigen::MatrixXd build_correlation_matrix(const CorrelationSpec& spec, int p);

// ---------------------------------------------------------------------------
// Pairwise covariance solvers (normal scale) for the transform families.
// Each returns the covariance entry of the underlying normal pair that
// reproduces the target correlation `rho` after transformation, or throws
// InfeasibleCorrelation carrying the attainable range.
// ---------------------------------------------------------------------------

// Both margins Bernoulli(prob1), Bernoulli(prob2): grid search over the
// underlying correlation in [-1, 1] with step 1e-4, ties toward smaller
// magnitude. Feasibility per the Frechet bounds.
double solve_bernoulli_pair(double prob1, double prob2, double rho);

// Bernoulli(prob) against a normal with variance normal_variance.
double solve_bernoulli_normal(double prob, double normal_variance, double rho);

// Both margins log-normal, with underlying normal variances log_var1/2.
double solve_lognormal_pair(double log_var1, double log_var2, double rho);

// Log-normal against a normal with variance normal_variance. The result does
// not depend on log_mean; the parameter is kept because the published form
// carries it (it cancels algebraically).
double solve_lognormal_normal(double log_mean, double log_var,
                              double normal_variance, double rho);

// Mixture against a plain normal: the shared covariance entry linking the
// normal column to both mixture component columns.
double solve_mixture_normal(const GaussianMixtureMarginal& mix,
                            double normal_variance, double rho);

// Mixture against mixture: the common covariance entry linking each pair of
// component columns across the two marginals.
double solve_mixture_pair(const GaussianMixtureMarginal& mix1,
                          const GaussianMixtureMarginal& mix2, double rho);

// ---------------------------------------------------------------------------
// Resolved data generating process.
// ---------------------------------------------------------------------------

// A fully resolved DGP, ready to sample. Mixture marginals own two columns
// of the underlying normal vector, so the underlying dimension is
// feature_count plus the number of mixtures. column_map[i] holds the
// underlying column(s) of marginal i ({c, -1} except for mixtures).
struct DgpSpec {
  int feature_count = 0;
  std::vector<MarginalSpec> marginals;
  Eigen::MatrixXd target_correlation;
  Eigen::MatrixXd underlying_covariance;
  std::vector<std::array<int, 2>> column_map;
  bool psd_repaired = false;
};

// Assemble the underlying normal covariance that reproduces the target
// correlation across all marginal pairs. If the assembled matrix is not
// positive semidefinite, its eigenvalues are clipped at 1e-10 (nearest-PSD
// repair) and psd_repaired is set. Pairs of transformed marginals from
// different families (e.g. Bernoulli against log-normal) are outside the
// supported catalog and throw unless their target correlation is zero.
DgpSpec resolve_underlying_covariance(std::vector<MarginalSpec> marginals,
                                      const Eigen::MatrixXd& target_correlation);

DgpSpec resolve_dgp(std::vector<MarginalSpec> marginals, const CorrelationSpec& spec);

// Convenience: p standard normal marginals with the given correlation.
DgpSpec standard_normal_dgp(int p, const CorrelationSpec& spec);

// All-normal DGP pinned to the given first two moments, e.g. estimated from
// data (the plug-in route). The covariance is kept exactly as passed unless
// it fails the PSD check, in which case it is repaired like any other
// assembly and the flag is set.
DgpSpec normal_dgp_from_moments(const Eigen::VectorXd& mean,
                                const Eigen::MatrixXd& covariance);

// ---------------------------------------------------------------------------
// Sampling.
// ---------------------------------------------------------------------------

// n x (p+1) design whose first column is the intercept (all ones).
struct DesignMatrix {
  Eigen::MatrixXd values;

  [[nodiscard]] Eigen::Index rows() const { return values.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return values.cols(); }
};

// Factorizes the underlying covariance once so repeated draws only cost the
// normal draws, one matrix product, and the marginal transforms.
class DesignSampler {
 public:
  explicit DesignSampler(DgpSpec spec);

  // Feature columns only, n x p.
  [[nodiscard]] Eigen::MatrixXd sample_features(int n, RngStream& stream) const;

  // Intercept column prepended, n x (p+1).
  [[nodiscard]] DesignMatrix sample(int n, RngStream& stream) const;

  [[nodiscard]] const DgpSpec& spec() const { return spec_; }

 private:
  DgpSpec spec_;
  Eigen::MatrixXd transform_;            // underlying_covariance = T T^t
  std::vector<double> bernoulli_cut_;    // per marginal; NaN where unused
};

// One-shot draw, for callers without a hot loop.
DesignMatrix sample_design(const DgpSpec& spec, int n, RngStream& stream);

}  // namespace simmse
