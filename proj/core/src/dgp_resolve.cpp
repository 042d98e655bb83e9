#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "simmse/dgp.hpp"
#include "simmse/errors.hpp"

namespace simmse {
namespace {

enum class Family { Normal, Bernoulli, LogNormal, Mixture };

Family family_of(const MarginalSpec& m) {
  if (std::holds_alternative<NormalMarginal>(m)) return Family::Normal;
  if (std::holds_alternative<BernoulliMarginal>(m)) return Family::Bernoulli;
  if (std::holds_alternative<LogNormalMarginal>(m)) return Family::LogNormal;
  return Family::Mixture;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Normal: return "normal";
    case Family::Bernoulli: return "bernoulli";
    case Family::LogNormal: return "logNormal";
    case Family::Mixture: return "gaussianMixture";
  }
  return "?";
}

// Underlying normal variance(s) backing one marginal. Bernoulli margins
// dichotomize a standard normal; the others carry their own scale.
void place_diagonal(Eigen::MatrixXd& sigma, const MarginalSpec& m,
                    const std::array<int, 2>& cols) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          sigma(cols[0], cols[0]) = v.variance;
        } else if constexpr (std::is_same_v<T, BernoulliMarginal>) {
          sigma(cols[0], cols[0]) = 1.0;
        } else if constexpr (std::is_same_v<T, LogNormalMarginal>) {
          sigma(cols[0], cols[0]) = v.log_variance;
        } else {
          // The two component columns are kept independent of each other:
          // only one is observed per row, and tying them would contradict
          // the equal cross-covariances the solvers assume.
          sigma(cols[0], cols[0]) = v.first.variance;
          sigma(cols[1], cols[1]) = v.second.variance;
        }
      },
      m);
}

void set_pair(Eigen::MatrixXd& sigma, int a, int b, double value) {
  sigma(a, b) = value;
  sigma(b, a) = value;
}

// Solve and place the covariance entries linking marginals i and j. The
// entries tie together every underlying column of i with every underlying
// column of j (one value; mixtures fan it out over their component columns).
void place_pair(Eigen::MatrixXd& sigma, const std::vector<MarginalSpec>& marginals,
                const std::vector<std::array<int, 2>>& cols, int i, int j,
                double rho) {
  // Canonical family order halves the dispatch table.
  int a = i;
  int b = j;
  if (static_cast<int>(family_of(marginals[a])) >
      static_cast<int>(family_of(marginals[b]))) {
    std::swap(a, b);
  }
  const MarginalSpec& ma = marginals[a];
  const MarginalSpec& mb = marginals[b];
  const Family fa = family_of(ma);
  const Family fb = family_of(mb);
  const int ca = cols[a][0];
  const int cb = cols[b][0];

  if (fa == Family::Normal) {
    const auto& na = std::get<NormalMarginal>(ma);
    switch (fb) {
      case Family::Normal: {
        const auto& nb = std::get<NormalMarginal>(mb);
        set_pair(sigma, ca, cb,
                 rho * std::sqrt(na.variance * nb.variance));
        return;
      }
      case Family::Bernoulli:
        set_pair(sigma, ca, cb,
                 solve_bernoulli_normal(std::get<BernoulliMarginal>(mb).prob,
                                        na.variance, rho));
        return;
      case Family::LogNormal: {
        const auto& lb = std::get<LogNormalMarginal>(mb);
        set_pair(sigma, ca, cb,
                 solve_lognormal_normal(lb.log_mean, lb.log_variance,
                                        na.variance, rho));
        return;
      }
      case Family::Mixture: {
        const double c = solve_mixture_normal(std::get<GaussianMixtureMarginal>(mb),
                                              na.variance, rho);
        set_pair(sigma, ca, cols[b][0], c);
        set_pair(sigma, ca, cols[b][1], c);
        return;
      }
    }
  }
  if (fa == Family::Bernoulli && fb == Family::Bernoulli) {
    set_pair(sigma, ca, cb,
             solve_bernoulli_pair(std::get<BernoulliMarginal>(ma).prob,
                                  std::get<BernoulliMarginal>(mb).prob, rho));
    return;
  }
  if (fa == Family::LogNormal && fb == Family::LogNormal) {
    set_pair(sigma, ca, cb,
             solve_lognormal_pair(std::get<LogNormalMarginal>(ma).log_variance,
                                  std::get<LogNormalMarginal>(mb).log_variance,
                                  rho));
    return;
  }
  if (fa == Family::Mixture && fb == Family::Mixture) {
    const double c = solve_mixture_pair(std::get<GaussianMixtureMarginal>(ma),
                                        std::get<GaussianMixtureMarginal>(mb), rho);
    set_pair(sigma, cols[a][0], cols[b][0], c);
    set_pair(sigma, cols[a][0], cols[b][1], c);
    set_pair(sigma, cols[a][1], cols[b][0], c);
    set_pair(sigma, cols[a][1], cols[b][1], c);
    return;
  }

  // Remaining combinations (Bernoulli or log-normal against anything
  // non-normal of a different family) have no solver; independence is the
  // only correlation we can honor.
  if (rho == 0.0) return;
  std::ostringstream msg;
  msg << "resolve_underlying_covariance: no covariance solver for features " << i
      << " (" << family_name(family_of(marginals[i])) << ") and " << j << " ("
      << family_name(family_of(marginals[j]))
      << "); set their target correlation to zero or change a marginal";
  throw InputError(msg.str());
}

// Clip negative eigenvalues and restore the original diagonal, so every
// marginal keeps its exact distribution and the infeasibility is absorbed by
// the correlations. Returns whether a repair was needed.
bool repair_if_indefinite(Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(sigma);
  if (eigen.info() != Eigen::Success) {
    throw EngineFailure("covariance repair: eigendecomposition failed");
  }
  if (eigen.eigenvalues().minCoeff() >= 0.0) return false;
  const Eigen::VectorXd original_diag = sigma.diagonal();
  const Eigen::VectorXd clipped = eigen.eigenvalues().cwiseMax(1e-10);
  sigma = eigen.eigenvectors() * clipped.asDiagonal() *
          eigen.eigenvectors().transpose();
  sigma = ((sigma + sigma.transpose()) / 2.0).eval();
  const Eigen::VectorXd rescale =
      (original_diag.array() / sigma.diagonal().array()).sqrt();
  sigma = (rescale.asDiagonal() * sigma * rescale.asDiagonal()).eval();
  sigma.diagonal() = original_diag;
  sigma = ((sigma + sigma.transpose()) / 2.0).eval();
  return true;
}

}  // namespace

DgpSpec resolve_underlying_covariance(std::vector<MarginalSpec> marginals,
                                      const Eigen::MatrixXd& target_correlation) {
  const int p = static_cast<int>(marginals.size());
  if (p < 1) {
    throw InputError("resolve_underlying_covariance: need at least one marginal");
  }
  // Reuse the explicit-matrix validator; it also mirrors the upper triangle.
  const Eigen::MatrixXd target =
      build_correlation_matrix(ExplicitCorrelation{target_correlation}, p);

  std::vector<std::array<int, 2>> cols(static_cast<std::size_t>(p));
  int next = 0;
  for (int i = 0; i < p; ++i) {
    cols[i][0] = next++;
    cols[i][1] =
        std::holds_alternative<GaussianMixtureMarginal>(marginals[i]) ? next++ : -1;
  }

  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(next, next);
  for (int i = 0; i < p; ++i) {
    place_diagonal(sigma, marginals[i], cols[i]);
  }
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      place_pair(sigma, marginals, cols, i, j, target(i, j));
    }
  }

  // Pairwise solutions need not cohere into a PSD matrix.
  const bool repaired = repair_if_indefinite(sigma);

  DgpSpec spec;
  spec.feature_count = p;
  spec.marginals = std::move(marginals);
  spec.target_correlation = target;
  spec.underlying_covariance = std::move(sigma);
  spec.column_map = std::move(cols);
  spec.psd_repaired = repaired;
  return spec;
}

DgpSpec resolve_dgp(std::vector<MarginalSpec> marginals, const CorrelationSpec& spec) {
  const int p = static_cast<int>(marginals.size());
  if (p < 1) {
    throw InputError("resolve_dgp: need at least one marginal");
  }
  return resolve_underlying_covariance(std::move(marginals),
                                       build_correlation_matrix(spec, p));
}

DgpSpec standard_normal_dgp(int p, const CorrelationSpec& spec) {
  std::vector<MarginalSpec> marginals(static_cast<std::size_t>(p),
                                      MarginalSpec{NormalMarginal{}});
  return resolve_dgp(std::move(marginals), spec);
}

DgpSpec normal_dgp_from_moments(const Eigen::VectorXd& mean,
                                const Eigen::MatrixXd& covariance) {
  const int p = static_cast<int>(mean.size());
  if (p < 1) {
    throw InputError("normal_dgp_from_moments: need at least one feature");
  }
  if (covariance.rows() != p || covariance.cols() != p) {
    throw InputError("normal_dgp_from_moments: covariance shape must match mean");
  }
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw InputError("normal_dgp_from_moments: covariance must be symmetric");
  }
  Eigen::MatrixXd sigma = ((covariance + covariance.transpose()) / 2.0).eval();
  for (int i = 0; i < p; ++i) {
    if (!(sigma(i, i) > 0.0)) {
      throw InputError("normal_dgp_from_moments: variances must be positive");
    }
  }

  std::vector<MarginalSpec> marginals;
  marginals.reserve(static_cast<std::size_t>(p));
  std::vector<std::array<int, 2>> cols(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    marginals.push_back(NormalMarginal{mean(i), sigma(i, i)});
    cols[i] = {i, -1};
  }

  // Descriptive correlation implied by the covariance; clamp fp spillover
  // just past +-1 so downstream reporting stays in range.
  const Eigen::VectorXd inv_sd = sigma.diagonal().array().sqrt().inverse();
  Eigen::MatrixXd corr =
      (inv_sd.asDiagonal() * sigma * inv_sd.asDiagonal()).eval();
  corr = corr.cwiseMin(1.0).cwiseMax(-1.0).eval();
  corr.diagonal().setOnes();
  corr = ((corr + corr.transpose()) / 2.0).eval();

  const bool repaired = repair_if_indefinite(sigma);

  DgpSpec spec;
  spec.feature_count = p;
  spec.marginals = std::move(marginals);
  spec.target_correlation = std::move(corr);
  spec.underlying_covariance = std::move(sigma);
  spec.column_map = std::move(cols);
  spec.psd_repaired = repaired;
  return spec;
}

}  // namespace simmse
