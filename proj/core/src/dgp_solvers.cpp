#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "simmse/dgp.hpp"
#include "simmse/errors.hpp"
#include "simmse/normal.hpp"

namespace simmse {
namespace {

void require_prob(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": success probability must lie strictly in (0, 1)");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": variance must be positive");
  }
}

void require_rho(double rho, const char* what) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": target correlation must lie in [-1, 1]");
  }
}

[[noreturn]] void throw_infeasible(const char* what, double rho, double lo, double hi) {
  std::ostringstream msg;
  msg << what << ": target correlation " << rho << " is outside the attainable range ["
      << lo << ", " << hi << "]";
  throw InfeasibleCorrelation(msg.str(), lo, hi);
}

// Tolerance for attainable-range boundary comparisons; keeps exact boundary
// requests feasible in the face of rounding.
constexpr double kRangeSlack = 1e-12;

}  // namespace

double solve_bernoulli_pair(double prob1, double prob2, double rho) {
  require_prob(prob1, "solve_bernoulli_pair");
  require_prob(prob2, "solve_bernoulli_pair");
  require_rho(rho, "solve_bernoulli_pair");

  const double joint_indep = prob1 * prob2;
  const double denom =
      std::sqrt(prob1 * (1.0 - prob1) * prob2 * (1.0 - prob2));
  // Frechet bounds on the joint probability give the attainable correlations;
  // the underlying normal family attains both ends at correlation +-1.
  const double rho_hi = (std::min(prob1, prob2) - joint_indep) / denom;
  const double rho_lo = (std::max(0.0, prob1 + prob2 - 1.0) - joint_indep) / denom;
  if (rho < rho_lo - kRangeSlack || rho > rho_hi + kRangeSlack) {
    throw_infeasible("solve_bernoulli_pair", rho, rho_lo, rho_hi);
  }
  if (rho == 0.0) return 0.0;

  const double target = rho * denom + joint_indep;
  const double u1 = normal_quantile(prob1);
  const double u2 = normal_quantile(prob2);

  // Grid search over the underlying correlation, step 1e-4, ties broken
  // toward the smaller magnitude. The endpoints use the degenerate limits.
  double best_sigma = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = -10000; i <= 10000; ++i) {
    const double sigma = i * 1e-4;
    double joint;
    if (i == -10000) {
      joint = std::max(0.0, prob1 + prob2 - 1.0);
    } else if (i == 10000) {
      joint = std::min(prob1, prob2);
    } else {
      joint = bvn_cdf(u1, u2, sigma);
    }
    const double err = std::abs(joint - target);
    if (err < best_err ||
        (err == best_err && std::abs(sigma) < std::abs(best_sigma))) {
      best_err = err;
      best_sigma = sigma;
    }
  }
  return best_sigma;
}

double solve_bernoulli_normal(double prob, double normal_variance, double rho) {
  require_prob(prob, "solve_bernoulli_normal");
  require_positive(normal_variance, "solve_bernoulli_normal");
  require_rho(rho, "solve_bernoulli_normal");

  const double u = normal_quantile(prob);
  const double density = normal_pdf(u);
  const double spread = std::sqrt(prob * (1.0 - prob));
  // The indicator 1{X <= u} decreases in X, hence the sign flip.
  const double rho_cap = density / spread;
  if (std::abs(rho) > rho_cap + kRangeSlack) {
    throw_infeasible("solve_bernoulli_normal", rho, -rho_cap, rho_cap);
  }
  return -rho * std::sqrt(normal_variance) * spread / density;
}

double solve_lognormal_pair(double log_var1, double log_var2, double rho) {
  require_positive(log_var1, "solve_lognormal_pair");
  require_positive(log_var2, "solve_lognormal_pair");
  require_rho(rho, "solve_lognormal_pair");

  const double scale =
      std::sqrt((std::exp(log_var1) - 1.0) * (std::exp(log_var2) - 1.0));
  // The underlying covariance must stay within +-sd1 sd2, which maps to this
  // correlation window after exponentiation.
  const double cap = std::sqrt(log_var1 * log_var2);
  const double rho_lo = (std::exp(-cap) - 1.0) / scale;
  const double rho_hi = (std::exp(cap) - 1.0) / scale;
  if (rho < rho_lo - kRangeSlack || rho > rho_hi + kRangeSlack) {
    throw_infeasible("solve_lognormal_pair", rho, rho_lo, rho_hi);
  }
  return std::log(rho * scale + 1.0);
}

double solve_lognormal_normal(double log_mean, double log_var,
                              double normal_variance, double rho) {
  require_positive(log_var, "solve_lognormal_normal");
  require_positive(normal_variance, "solve_lognormal_normal");
  require_rho(rho, "solve_lognormal_normal");

  const double rho_cap = std::sqrt(log_var / (std::exp(log_var) - 1.0));
  if (std::abs(rho) > rho_cap + kRangeSlack) {
    throw_infeasible("solve_lognormal_normal", rho, -rho_cap, rho_cap);
  }
  // Published form; the location parameter cancels between the numerator and
  // the log-normal standard deviation in the denominator.
  const double lognormal_var =
      (std::exp(log_var) - 1.0) * std::exp(2.0 * log_mean + log_var);
  return rho * std::sqrt(normal_variance * lognormal_var) /
         std::exp(log_mean + 0.5 * log_var);
}

namespace {

void require_mixture(const GaussianMixtureMarginal& mix, const char* what) {
  if (!(mix.weight >= 0.0 && mix.weight <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": mixture weight must lie in [0, 1]");
  }
  require_positive(mix.first.variance, what);
  require_positive(mix.second.variance, what);
}

}  // namespace

double solve_mixture_normal(const GaussianMixtureMarginal& mix,
                            double normal_variance, double rho) {
  require_mixture(mix, "solve_mixture_normal");
  require_positive(normal_variance, "solve_mixture_normal");
  require_rho(rho, "solve_mixture_normal");

  const double v = mixture_variance(mix);
  // Both component columns share the covariance against the normal, so each
  // active component's own scale caps the attainable correlation.
  double cap_sd = std::numeric_limits<double>::infinity();
  if (mix.weight > 0.0) cap_sd = std::min(cap_sd, std::sqrt(mix.first.variance));
  if (mix.weight < 1.0) cap_sd = std::min(cap_sd, std::sqrt(mix.second.variance));
  const double rho_cap = cap_sd / std::sqrt(v);
  if (std::abs(rho) > rho_cap + kRangeSlack) {
    throw_infeasible("solve_mixture_normal", rho, -rho_cap, rho_cap);
  }
  return rho * std::sqrt(normal_variance * v);
}

double solve_mixture_pair(const GaussianMixtureMarginal& mix1,
                          const GaussianMixtureMarginal& mix2, double rho) {
  require_mixture(mix1, "solve_mixture_pair");
  require_mixture(mix2, "solve_mixture_pair");
  require_rho(rho, "solve_mixture_pair");

  const double v1 = mixture_variance(mix1);
  const double v2 = mixture_variance(mix2);
  double cap_sd1 = std::numeric_limits<double>::infinity();
  if (mix1.weight > 0.0) cap_sd1 = std::min(cap_sd1, std::sqrt(mix1.first.variance));
  if (mix1.weight < 1.0) cap_sd1 = std::min(cap_sd1, std::sqrt(mix1.second.variance));
  double cap_sd2 = std::numeric_limits<double>::infinity();
  if (mix2.weight > 0.0) cap_sd2 = std::min(cap_sd2, std::sqrt(mix2.first.variance));
  if (mix2.weight < 1.0) cap_sd2 = std::min(cap_sd2, std::sqrt(mix2.second.variance));

  const double rho_cap = cap_sd1 * cap_sd2 / std::sqrt(v1 * v2);
  if (std::abs(rho) > rho_cap + kRangeSlack) {
    throw_infeasible("solve_mixture_pair", rho, -rho_cap, rho_cap);
  }
  return rho * std::sqrt(v1 * v2);
}

}  // namespace simmse
