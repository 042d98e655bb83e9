#pragma once

#include <variant>

#include <Eigen/Dense>

#include "simmse/dgp.hpp"
#include "simmse/rng.hpp"

namespace simmse {

// ---------------------------------------------------------------------------
// Error distributions. Every kind is centered and parameterized by its
// standard deviation, so swapping the shape never changes the first two
// moments of the noise.
// ---------------------------------------------------------------------------

struct NormalError {
  double sd = 1.0;
};

// Student t with df > 2, rescaled so the sd is target_sd instead of
// sqrt(df / (df - 2)).
struct ScaledTError {
  double df;
  double target_sd;
};

// Chi-squared with df >= 1, centered at zero and rescaled from sd sqrt(2 df)
// to target_sd. Skewed noise with controlled moments.
struct ShiftedScaledChiSqError {
  double df;
  double target_sd;
};

using ErrorDistSpec =
    std::variant<NormalError, ScaledTError, ShiftedScaledChiSqError>;

// The population sd of the distribution (the sd/target_sd parameter).
double error_sd(const ErrorDistSpec& spec);

// Throws InputError when the parameters are out of range (t needs df > 2 for
// a finite variance, chi-squared needs df >= 1, sd must not be negative).
// A zero sd is legal here as an exactness hook; configuration-level
// validation is stricter and requires sd > 0.
void validate_error_dist(const ErrorDistSpec& spec);

// Draws with the spec's shape but unit sd: the sd factors out of every kind,
// and callers that scale the noise (or fold a variance in later) multiply by
// error_sd themselves. sample_errors is exactly error_sd * sample_unit_errors
// on the same stream.
Eigen::VectorXd sample_unit_errors(const ErrorDistSpec& spec, int n,
                                   RngStream& stream);
Eigen::VectorXd sample_errors(const ErrorDistSpec& spec, int n, RngStream& stream);

// ---------------------------------------------------------------------------
// Outcome model and least squares.
// ---------------------------------------------------------------------------

// y = X beta + eps. beta has length p + 1, intercept coefficient first,
// matching DesignMatrix's leading ones column.
struct OgmSpec {
  Eigen::VectorXd beta;
  ErrorDistSpec error_dist;
};

Eigen::VectorXd generate_outcome(const DesignMatrix& design, const OgmSpec& ogm,
                                 RngStream& stream);

struct LseFit {
  Eigen::VectorXd beta_hat;
  bool rank_deficient = false;
};

// Least-squares coefficients via a column-pivoted QR factorization. Rank
// deficiency (numerical rank below the column count, threshold scaled by
// max(rows, cols) times machine epsilon) is reported in the result rather
// than thrown, so repetition loops can count and skip degenerate draws.
LseFit fit_lse(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

inline LseFit fit_lse(const DesignMatrix& design, const Eigen::VectorXd& y) {
  return fit_lse(design.values, y);
}

}  // namespace simmse
