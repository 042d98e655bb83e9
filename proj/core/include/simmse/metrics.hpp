#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "simmse/engine.hpp"

namespace simmse {

// Component-wise comparison of one study estimate against the Monte Carlo
// ground truth, plus the per-run aggregates used for cross-run summaries.
struct ErrorReport {
  Eigen::VectorXd absolute;  // estimated - true MSE, per coefficient
  Eigen::VectorXd relative;  // absolute / true MSE, per coefficient
  double run_aggregate = 0.0;         // mean of |relative|
  double signed_run_aggregate = 0.0;  // mean of relative, for directional plots
};

// Relative errors divide by the true MSE, so a zero true MSE against a
// nonzero estimate has no defined relative error; that component is reported
// as NaN and propagates into the aggregates.
ErrorReport component_errors(const MseEstimate& estimate, const TrueMse& truth);

// Boxplot-style summary of the per-repetition aggregates: quartiles by
// linear interpolation, whiskers at the most extreme data within 1.5 IQR of
// the quartiles, everything outside listed as outliers.
struct RepetitionSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
  int count = 0;
};

RepetitionSummary summarize_repetitions(const std::vector<double>& aggregates);

// Linear-interpolation quantile of already-sorted values at prob in [0, 1]
// (the convention summarize_repetitions uses for its quartiles).
double interpolated_quantile(const std::vector<double>& sorted_values,
                             double prob);

// Deviation level at which each plasmode variant stops beating the
// misspecified parametric study: scanning the deviation axis in the given
// order, the first deviation whose parametric median aggregated error
// exceeds the variant's true-model median. Absent when never exceeded.
struct CrossoverResult {
  std::vector<double> deviation_axis;
  std::map<std::string, std::optional<double>> first_worse;
};

// The parametric summaries arrive ordered along the intended scan direction
// (increasing deviation magnitude; grids of shrinking values scanned
// downward), paired with their deviation values.
CrossoverResult crossover(
    const std::vector<std::pair<double, RepetitionSummary>>& parametric_by_deviation,
    const std::map<std::string, RepetitionSummary>& plasmode_baselines);

}  // namespace simmse
