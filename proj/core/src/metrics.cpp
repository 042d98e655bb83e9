#include "simmse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simmse/errors.hpp"

namespace simmse {

ErrorReport component_errors(const MseEstimate& estimate, const TrueMse& truth) {
  const auto d = estimate.per_coefficient.size();
  if (d == 0 || truth.per_coefficient.size() != d) {
    throw InputError("component_errors: estimate and truth dimensions differ");
  }

  ErrorReport report;
  report.absolute = estimate.per_coefficient - truth.per_coefficient;
  report.relative.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double t = truth.per_coefficient(j);
    if (t > 0.0) {
      report.relative(j) = report.absolute(j) / t;
    } else if (t == 0.0) {
      report.relative(j) = report.absolute(j) == 0.0
                               ? 0.0
                               : std::numeric_limits<double>::quiet_NaN();
    } else {
      throw InputError("component_errors: true MSE entries cannot be negative");
    }
  }
  report.run_aggregate = report.relative.cwiseAbs().mean();
  report.signed_run_aggregate = report.relative.mean();
  return report;
}

double interpolated_quantile(const std::vector<double>& sorted_values,
                             double prob) {
  if (sorted_values.empty()) {
    throw InputError("interpolated_quantile: need at least one value");
  }
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw InputError("interpolated_quantile: prob must lie in [0, 1]");
  }
  const auto n = sorted_values.size();
  const double h = prob * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted_values[n - 1];
  const double frac = h - std::floor(h);
  return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

RepetitionSummary summarize_repetitions(const std::vector<double>& aggregates) {
  if (aggregates.empty()) {
    throw InputError("summarize_repetitions: need at least one aggregate");
  }
  for (double v : aggregates) {
    if (!std::isfinite(v)) {
      throw InputError("summarize_repetitions: aggregates must be finite");
    }
  }

  std::vector<double> sorted = aggregates;
  std::sort(sorted.begin(), sorted.end());

  RepetitionSummary s;
  s.count = static_cast<int>(sorted.size());
  s.q1 = interpolated_quantile(sorted, 0.25);
  s.median = interpolated_quantile(sorted, 0.5);
  s.q3 = interpolated_quantile(sorted, 0.75);

  const double iqr = s.q3 - s.q1;
  const double fence_low = s.q1 - 1.5 * iqr;
  const double fence_high = s.q3 + 1.5 * iqr;

  // Whiskers end at the most extreme data still inside the fences; at least
  // the quartiles themselves are inside, so both ends exist.
  s.whisker_low = s.q3;
  s.whisker_high = s.q1;
  for (double v : sorted) {
    if (v >= fence_low && v <= fence_high) {
      s.whisker_low = std::min(s.whisker_low, v);
      s.whisker_high = std::max(s.whisker_high, v);
    } else {
      s.outliers.push_back(v);
    }
  }
  return s;
}

CrossoverResult crossover(
    const std::vector<std::pair<double, RepetitionSummary>>& parametric_by_deviation,
    const std::map<std::string, RepetitionSummary>& plasmode_baselines) {
  if (parametric_by_deviation.empty()) {
    throw InputError("crossover: the deviation axis is empty");
  }

  CrossoverResult result;
  result.deviation_axis.reserve(parametric_by_deviation.size());
  for (const auto& [value, summary] : parametric_by_deviation) {
    (void)summary;
    result.deviation_axis.push_back(value);
  }

  for (const auto& [variant, baseline] : plasmode_baselines) {
    std::optional<double> first;
    for (const auto& [value, summary] : parametric_by_deviation) {
      if (summary.median > baseline.median) {
        first = value;
        break;
      }
    }
    result.first_worse.emplace(variant, first);
  }
  return result;
}

}  // namespace simmse
