#pragma once

#include <stdexcept>
#include <string>

namespace simmse {

// A requested target correlation cannot be reached by any underlying normal
// covariance for the given pair of marginals. Carries the attainable range so
// callers can report actionable bounds.
class InfeasibleCorrelation : public std::runtime_error {
 public:
  InfeasibleCorrelation(const std::string& what, double attainable_low,
                        double attainable_high)
      : std::runtime_error(what),
        attainable_low_(attainable_low),
        attainable_high_(attainable_high) {}

  [[nodiscard]] double attainable_low() const noexcept { return attainable_low_; }
  [[nodiscard]] double attainable_high() const noexcept { return attainable_high_; }

 private:
  double attainable_low_;
  double attainable_high_;
};

// Raised when a study or oracle cannot produce a usable result at all,
// e.g. every Monte Carlo replication was rank deficient.
class EngineFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for malformed or unusable user inputs: config files, datasets.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace simmse
