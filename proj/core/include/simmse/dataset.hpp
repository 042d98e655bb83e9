#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simmse/dgp.hpp"

namespace simmse {

// A real dataset turned into the ingredients of an estimated-correlation
// truth: constant columns dropped, remaining columns standardized to mean 0
// and sd 1, correlation estimated from the standardized columns.
struct DatasetSummary {
  int feature_count = 0;
  long long row_count = 0;
  std::vector<std::string> kept_columns;
  std::vector<std::string> dropped_constant_columns;
  Eigen::MatrixXd standardized;  // row_count x feature_count
  Eigen::MatrixXd correlation;   // feature_count x feature_count, unit diagonal
  double max_abs_pairwise_correlation = 0.0;
};

// Parse a rectangular numeric CSV with a header row. Cells may be quoted and
// padded with spaces; embedded commas are not supported. Rejects missing
// values (empty, NA, NaN), non-numeric or non-finite cells, and ragged rows,
// each with its own message. Columns whose values are all equal are dropped
// and counted. After standardization, any absolute pairwise correlation
// above 0.95 is rejected (the dataset inclusion rule).
DatasetSummary ingest_dataset(const std::string& path);
DatasetSummary ingest_csv_text(const std::string& text);

// Write the standardized columns back out as a CSV that ingest accepts.
// Re-ingesting that file reproduces the correlation matrix within 1e-12.
void write_standardized_csv(const DatasetSummary& summary,
                            const std::string& path);

// The truth implied by a dataset: standard normal features with the
// estimated correlation.
DgpSpec dataset_truth_dgp(const DatasetSummary& summary);

}  // namespace simmse
