#include "simmse/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simmse/errors.hpp"

namespace simmse {
namespace {

constexpr double kMaxPairwiseCorrelation = 0.95;

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
  while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
  return s.substr(b, e - b);
}

std::string strip_quotes(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    s = s.substr(1, s.size() - 2);
  }
  return trim(s);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(strip_quotes(trim(current)));
      current.clear();
    } else {
      current += c;
    }
  }
  cells.push_back(strip_quotes(trim(current)));
  return cells;
}

bool is_missing_token(const std::string& cell) {
  if (cell.empty()) return true;
  std::string lower;
  lower.reserve(cell.size());
  for (char c : cell) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "na" || lower == "nan" || lower == "n/a" || lower == "null";
}

double parse_cell(const std::string& cell, long long row, const std::string& column) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InputError("non-numeric cell \"" + cell + "\" in column \"" + column +
                     "\", data row " + std::to_string(row));
  }
  if (!std::isfinite(value)) {
    throw InputError("non-finite value \"" + cell + "\" in column \"" + column +
                     "\", data row " + std::to_string(row));
  }
  return value;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty() && current.back() == '\r') current.pop_back();
  if (!current.empty()) lines.push_back(current);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

DatasetSummary ingest_csv_text(const std::string& text) {
  std::string body = text;
  if (body.size() >= 3 && static_cast<unsigned char>(body[0]) == 0xEF &&
      static_cast<unsigned char>(body[1]) == 0xBB &&
      static_cast<unsigned char>(body[2]) == 0xBF) {
    body.erase(0, 3);
  }
  const std::vector<std::string> lines = split_lines(body);
  if (lines.size() < 3) {
    throw InputError("dataset needs a header row and at least two data rows");
  }

  const std::vector<std::string> header = split_cells(lines[0]);
  const std::size_t width = header.size();
  for (std::size_t j = 0; j < width; ++j) {
    if (header[j].empty()) {
      throw InputError("empty column name at header position " + std::to_string(j + 1));
    }
  }

  const long long rows = static_cast<long long>(lines.size()) - 1;
  Eigen::MatrixXd raw(rows, static_cast<Eigen::Index>(width));
  for (long long i = 0; i < rows; ++i) {
    const std::vector<std::string> cells = split_cells(lines[static_cast<std::size_t>(i + 1)]);
    if (cells.size() != width) {
      throw InputError("data row " + std::to_string(i + 1) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(width));
    }
    for (std::size_t j = 0; j < width; ++j) {
      if (is_missing_token(cells[j])) {
        throw InputError("missing value in column \"" + header[j] + "\", data row " +
                         std::to_string(i + 1));
      }
      raw(i, static_cast<Eigen::Index>(j)) = parse_cell(cells[j], i + 1, header[j]);
    }
  }

  DatasetSummary summary;
  summary.row_count = rows;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    if (raw.col(j).maxCoeff() == raw.col(j).minCoeff()) {
      summary.dropped_constant_columns.push_back(header[static_cast<std::size_t>(j)]);
    } else {
      kept.push_back(j);
      summary.kept_columns.push_back(header[static_cast<std::size_t>(j)]);
    }
  }
  if (kept.empty()) {
    throw InputError("every column is constant; nothing to ingest");
  }

  const Eigen::Index p = static_cast<Eigen::Index>(kept.size());
  summary.feature_count = static_cast<int>(p);
  summary.standardized.resize(rows, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::VectorXd col = raw.col(kept[static_cast<std::size_t>(j)]);
    const double mean = col.mean();
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(rows - 1));
    summary.standardized.col(j) = col / sd;
  }

  Eigen::MatrixXd corr = summary.standardized.transpose() * summary.standardized /
                         static_cast<double>(rows - 1);
  corr = ((corr + corr.transpose()) / 2.0).eval();
  corr.diagonal().setOnes();

  double max_abs = 0.0;
  Eigen::Index worst_i = 0;
  Eigen::Index worst_j = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double a = std::abs(corr(i, j));
      if (a > max_abs) {
        max_abs = a;
        worst_i = i;
        worst_j = j;
      }
    }
  }
  if (max_abs > kMaxPairwiseCorrelation) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", max_abs);
    throw InputError("columns \"" + summary.kept_columns[static_cast<std::size_t>(worst_i)] +
                     "\" and \"" + summary.kept_columns[static_cast<std::size_t>(worst_j)] +
                     "\" have absolute correlation " + buf + ", above the 0.95 bound");
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (i != j) corr(i, j) = std::clamp(corr(i, j), -1.0, 1.0);
    }
  }
  summary.correlation = corr;
  summary.max_abs_pairwise_correlation = max_abs;
  return summary;
}

DatasetSummary ingest_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open dataset file \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_csv_text(buffer.str());
}

void write_standardized_csv(const DatasetSummary& summary, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write dataset file \"" + path + "\"");
  }
  for (std::size_t j = 0; j < summary.kept_columns.size(); ++j) {
    if (j > 0) out << ',';
    out << summary.kept_columns[j];
  }
  out << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < summary.standardized.rows(); ++i) {
    for (Eigen::Index j = 0; j < summary.standardized.cols(); ++j) {
      if (j > 0) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", summary.standardized(i, j));
      out << buf;
    }
    out << '\n';
  }
}

DgpSpec dataset_truth_dgp(const DatasetSummary& summary) {
  return standard_normal_dgp(summary.feature_count,
                             ExplicitCorrelation{summary.correlation});
}

}  // namespace simmse
