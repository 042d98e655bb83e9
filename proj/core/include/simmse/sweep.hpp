#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simmse/config.hpp"
#include "simmse/engine.hpp"
#include "simmse/metrics.hpp"

namespace simmse {

// One study repetition of one (scenario, variant, deviation) cell.
struct RunRecord {
  int scenario_index = 0;
  int variant_index = 0;
  int cell_index = 0;
  int repetition = 0;
  MseEstimate estimate;
  ErrorReport errors;
};

// Boxplot summaries of the per-repetition aggregates for one cell.
struct CellSummary {
  int scenario_index = 0;
  int variant_index = 0;
  int cell_index = 0;
  RepetitionSummary abs_relative;
  RepetitionSummary signed_relative;
};

struct ScenarioTruth {
  std::string hash;  // 16 hex digits, content hash of (DGP, OGM, n)
  TrueMse mse;
};

struct CrossoverTableRow {
  int scenario_index = 0;
  std::string kind;
  std::string true_value;
  // Variant name to the first deviation value where the parametric study's
  // median aggregated error exceeds that variant's true-model median.
  std::map<std::string, std::optional<double>> first_worse;
};

struct SweepResult {
  SweepConfig config;
  std::vector<ScenarioTruth> truths;          // one per scenario
  std::vector<RunRecord> runs;                // scenario/variant/cell/rep order
  std::vector<CellSummary> summaries;         // scenario/variant/cell order
  std::vector<CrossoverTableRow> crossovers;  // scenario/axis order
  std::vector<std::string> skipped;
};

// Content hash of everything the truth oracle depends on. Scenarios that
// share it share both the cached oracle result and its random streams, so
// equal truths give bitwise equal ground truth wherever they appear.
std::uint64_t truth_content_hash(const DgpSpec& dgp, const OgmSpec& ogm, int n);

// Per-scenario seed derived from the master seed and the scenario's position;
// all cells of a scenario share it, which couples their draws the way the
// engine expects (same designs and noise under every assumed model).
std::uint64_t scenario_seed(std::uint64_t master_seed, int scenario_index);

// The truth oracles alone (also the first phase of run_sweep).
std::vector<ScenarioTruth> compute_truths(const SweepConfig& config);

// Runs every applicable (scenario, variant, deviation, repetition) study.
// Results are identical for any worker count. Throws EngineFailure when an
// oracle or study cannot produce a result at all.
SweepResult run_sweep(const SweepConfig& config);

// Writes runs.csv, summary.csv, crossover.csv, and manifest.json into
// out_dir (created if needed). Rerunning the same result writes byte
// identical files.
void emit_results(const SweepResult& result, const std::string& out_dir);

}  // namespace simmse
