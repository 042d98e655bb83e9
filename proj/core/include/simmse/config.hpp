#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simmse/dgp.hpp"
#include "simmse/ogm.hpp"
#include "simmse/resampling.hpp"

namespace simmse {

struct RuntimeConfig {
  int n_mse = 100;
  int n_mod = 1000;
  long long truth_replications = 1'000'000;
  std::uint64_t master_seed = 1;
  int workers = 1;
};

// One way of running a study: fit the assumed model parametrically, fit it
// parametrically from moments estimated on a large plug-in sample, or skip
// the model and resample a source dataset (Plasmode).
struct SimulationVariant {
  enum class Kind { kParametric, kPluginParametric, kPlasmode };
  Kind kind = Kind::kParametric;
  std::string name;
  ResampleStrategy strategy = ResampleStrategy::kNone;
  double proportion = 1.0;
  std::optional<int> source_size;  // overrides the derived source size
  int est_sample_size = 1000;      // plug-in moment estimation sample
};

// One point of one deviation grid, fully resolved: what the study assumes.
// Cells that leave the feature model alone (coefficients, error scale or
// shape) run under every variant; cells that change the feature model only
// make sense for the parametric variant.
struct DeviationCell {
  std::string kind;   // "true", "errorSd", "correlation", ...
  std::string label;  // "errorSd=0.1", comma free, unique per scenario
  double axis_value = 0.0;
  bool has_axis_value = false;
  bool affects_dgp = false;
  std::optional<DgpSpec> assumed_dgp;  // empty: assume the truth's DGP
  OgmSpec assumed_ogm;
};

// A deviation grid whose scan order defines a crossover search: at which
// grid value does the parametric study first lose to a Plasmode baseline.
struct CrossoverAxis {
  std::string kind;
  std::string true_value;          // printed in the crossover table
  std::vector<int> cell_indices;   // into ScenarioConfig::deviations, scan order
};

struct ScenarioConfig {
  std::string name;
  int p = 0;
  int n = 0;
  DgpSpec truth_dgp;
  OgmSpec truth_ogm;
  std::string correlation_label;
  std::vector<SimulationVariant> variants;
  std::vector<DeviationCell> deviations;  // [0] is always the true model
  std::vector<CrossoverAxis> crossover_axes;
};

struct SweepConfig {
  std::vector<ScenarioConfig> scenarios;
  RuntimeConfig runtime;
  std::string echo_json;  // normalized config text, reproduced in the manifest
  // Entries that could not be built (infeasible correlations, missing
  // dataset files). The sweep still runs; their presence flips the exit
  // status so callers notice.
  std::vector<std::string> skipped;
};

// True when the cell's assumptions can be simulated under this variant.
bool cell_applies(const DeviationCell& cell, const SimulationVariant& variant);

// Parse a sweep description from JSON text. Relative dataset paths resolve
// against base_dir. Accepts either a single scenario object or
// {"scenarios": [...], "runtime": {...}}.
SweepConfig parse_sweep_config(const std::string& json_text,
                               const std::string& base_dir);
SweepConfig load_sweep_config_file(const std::string& path);

// The full deviation catalog over all twelve baseline scenarios, as JSON
// text; parse_sweep_config accepts it verbatim. Scenarios built from real
// datasets expect the files under datasets/ and are skipped when absent.
std::string table4_preset_json();

// Names of presets known to preset_json/--preset.
std::vector<std::string> preset_names();
std::string preset_json(const std::string& name);

}  // namespace simmse
