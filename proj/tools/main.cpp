// Command line front end: parse a sweep config (or a named preset), run the
// truth oracles and the studies, and emit the result bundle.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "simmse/config.hpp"
#include "simmse/dataset.hpp"
#include "simmse/errors.hpp"
#include "simmse/sweep.hpp"
#include "simmse/version.hpp"

namespace {

using nlohmann::json;

struct InputSelection {
  std::string config_path;  // empty when a preset is used
  std::string preset;
};

struct Overrides {
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<long long> truth_reps;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw simmse::InputError("cannot open config file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Overrides are folded into the JSON before parsing so the manifest's config
// echo describes the run exactly as it executed.
simmse::SweepConfig load_config(const InputSelection& input, const Overrides& overrides) {
  if (input.config_path.empty() == input.preset.empty()) {
    throw simmse::InputError("give exactly one of a config file or --preset");
  }
  std::string text;
  std::string base_dir;
  if (!input.preset.empty()) {
    text = simmse::preset_json(input.preset);
    base_dir = ".";
  } else {
    text = read_file(input.config_path);
    base_dir = std::filesystem::path(input.config_path).parent_path().string();
  }

  std::optional<int> workers = overrides.workers;
  if (!workers) {
    if (const char* env = std::getenv("SIMMSE_WORKERS")) {
      try {
        workers = std::stoi(env);
      } catch (const std::exception&) {
        throw simmse::InputError("SIMMSE_WORKERS must be an integer, got \"" +
                                 std::string(env) + "\"");
      }
    }
  }

  if (workers || overrides.seed || overrides.truth_reps) {
    json root;
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw simmse::InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (workers) root["runtime"]["workers"] = *workers;
    if (overrides.seed) root["runtime"]["masterSeed"] = *overrides.seed;
    if (overrides.truth_reps) root["runtime"]["truthReplications"] = *overrides.truth_reps;
    text = root.dump();
  }
  return simmse::parse_sweep_config(text, base_dir);
}

json oracle_json(const simmse::SweepConfig& config,
                 const std::vector<simmse::ScenarioTruth>& truths) {
  json scenarios = json::array();
  for (std::size_t s = 0; s < config.scenarios.size(); ++s) {
    const simmse::ScenarioConfig& scen = config.scenarios[s];
    const simmse::TrueMse& mse = truths[s].mse;
    scenarios.push_back(
        json{{"name", scen.name},
             {"p", scen.p},
             {"n", scen.n},
             {"truthHash", truths[s].hash},
             {"perCoefficient",
              std::vector<double>(mse.per_coefficient.data(),
                                  mse.per_coefficient.data() + mse.per_coefficient.size())},
             {"standardErrors",
              std::vector<double>(mse.standard_errors.data(),
                                  mse.standard_errors.data() + mse.standard_errors.size())},
             {"replications", mse.replications},
             {"rankDeficientSkipped", mse.rank_deficient_skipped}});
  }
  return json{{"scenarios", std::move(scenarios)}, {"skipped", config.skipped}};
}

int exit_status(const std::vector<std::string>& skipped) {
  for (const std::string& message : skipped) {
    std::cerr << "skipped: " << message << '\n';
  }
  return skipped.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo comparison of parametric and plasmode simulation "
               "studies of least-squares MSE"};
  app.set_version_flag("--version", std::string("simmse ") + simmse::kVersion);
  app.require_subcommand(1);

  InputSelection input;
  Overrides overrides;
  std::string out_dir;
  std::string csv_path;
  std::string preset_name;

  auto add_config_options = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("config", input.config_path, "sweep config JSON file");
    cmd->add_option("--preset", input.preset, "named preset instead of a config file");
    if (needs_out) {
      cmd->add_option("--out", out_dir, "output directory for the result bundle")
          ->required();
    }
    cmd->add_option("--workers", overrides.workers,
                    "worker threads (overrides SIMMSE_WORKERS and the config)");
    cmd->add_option("--seed", overrides.seed, "master seed override");
    cmd->add_option("--truth-reps", overrides.truth_reps,
                    "truth oracle replications override");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run the sweep and write the bundle");
  add_config_options(run_cmd, true);

  CLI::App* truth_cmd =
      app.add_subcommand("truth", "compute only the truth oracles, print JSON");
  add_config_options(truth_cmd, false);

  CLI::App* ingest_cmd =
      app.add_subcommand("ingest", "validate and summarize a dataset CSV");
  ingest_cmd->add_option("csv", csv_path, "dataset CSV file")->required();

  CLI::App* preset_cmd = app.add_subcommand("preset", "print a named preset config");
  preset_cmd->add_option("name", preset_name, "preset name (table4)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      simmse::SweepConfig config = load_config(input, overrides);
      simmse::SweepResult result = simmse::run_sweep(config);
      simmse::emit_results(result, out_dir);
      std::cout << "wrote " << result.runs.size() << " runs over "
                << config.scenarios.size() << " scenario(s) to " << out_dir << '\n';
      return exit_status(result.skipped);
    }
    if (truth_cmd->parsed()) {
      simmse::SweepConfig config = load_config(input, overrides);
      std::vector<simmse::ScenarioTruth> truths = simmse::compute_truths(config);
      std::cout << oracle_json(config, truths).dump(2) << '\n';
      return exit_status(config.skipped);
    }
    if (ingest_cmd->parsed()) {
      const simmse::DatasetSummary summary = simmse::ingest_dataset(csv_path);
      json report{{"featureCount", summary.feature_count},
                  {"rowCount", summary.row_count},
                  {"keptColumns", summary.kept_columns},
                  {"droppedConstantColumns", summary.dropped_constant_columns},
                  {"maxAbsPairwiseCorrelation", summary.max_abs_pairwise_correlation}};
      std::cout << report.dump(2) << '\n';
      return 0;
    }
    if (preset_cmd->parsed()) {
      std::cout << simmse::preset_json(preset_name);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
