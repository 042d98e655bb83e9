#include "simmse/sweep.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <variant>

#include <json.hpp>

#include "simmse/errors.hpp"
#include "simmse/parallel.hpp"
#include "simmse/version.hpp"

namespace simmse {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Content hashing. The serialization is textual (%.17g) so the hash is
// stable across platforms that round-trip doubles identically.
// ---------------------------------------------------------------------------

void put(std::string& out, const std::string& token) {
  out += token;
  out += '|';
}

void put_num(std::string& out, double v) { put(out, fmt17(v)); }

void put_marginal(std::string& out, const MarginalSpec& marginal) {
  if (const auto* n = std::get_if<NormalMarginal>(&marginal)) {
    put(out, "N");
    put_num(out, n->mean);
    put_num(out, n->variance);
  } else if (const auto* b = std::get_if<BernoulliMarginal>(&marginal)) {
    put(out, "B");
    put_num(out, b->prob);
  } else if (const auto* l = std::get_if<LogNormalMarginal>(&marginal)) {
    put(out, "L");
    put_num(out, l->log_mean);
    put_num(out, l->log_variance);
  } else {
    const auto& m = std::get<GaussianMixtureMarginal>(marginal);
    put(out, "M");
    put_num(out, m.weight);
    put_num(out, m.first.mean);
    put_num(out, m.first.variance);
    put_num(out, m.second.mean);
    put_num(out, m.second.variance);
  }
}

void put_error_dist(std::string& out, const ErrorDistSpec& dist) {
  if (const auto* n = std::get_if<NormalError>(&dist)) {
    put(out, "normal");
    put_num(out, n->sd);
  } else if (const auto* t = std::get_if<ScaledTError>(&dist)) {
    put(out, "t");
    put_num(out, t->df);
    put_num(out, t->target_sd);
  } else {
    const auto& chi = std::get<ShiftedScaledChiSqError>(dist);
    put(out, "chiSq");
    put_num(out, chi.df);
    put_num(out, chi.target_sd);
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Task layout.
// ---------------------------------------------------------------------------

struct Cell {
  int scenario_index;
  int variant_index;
  int cell_index;
  StudyConfig study;
};

std::vector<Cell> build_cells(const SweepConfig& config) {
  std::vector<Cell> cells;
  for (int s = 0; s < static_cast<int>(config.scenarios.size()); ++s) {
    const ScenarioConfig& scen = config.scenarios[s];
    const std::uint64_t seed = scenario_seed(config.runtime.master_seed, s);
    for (int v = 0; v < static_cast<int>(scen.variants.size()); ++v) {
      const SimulationVariant& variant = scen.variants[v];
      for (int d = 0; d < static_cast<int>(scen.deviations.size()); ++d) {
        const DeviationCell& cell = scen.deviations[d];
        if (!cell_applies(cell, variant)) continue;
        StudyConfig study;
        study.truth_dgp = scen.truth_dgp;
        study.truth_ogm = scen.truth_ogm;
        study.assumed_ogm = cell.assumed_ogm;
        study.n = scen.n;
        study.n_mse = config.runtime.n_mse;
        study.n_mod = config.runtime.n_mod;
        study.master_seed = seed;
        if (variant.kind == SimulationVariant::Kind::kParametric) {
          study.assumed_dgp = cell.assumed_dgp ? *cell.assumed_dgp : scen.truth_dgp;
        } else if (variant.kind == SimulationVariant::Kind::kPlasmode) {
          ResamplePlan plan = make_resample_plan(variant.strategy, scen.n,
                                                 variant.proportion);
          if (variant.source_size) plan.source_size = *variant.source_size;
          study.plan = plan;
        }
        cells.push_back(Cell{s, v, d, std::move(study)});
      }
    }
  }
  return cells;
}

}  // namespace

std::uint64_t truth_content_hash(const DgpSpec& dgp, const OgmSpec& ogm, int n) {
  std::string s;
  s.reserve(256 + 24 * static_cast<std::size_t>(dgp.target_correlation.size()));
  put(s, "truth");
  put_num(s, dgp.feature_count);
  for (const MarginalSpec& m : dgp.marginals) put_marginal(s, m);
  put(s, "corr");
  for (Eigen::Index i = 0; i < dgp.target_correlation.rows(); ++i) {
    for (Eigen::Index j = 0; j < dgp.target_correlation.cols(); ++j) {
      put_num(s, dgp.target_correlation(i, j));
    }
  }
  put(s, "beta");
  for (Eigen::Index i = 0; i < ogm.beta.size(); ++i) put_num(s, ogm.beta(i));
  put_error_dist(s, ogm.error_dist);
  put_num(s, n);
  return fnv1a(s);
}

std::uint64_t scenario_seed(std::uint64_t master_seed, int scenario_index) {
  return splitmix64(splitmix64(master_seed) ^
                    (0x7363656eULL + static_cast<std::uint64_t>(scenario_index)));
}

std::vector<ScenarioTruth> compute_truths(const SweepConfig& config) {
  std::vector<ScenarioTruth> truths;
  std::map<std::uint64_t, TrueMse> cache;
  const StreamKey root = master_key(config.runtime.master_seed);
  for (const ScenarioConfig& scen : config.scenarios) {
    const std::uint64_t h = truth_content_hash(scen.truth_dgp, scen.truth_ogm, scen.n);
    auto it = cache.find(h);
    if (it == cache.end()) {
      // Keyed by content, not position: reordering scenarios or adding new
      // ones never changes an existing oracle.
      const StreamKey key = root.child(stream_role::kTruth).child(h);
      TruthOptions options;
      options.workers = config.runtime.workers;
      TrueMse mse = estimate_true_mse(scen.truth_dgp, scen.truth_ogm, scen.n,
                                      config.runtime.truth_replications, key, options);
      it = cache.emplace(h, std::move(mse)).first;
    }
    truths.push_back(ScenarioTruth{hash_hex(h), it->second});
  }
  return truths;
}

SweepResult run_sweep(const SweepConfig& config) {
  SweepResult result;
  result.config = config;
  result.skipped = config.skipped;
  result.truths = compute_truths(config);

  const std::vector<Cell> cells = build_cells(config);
  const int n_mse = config.runtime.n_mse;
  const long long task_count = static_cast<long long>(cells.size()) * n_mse;
  result.runs.resize(static_cast<std::size_t>(task_count));

  parallel_chunks(static_cast<int>(task_count), config.runtime.workers, [&](int t) {
    const Cell& cell = cells[static_cast<std::size_t>(t) / n_mse];
    const int k = t % n_mse;
    const ScenarioConfig& scen = result.config.scenarios[cell.scenario_index];
    const SimulationVariant& variant = scen.variants[cell.variant_index];

    MseEstimate estimate;
    switch (variant.kind) {
      case SimulationVariant::Kind::kParametric:
        estimate = run_parametric_study(cell.study, k);
        break;
      case SimulationVariant::Kind::kPluginParametric: {
        StudyConfig study = cell.study;
        const StreamKey key = master_key(study.master_seed)
                                  .child(stream_role::kPlugin)
                                  .child(static_cast<std::uint64_t>(k));
        study.assumed_dgp =
            estimate_plugin_dgp(study.truth_dgp, variant.est_sample_size, key);
        estimate = run_parametric_study(study, k);
        break;
      }
      case SimulationVariant::Kind::kPlasmode:
        estimate = run_plasmode_study(cell.study, k);
        break;
    }

    RunRecord record;
    record.scenario_index = cell.scenario_index;
    record.variant_index = cell.variant_index;
    record.cell_index = cell.cell_index;
    record.repetition = k;
    record.errors =
        component_errors(estimate, result.truths[cell.scenario_index].mse);
    record.estimate = std::move(estimate);
    result.runs[static_cast<std::size_t>(t)] = std::move(record);
  });

  // Summaries, one per cell, in run order.
  std::map<std::array<int, 3>, int> summary_index;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    std::vector<double> abs_agg(static_cast<std::size_t>(n_mse));
    std::vector<double> signed_agg(static_cast<std::size_t>(n_mse));
    for (int k = 0; k < n_mse; ++k) {
      const RunRecord& r = result.runs[c * static_cast<std::size_t>(n_mse) + k];
      abs_agg[static_cast<std::size_t>(k)] = r.errors.run_aggregate;
      signed_agg[static_cast<std::size_t>(k)] = r.errors.signed_run_aggregate;
    }
    CellSummary summary;
    summary.scenario_index = cell.scenario_index;
    summary.variant_index = cell.variant_index;
    summary.cell_index = cell.cell_index;
    summary.abs_relative = summarize_repetitions(abs_agg);
    summary.signed_relative = summarize_repetitions(signed_agg);
    summary_index[{cell.scenario_index, cell.variant_index, cell.cell_index}] =
        static_cast<int>(result.summaries.size());
    result.summaries.push_back(std::move(summary));
  }

  // Crossover rows: parametric medians along each axis against every
  // plasmode variant's true-model median.
  for (int s = 0; s < static_cast<int>(config.scenarios.size()); ++s) {
    const ScenarioConfig& scen = config.scenarios[s];
    int parametric = -1;
    for (int v = 0; v < static_cast<int>(scen.variants.size()); ++v) {
      if (scen.variants[v].kind == SimulationVariant::Kind::kParametric) {
        parametric = v;
        break;
      }
    }
    if (parametric < 0) continue;

    std::map<std::string, RepetitionSummary> baselines;
    for (int v = 0; v < static_cast<int>(scen.variants.size()); ++v) {
      if (scen.variants[v].kind != SimulationVariant::Kind::kPlasmode) continue;
      auto it = summary_index.find({s, v, 0});
      if (it != summary_index.end()) {
        baselines[scen.variants[v].name] = result.summaries[it->second].abs_relative;
      }
    }
    if (baselines.empty()) continue;

    for (const CrossoverAxis& axis : scen.crossover_axes) {
      std::vector<std::pair<double, RepetitionSummary>> parametric_by_deviation;
      for (int d : axis.cell_indices) {
        auto it = summary_index.find({s, parametric, d});
        if (it == summary_index.end()) continue;
        parametric_by_deviation.emplace_back(scen.deviations[d].axis_value,
                                             result.summaries[it->second].abs_relative);
      }
      if (parametric_by_deviation.empty()) continue;
      CrossoverResult cross = crossover(parametric_by_deviation, baselines);
      CrossoverTableRow row;
      row.scenario_index = s;
      row.kind = axis.kind;
      row.true_value = axis.true_value;
      row.first_worse = std::move(cross.first_worse);
      result.crossovers.push_back(std::move(row));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + path.string() + "\"");
  return out;
}

}  // namespace

void emit_results(const SweepResult& result, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory \"" + out_dir + "\"");

  const SweepConfig& config = result.config;

  {
    std::ofstream out = open_output(dir / "runs.csv");
    out << "scenario,variant,deviation,axis_value,repetition,coefficient,"
           "estimated_mse,true_mse,absolute_error,relative_error,"
           "successful_iterations,rank_deficient_skipped\n";
    for (const RunRecord& r : result.runs) {
      const ScenarioConfig& scen = config.scenarios[r.scenario_index];
      const DeviationCell& cell = scen.deviations[r.cell_index];
      const std::string prefix = scen.name + "," +
                                 scen.variants[r.variant_index].name + "," +
                                 cell.label + "," +
                                 (cell.has_axis_value ? fmt_short(cell.axis_value) : "") +
                                 "," + std::to_string(r.repetition) + ",";
      const TrueMse& truth = result.truths[r.scenario_index].mse;
      for (Eigen::Index j = 0; j < r.estimate.per_coefficient.size(); ++j) {
        out << prefix << j << ',' << fmt17(r.estimate.per_coefficient(j)) << ','
            << fmt17(truth.per_coefficient(j)) << ',' << fmt17(r.errors.absolute(j))
            << ',' << fmt17(r.errors.relative(j)) << ','
            << r.estimate.successful_iterations << ','
            << r.estimate.rank_deficient_skipped << '\n';
      }
    }
  }

  {
    std::ofstream out = open_output(dir / "summary.csv");
    out << "scenario,variant,deviation,axis_value,metric,count,median,q1,q3,"
           "whisker_low,whisker_high,outliers\n";
    for (const CellSummary& s : result.summaries) {
      const ScenarioConfig& scen = config.scenarios[s.scenario_index];
      const DeviationCell& cell = scen.deviations[s.cell_index];
      const std::string prefix = scen.name + "," +
                                 scen.variants[s.variant_index].name + "," +
                                 cell.label + "," +
                                 (cell.has_axis_value ? fmt_short(cell.axis_value) : "") +
                                 ",";
      const std::pair<const char*, const RepetitionSummary*> metrics[] = {
          {"absRelative", &s.abs_relative}, {"signedRelative", &s.signed_relative}};
      for (const auto& [name, summary] : metrics) {
        out << prefix << name << ',' << summary->count << ',' << fmt17(summary->median)
            << ',' << fmt17(summary->q1) << ',' << fmt17(summary->q3) << ','
            << fmt17(summary->whisker_low) << ',' << fmt17(summary->whisker_high) << ','
            << summary->outliers.size() << '\n';
      }
    }
  }

  {
    std::ofstream out = open_output(dir / "crossover.csv");
    // One column per plasmode variant, in first-seen order across scenarios.
    std::vector<std::string> columns;
    for (const ScenarioConfig& scen : config.scenarios) {
      for (const SimulationVariant& v : scen.variants) {
        if (v.kind != SimulationVariant::Kind::kPlasmode) continue;
        if (std::find(columns.begin(), columns.end(), v.name) == columns.end()) {
          columns.push_back(v.name);
        }
      }
    }
    out << "scenario,p,n,true_correlation,deviation,true_value";
    for (const std::string& name : columns) out << ',' << name;
    out << '\n';
    for (const CrossoverTableRow& row : result.crossovers) {
      const ScenarioConfig& scen = config.scenarios[row.scenario_index];
      out << scen.name << ',' << scen.p << ',' << scen.n << ','
          << scen.correlation_label << ',' << row.kind << ',' << row.true_value;
      for (const std::string& name : columns) {
        out << ',';
        auto it = row.first_worse.find(name);
        if (it != row.first_worse.end() && it->second.has_value()) {
          out << fmt_short(*it->second);
        }
      }
      out << '\n';
    }
  }

  {
    json manifest;
    manifest["libraryVersion"] = kVersion;
    try {
      manifest["config"] = json::parse(config.echo_json);
    } catch (const json::parse_error&) {
      manifest["config"] = nullptr;
    }
    manifest["runtime"] = {{"nMse", config.runtime.n_mse},
                           {"nMod", config.runtime.n_mod},
                           {"truthReplications", config.runtime.truth_replications},
                           {"masterSeed", config.runtime.master_seed},
                           {"workers", config.runtime.workers}};
    json scenarios = json::array();
    for (int s = 0; s < static_cast<int>(config.scenarios.size()); ++s) {
      const ScenarioConfig& scen = config.scenarios[s];
      const ScenarioTruth& truth = result.truths[s];
      json oracle;
      oracle["perCoefficient"] = std::vector<double>(
          truth.mse.per_coefficient.data(),
          truth.mse.per_coefficient.data() + truth.mse.per_coefficient.size());
      oracle["standardErrors"] = std::vector<double>(
          truth.mse.standard_errors.data(),
          truth.mse.standard_errors.data() + truth.mse.standard_errors.size());
      oracle["replications"] = truth.mse.replications;
      oracle["rankDeficientSkipped"] = truth.mse.rank_deficient_skipped;
      scenarios.push_back(json{{"index", s},
                               {"name", scen.name},
                               {"p", scen.p},
                               {"n", scen.n},
                               {"trueCorrelation", scen.correlation_label},
                               {"scenarioSeed", scenario_seed(config.runtime.master_seed, s)},
                               {"truthHash", truth.hash},
                               {"oracle", std::move(oracle)}});
    }
    manifest["scenarios"] = std::move(scenarios);
    manifest["skipped"] = result.skipped;
    manifest["runs"] = result.runs.size();
    std::ofstream out = open_output(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
}

}  // namespace simmse
