#include "simmse/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "simmse/dataset.hpp"
#include "simmse/errors.hpp"

namespace simmse {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : j.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      fail(where, "unknown key \"" + item.key() + "\"");
    }
  }
}

const json& require_field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing required key \"") + key + "\"");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

long long as_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    fail(where, "expected an integer, got " + j.dump());
  }
  return j.get<long long>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

void check_name_token(const std::string& name, const std::string& where) {
  if (name.empty()) fail(where, "name must not be empty");
  if (name.find(',') != std::string::npos || name.find('\n') != std::string::npos) {
    fail(where, "name \"" + name + "\" must not contain commas or newlines");
  }
}

// Coefficient misspecifications are either a constant vector or the ramp
// (0, 1/p, ..., 1) over the p+1 coefficients, intercept first.
Eigen::VectorXd beta_vector(const json& value, int p, const std::string& where) {
  Eigen::VectorXd beta(p + 1);
  if (value.is_string()) {
    if (value.get<std::string>() != "ramp") {
      fail(where, "coefficient token must be \"ramp\" or a number, got " + value.dump());
    }
    for (int i = 0; i <= p; ++i) beta(i) = static_cast<double>(i) / p;
    return beta;
  }
  if (value.is_number()) {
    beta.setConstant(as_number(value, where));
    return beta;
  }
  if (value.is_array()) {
    if (static_cast<int>(value.size()) != p + 1) {
      fail(where, "coefficient array needs p+1 = " + std::to_string(p + 1) +
                      " entries, got " + std::to_string(value.size()));
    }
    for (int i = 0; i <= p; ++i) beta(i) = as_number(value[i], where);
    return beta;
  }
  fail(where, "coefficients must be a number, \"ramp\", or an array");
}

std::string beta_token(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return fmt(value.get<double>());
  return "vector";
}

ErrorDistSpec build_error_dist(const std::string& family, double df, double sd,
                               const std::string& where) {
  ErrorDistSpec dist;
  if (family == "normal") {
    dist = NormalError{sd};
  } else if (family == "t") {
    dist = ScaledTError{df, sd};
  } else if (family == "chiSquared") {
    dist = ShiftedScaledChiSqError{df, sd};
  } else {
    fail(where, "unknown error family \"" + family + "\"");
  }
  try {
    validate_error_dist(dist);
  } catch (const InputError& e) {
    fail(where, e.what());
  }
  if (sd <= 0.0) fail(where, "error sd must be positive");
  return dist;
}

ErrorDistSpec with_sd(const ErrorDistSpec& like, double sd) {
  if (std::holds_alternative<NormalError>(like)) return NormalError{sd};
  if (const auto* t = std::get_if<ScaledTError>(&like)) return ScaledTError{t->df, sd};
  const auto& chi = std::get<ShiftedScaledChiSqError>(like);
  return ShiftedScaledChiSqError{chi.df, sd};
}

std::string dist_label(const ErrorDistSpec& dist) {
  if (std::holds_alternative<NormalError>(dist)) return "normal";
  if (const auto* t = std::get_if<ScaledTError>(&dist)) return "t(" + fmt(t->df) + ")";
  const auto& chi = std::get<ShiftedScaledChiSqError>(dist);
  return "chiSq(" + fmt(chi.df) + ")";
}

// rho^|i-j| inside each block, zero across. Uneven p splits as evenly as
// possible, the first p mod k blocks one feature larger.
Eigen::MatrixXd power_block_matrix(int p, double rho, int block_count,
                                   const std::string& where) {
  if (block_count < 1 || block_count > p) {
    fail(where, "blockCount must be in [1, p]");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p);
  const int base = p / block_count;
  const int extra = p % block_count;
  int start = 0;
  for (int b = 0; b < block_count; ++b) {
    const int size = base + (b < extra ? 1 : 0);
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        const double v = std::pow(rho, j - i);
        m(start + i, start + j) = v;
        m(start + j, start + i) = v;
      }
    }
    start += size;
  }
  return m;
}

int second_half_start(int p) { return p / 2; }

struct TruthParts {
  std::string name_hint;
  int p = 0;
  DgpSpec dgp;
  std::string corr_label;
  int power_block_count = 1;
};

// Missing dataset files surface as this marker so the scenario can be
// skipped instead of aborting the whole parse.
struct DatasetMissing {
  std::string message;
};

TruthParts parse_truth_features(const json& jt, const std::string& base_dir,
                                const std::string& where) {
  TruthParts parts;
  const json& jc = require_field(jt, "correlation", where);
  if (!jc.is_object()) fail(where, "correlation must be an object");
  const std::string kind = as_string(require_field(jc, "kind", where + ".correlation"), where);

  std::optional<int> declared_p;
  if (jt.contains("p")) {
    declared_p = static_cast<int>(as_integer(jt["p"], where + ".p"));
    if (*declared_p < 1) fail(where, "p must be at least 1");
  }

  if (kind == "fixed") {
    check_keys(jc, {"kind", "rho"}, where + ".correlation");
    const double rho = as_number(require_field(jc, "rho", where + ".correlation"), where);
    if (!declared_p) fail(where, "p is required unless the truth comes from a dataset");
    parts.p = *declared_p;
    parts.dgp = standard_normal_dgp(parts.p, FixedCorrelation{rho});
    parts.corr_label = fmt(rho);
    parts.name_hint = "rho" + fmt(rho);
  } else if (kind == "powerBlock") {
    check_keys(jc, {"kind", "rho", "blockSize", "blockCount"}, where + ".correlation");
    const double rho = as_number(require_field(jc, "rho", where + ".correlation"), where);
    if (!declared_p) fail(where, "p is required unless the truth comes from a dataset");
    parts.p = *declared_p;
    int block_count = 1;
    if (jc.contains("blockCount")) {
      block_count = static_cast<int>(as_integer(jc["blockCount"], where + ".correlation"));
    } else if (jc.contains("blockSize")) {
      const int bs = static_cast<int>(as_integer(jc["blockSize"], where + ".correlation"));
      if (bs < 1 || parts.p % bs != 0) fail(where, "blockSize must divide p");
      block_count = parts.p / bs;
    }
    if (block_count < 1 || parts.p % block_count != 0) {
      fail(where, "blockCount must divide p for a powerBlock truth");
    }
    if (jc.contains("blockSize") && jc.contains("blockCount") &&
        static_cast<int>(as_integer(jc["blockSize"], where)) * block_count != parts.p) {
      fail(where, "blockSize and blockCount disagree with p");
    }
    parts.power_block_count = block_count;
    parts.dgp = standard_normal_dgp(
        parts.p, PowerBlockCorrelation{rho, parts.p / block_count, block_count});
    parts.corr_label = fmt(rho) + "^|i-j|";
    if (block_count > 1) parts.corr_label += " (" + std::to_string(block_count) + " blocks)";
    parts.name_hint = "rho" + fmt(rho) + "pow";
    if (block_count > 1) parts.name_hint += std::to_string(block_count);
  } else if (kind == "explicit") {
    check_keys(jc, {"kind", "matrix"}, where + ".correlation");
    const json& jm = require_field(jc, "matrix", where + ".correlation");
    if (!jm.is_array() || jm.empty()) fail(where, "explicit correlation needs a matrix");
    const int p = static_cast<int>(jm.size());
    Eigen::MatrixXd m(p, p);
    for (int i = 0; i < p; ++i) {
      if (!jm[i].is_array() || static_cast<int>(jm[i].size()) != p) {
        fail(where, "correlation matrix must be square");
      }
      for (int j = 0; j < p; ++j) m(i, j) = as_number(jm[i][j], where);
    }
    if (declared_p && *declared_p != p) fail(where, "p disagrees with the matrix size");
    parts.p = p;
    parts.dgp = standard_normal_dgp(p, ExplicitCorrelation{std::move(m)});
    parts.corr_label = "explicit";
    parts.name_hint = "explicit";
  } else if (kind == "dataset") {
    check_keys(jc, {"kind", "path"}, where + ".correlation");
    std::filesystem::path path = as_string(require_field(jc, "path", where), where);
    if (path.is_relative() && !base_dir.empty()) {
      path = std::filesystem::path(base_dir) / path;
    }
    if (!std::filesystem::exists(path)) {
      throw DatasetMissing{"dataset file \"" + path.string() + "\" not found"};
    }
    const DatasetSummary summary = ingest_dataset(path.string());
    if (declared_p && *declared_p != summary.feature_count) {
      fail(where, "p = " + std::to_string(*declared_p) + " disagrees with the dataset's " +
                      std::to_string(summary.feature_count) + " usable columns");
    }
    parts.p = summary.feature_count;
    parts.dgp = dataset_truth_dgp(summary);
    parts.corr_label = path.stem().string();
    parts.name_hint = path.stem().string();
  } else {
    fail(where, "unknown correlation kind \"" + kind + "\"");
  }
  return parts;
}

SimulationVariant parse_variant(const json& jv, int p, int n, const std::string& where) {
  if (!jv.is_object()) fail(where, "simulation entry must be an object");
  SimulationVariant v;
  const std::string kind = as_string(require_field(jv, "kind", where), where);
  if (kind == "parametric") {
    check_keys(jv, {"kind", "name"}, where);
    v.kind = SimulationVariant::Kind::kParametric;
    v.name = "parametric";
  } else if (kind == "pluginParametric") {
    check_keys(jv, {"kind", "name", "estSampleSize"}, where);
    v.kind = SimulationVariant::Kind::kPluginParametric;
    v.name = "plugin";
    if (jv.contains("estSampleSize")) {
      v.est_sample_size = static_cast<int>(as_integer(jv["estSampleSize"], where));
    }
    if (v.est_sample_size <= p + 1) {
      fail(where, "estSampleSize must exceed p + 1");
    }
  } else if (kind == "plasmode") {
    check_keys(jv, {"kind", "name", "strategy", "proportion", "sourceSize"}, where);
    v.kind = SimulationVariant::Kind::kPlasmode;
    const std::string token = as_string(require_field(jv, "strategy", where), where);
    try {
      v.strategy = strategy_from_name(token);
    } catch (const InputError& e) {
      fail(where, e.what());
    }
    if (jv.contains("proportion")) v.proportion = as_number(jv["proportion"], where);
    if (jv.contains("sourceSize")) {
      const long long s = as_integer(jv["sourceSize"], where);
      if (s < 1) fail(where, "sourceSize must be positive");
      v.source_size = static_cast<int>(s);
    }
    const bool uses_proportion = v.strategy == ResampleStrategy::kMOutOfN ||
                                 v.strategy == ResampleStrategy::kSubsampling;
    v.name = token;
    if (uses_proportion) v.name += "-" + fmt(v.proportion);
    // Validate the plan now so a bad proportion fails at parse time.
    try {
      ResamplePlan plan = make_resample_plan(v.strategy, n, v.proportion);
      if (v.source_size) plan.source_size = *v.source_size;
      if (plan.source_size < plan.target_n &&
          v.strategy == ResampleStrategy::kSubsampling) {
        fail(where, "subsampling needs a source at least as large as the target");
      }
    } catch (const InputError& e) {
      fail(where, e.what());
    }
  } else {
    fail(where, "unknown simulation kind \"" + kind + "\"");
  }
  if (jv.contains("name")) v.name = as_string(jv["name"], where);
  check_name_token(v.name, where);
  return v;
}

// ---------------------------------------------------------------------------
// Deviation expansion.
// ---------------------------------------------------------------------------

const std::set<std::string>& deviation_kinds() {
  static const std::set<std::string> kinds = {
      "coefficients",        "errorSd",
      "errorDistribution",   "correlation",
      "correlationPower",    "expectationSecondHalf",
      "expectationAll",      "varianceSecondHalf",
      "varianceAll",         "meanVarianceAll",
      "mixtureContamination", "mixtureShift",
      "logNormalSecondHalf", "bernoulliSecondFeature",
      "coefficientsCorrelation", "errorSdCorrelation",
  };
  return kinds;
}

bool default_crossover(const std::string& kind) {
  static const std::set<std::string> axes = {
      "correlation",         "correlationPower",
      "expectationSecondHalf", "expectationAll",
      "varianceSecondHalf",  "varianceAll",
      "mixtureContamination", "mixtureShift",
  };
  return axes.find(kind) != axes.end();
}

std::string axis_true_value(const std::string& kind, const ScenarioConfig& scen) {
  if (kind == "correlation" || kind == "correlationPower") return scen.correlation_label;
  if (kind == "expectationSecondHalf" || kind == "expectationAll") return "0";
  if (kind == "varianceSecondHalf" || kind == "varianceAll") return "1";
  if (kind == "mixtureContamination" || kind == "mixtureShift") return "0";
  if (kind == "errorSd") return fmt(error_sd(scen.truth_ogm.error_dist));
  if (kind == "bernoulliSecondFeature") return "N(0;1)";
  return "";
}

std::vector<double> numeric_grid(const json& values, const std::string& where) {
  if (!values.is_array() || values.empty()) {
    fail(where, "values must be a nonempty array");
  }
  std::vector<double> grid;
  grid.reserve(values.size());
  for (const auto& v : values) grid.push_back(as_number(v, where));
  return grid;
}

struct Expander {
  ScenarioConfig& scen;
  std::vector<std::string>& skipped;
  std::string where;

  std::set<std::string> labels;

  void add_cell(DeviationCell cell) {
    if (!labels.insert(cell.label).second) {
      fail(where, "duplicate deviation label \"" + cell.label + "\"");
    }
    scen.deviations.push_back(std::move(cell));
  }

  // Returns the cell index, or -1 when the correlation was infeasible.
  int add_dgp_cell(const std::string& kind, const std::string& label, double axis,
                   bool has_axis, std::vector<MarginalSpec> marginals,
                   const Eigen::MatrixXd& target) {
    DeviationCell cell;
    cell.kind = kind;
    cell.label = label;
    cell.axis_value = axis;
    cell.has_axis_value = has_axis;
    cell.affects_dgp = true;
    cell.assumed_ogm = scen.truth_ogm;
    try {
      cell.assumed_dgp = resolve_underlying_covariance(std::move(marginals), target);
    } catch (const InfeasibleCorrelation& e) {
      skipped.push_back(scen.name + ", " + label + ": " + e.what());
      return -1;
    }
    add_cell(std::move(cell));
    return static_cast<int>(scen.deviations.size()) - 1;
  }

  int add_ogm_cell(const std::string& kind, const std::string& label, double axis,
                   bool has_axis, OgmSpec ogm) {
    DeviationCell cell;
    cell.kind = kind;
    cell.label = label;
    cell.axis_value = axis;
    cell.has_axis_value = has_axis;
    cell.affects_dgp = false;
    cell.assumed_ogm = std::move(ogm);
    add_cell(std::move(cell));
    return static_cast<int>(scen.deviations.size()) - 1;
  }

  int add_combo_cell(const std::string& kind, const std::string& label, double axis,
                     std::vector<MarginalSpec> marginals, const Eigen::MatrixXd& target,
                     OgmSpec ogm) {
    DeviationCell cell;
    cell.kind = kind;
    cell.label = label;
    cell.axis_value = axis;
    cell.has_axis_value = true;
    cell.affects_dgp = true;
    cell.assumed_ogm = std::move(ogm);
    try {
      cell.assumed_dgp = resolve_underlying_covariance(std::move(marginals), target);
    } catch (const InfeasibleCorrelation& e) {
      skipped.push_back(scen.name + ", " + label + ": " + e.what());
      return -1;
    }
    add_cell(std::move(cell));
    return static_cast<int>(scen.deviations.size()) - 1;
  }
};

void expand_deviation(const json& jd, ScenarioConfig& scen,
                      std::vector<std::string>& skipped, int power_block_default,
                      std::set<std::string>& axis_names) {
  const std::string where = "scenario \"" + scen.name + "\" deviations";
  if (!jd.is_object()) fail(where, "deviation entry must be an object");
  const std::string kind = as_string(require_field(jd, "kind", where), where);
  if (deviation_kinds().find(kind) == deviation_kinds().end()) {
    fail(where, "unknown deviation kind \"" + kind + "\"");
  }
  check_keys(jd, {"kind", "values", "scan", "crossover", "blockCount"}, where + "." + kind);
  if (jd.contains("blockCount") && kind != "correlationPower") {
    fail(where, "blockCount only applies to correlationPower");
  }

  std::string scan = "ascending";
  if (jd.contains("scan")) scan = as_string(jd["scan"], where);
  if (scan != "ascending" && scan != "descending") {
    fail(where, "scan must be \"ascending\" or \"descending\"");
  }
  const bool descending = scan == "descending";

  bool wants_crossover = default_crossover(kind);
  if (jd.contains("crossover")) {
    if (!jd["crossover"].is_boolean()) fail(where, "crossover must be a boolean");
    wants_crossover = jd["crossover"].get<bool>();
  }

  const int p = scen.p;
  const int half = second_half_start(p);
  Expander ex{scen, skipped, where, {}};
  for (const auto& cell : scen.deviations) ex.labels.insert(cell.label);

  const std::vector<MarginalSpec>& truth_marginals = scen.truth_dgp.marginals;
  const Eigen::MatrixXd& truth_corr = scen.truth_dgp.target_correlation;

  auto sorted_grid = [&](std::vector<double> grid) {
    std::sort(grid.begin(), grid.end());
    if (descending) std::reverse(grid.begin(), grid.end());
    return grid;
  };

  std::vector<int> axis_cells;
  bool has_axis_grid = false;

  if (kind == "coefficients") {
    const json& values = require_field(jd, "values", where);
    if (!values.is_array() || values.empty()) fail(where, "values must be a nonempty array");
    for (const auto& v : values) {
      OgmSpec ogm{beta_vector(v, p, where), scen.truth_ogm.error_dist};
      ex.add_ogm_cell(kind, "coefficients=" + beta_token(v), 0.0, false, std::move(ogm));
    }
  } else if (kind == "errorSd") {
    has_axis_grid = true;
    for (double sd : sorted_grid(numeric_grid(require_field(jd, "values", where), where))) {
      if (sd <= 0.0) fail(where, "errorSd values must be positive");
      OgmSpec ogm{scen.truth_ogm.beta, with_sd(scen.truth_ogm.error_dist, sd)};
      axis_cells.push_back(
          ex.add_ogm_cell(kind, "errorSd=" + fmt(sd), sd, true, std::move(ogm)));
    }
  } else if (kind == "errorDistribution") {
    const json& values = require_field(jd, "values", where);
    if (!values.is_array() || values.empty()) fail(where, "values must be a nonempty array");
    const double truth_sd = error_sd(scen.truth_ogm.error_dist);
    for (const auto& v : values) {
      if (!v.is_object()) fail(where, "errorDistribution values must be objects");
      check_keys(v, {"family", "df", "sd"}, where);
      const std::string family = as_string(require_field(v, "family", where), where);
      const double df = v.contains("df") ? as_number(v["df"], where) : 0.0;
      const double sd = v.contains("sd") ? as_number(v["sd"], where) : truth_sd;
      ErrorDistSpec dist = build_error_dist(family, df, sd, where);
      OgmSpec ogm{scen.truth_ogm.beta, dist};
      ex.add_ogm_cell(kind, "errorDist=" + dist_label(dist), 0.0, false, std::move(ogm));
    }
  } else if (kind == "correlation" || kind == "correlationPower") {
    has_axis_grid = true;
    int block_count = power_block_default;
    if (jd.contains("blockCount")) {
      block_count = static_cast<int>(as_integer(jd["blockCount"], where));
    }
    for (double rho : sorted_grid(numeric_grid(require_field(jd, "values", where), where))) {
      Eigen::MatrixXd target =
          kind == "correlation"
              ? build_correlation_matrix(FixedCorrelation{rho}, p)
              : power_block_matrix(p, rho, block_count, where);
      axis_cells.push_back(ex.add_dgp_cell(kind, kind + "=" + fmt(rho), rho, true,
                                           truth_marginals, target));
    }
  } else if (kind == "expectationSecondHalf" || kind == "expectationAll") {
    has_axis_grid = true;
    const int start = kind == "expectationAll" ? 0 : half;
    for (double mu : sorted_grid(numeric_grid(require_field(jd, "values", where), where))) {
      std::vector<MarginalSpec> marginals = truth_marginals;
      for (int i = start; i < p; ++i) {
        marginals[i] = NormalMarginal{mu, marginal_variance(truth_marginals[i])};
      }
      axis_cells.push_back(ex.add_dgp_cell(kind, kind + "=" + fmt(mu), mu, true,
                                           std::move(marginals), truth_corr));
    }
  } else if (kind == "varianceSecondHalf" || kind == "varianceAll") {
    has_axis_grid = true;
    const int start = kind == "varianceAll" ? 0 : half;
    for (double v : sorted_grid(numeric_grid(require_field(jd, "values", where), where))) {
      if (v <= 0.0) fail(where, "variance values must be positive");
      std::vector<MarginalSpec> marginals = truth_marginals;
      for (int i = start; i < p; ++i) {
        marginals[i] = NormalMarginal{marginal_mean(truth_marginals[i]), v};
      }
      axis_cells.push_back(ex.add_dgp_cell(kind, kind + "=" + fmt(v), v, true,
                                           std::move(marginals), truth_corr));
    }
  } else if (kind == "meanVarianceAll") {
    const json& values = require_field(jd, "values", where);
    if (!values.is_array() || values.empty()) fail(where, "values must be a nonempty array");
    for (const auto& v : values) {
      if (!v.is_object()) fail(where, "meanVarianceAll values must be objects");
      check_keys(v, {"mu", "variance"}, where);
      const double mu = as_number(require_field(v, "mu", where), where);
      const double var = as_number(require_field(v, "variance", where), where);
      if (var <= 0.0) fail(where, "variance must be positive");
      std::vector<MarginalSpec> marginals(p, NormalMarginal{mu, var});
      ex.add_dgp_cell(kind, "meanVarianceAll=(" + fmt(mu) + ";" + fmt(var) + ")", 0.0,
                      false, std::move(marginals), truth_corr);
    }
  } else if (kind == "mixtureContamination" || kind == "mixtureShift") {
    has_axis_grid = true;
    for (double alpha : sorted_grid(numeric_grid(require_field(jd, "values", where), where))) {
      if (alpha <= 0.0 || alpha >= 1.0) fail(where, "mixture weights must be in (0, 1)");
      GaussianMixtureMarginal mix;
      mix.weight = 1.0 - alpha;
      mix.first = MixtureComponent{0.0, 1.0};
      mix.second = kind == "mixtureContamination" ? MixtureComponent{0.0, 10.0}
                                                  : MixtureComponent{3.0, 1.0};
      // First half stays normal with the mixture's first two moments, so the
      // deviation is purely distributional.
      const NormalMarginal matched{marginal_mean(mix), mixture_variance(mix)};
      std::vector<MarginalSpec> marginals = truth_marginals;
      for (int i = half; i < p; ++i) marginals[i] = mix;
      for (int i = 0; i < half; ++i) marginals[i] = matched;
      axis_cells.push_back(ex.add_dgp_cell(kind, kind + "=" + fmt(alpha), alpha, true,
                                           std::move(marginals), truth_corr));
    }
  } else if (kind == "logNormalSecondHalf") {
    if (jd.contains("values")) fail(where, "logNormalSecondHalf takes no values");
    const LogNormalMarginal logn{0.0, 1.0};
    const NormalMarginal matched{marginal_mean(logn), marginal_variance(logn)};
    std::vector<MarginalSpec> marginals = truth_marginals;
    for (int i = half; i < p; ++i) marginals[i] = logn;
    for (int i = 0; i < half; ++i) marginals[i] = matched;
    ex.add_dgp_cell(kind, "logNormal", 0.0, false, std::move(marginals), truth_corr);
  } else if (kind == "bernoulliSecondFeature") {
    has_axis_grid = true;
    if (p < 2) fail(where, "bernoulliSecondFeature needs at least two features");
    for (double prob : sorted_grid(numeric_grid(require_field(jd, "values", where), where))) {
      if (prob <= 0.0 || prob >= 1.0) fail(where, "bernoulli probabilities must be in (0, 1)");
      std::vector<MarginalSpec> marginals = truth_marginals;
      marginals[1] = BernoulliMarginal{prob};
      axis_cells.push_back(ex.add_dgp_cell(kind, "bernoulli=" + fmt(prob), prob, true,
                                           std::move(marginals), truth_corr));
    }
  } else if (kind == "coefficientsCorrelation") {
    has_axis_grid = true;
    const json& values = require_field(jd, "values", where);
    if (!values.is_array() || values.empty()) fail(where, "values must be a nonempty array");
    for (const auto& v : values) {
      if (!v.is_object()) fail(where, "coefficientsCorrelation values must be objects");
      check_keys(v, {"beta", "rho"}, where);
      const json& jb = require_field(v, "beta", where);
      const double rho = as_number(require_field(v, "rho", where), where);
      OgmSpec ogm{beta_vector(jb, p, where), scen.truth_ogm.error_dist};
      const std::string label =
          "coefficientsCorrelation=" + beta_token(jb) + ";rho=" + fmt(rho);
      axis_cells.push_back(ex.add_combo_cell(
          kind, label, rho, truth_marginals,
          build_correlation_matrix(FixedCorrelation{rho}, p), std::move(ogm)));
    }
  } else if (kind == "errorSdCorrelation") {
    has_axis_grid = true;
    const json& values = require_field(jd, "values", where);
    if (!values.is_array() || values.empty()) fail(where, "values must be a nonempty array");
    for (const auto& v : values) {
      if (!v.is_object()) fail(where, "errorSdCorrelation values must be objects");
      check_keys(v, {"sd", "rho"}, where);
      const double sd = as_number(require_field(v, "sd", where), where);
      const double rho = as_number(require_field(v, "rho", where), where);
      if (sd <= 0.0) fail(where, "error sd must be positive");
      OgmSpec ogm{scen.truth_ogm.beta, with_sd(scen.truth_ogm.error_dist, sd)};
      const std::string label = "errorSdCorrelation=" + fmt(sd) + ";rho=" + fmt(rho);
      axis_cells.push_back(ex.add_combo_cell(
          kind, label, rho, truth_marginals,
          build_correlation_matrix(FixedCorrelation{rho}, p), std::move(ogm)));
    }
  }

  if (wants_crossover) {
    if (!has_axis_grid) {
      fail(where, "deviation kind \"" + kind + "\" has no numeric axis for a crossover");
    }
    CrossoverAxis axis;
    axis.kind = kind + (descending ? " (descending)" : "");
    int suffix = 2;
    while (!axis_names.insert(axis.kind).second) {
      axis.kind = kind + (descending ? " (descending)" : "") + " #" + std::to_string(suffix++);
    }
    axis.true_value = axis_true_value(kind, scen);
    for (int idx : axis_cells) {
      if (idx >= 0) axis.cell_indices.push_back(idx);
    }
    if (!axis.cell_indices.empty()) scen.crossover_axes.push_back(std::move(axis));
  }
}

ErrorDistSpec parse_truth_error(const json& jt, const std::string& where) {
  double sd = 0.3;
  if (jt.contains("errorSd")) sd = as_number(jt["errorSd"], where + ".errorSd");
  if (sd <= 0.0) fail(where, "errorSd must be positive");
  if (!jt.contains("errorDistribution")) return NormalError{sd};
  const json& je = jt["errorDistribution"];
  if (!je.is_object()) fail(where, "errorDistribution must be an object");
  check_keys(je, {"family", "df"}, where + ".errorDistribution");
  const std::string family = as_string(require_field(je, "family", where), where);
  const double df = je.contains("df") ? as_number(je["df"], where) : 0.0;
  return build_error_dist(family, df, sd, where + ".errorDistribution");
}

ScenarioConfig parse_scenario(const json& js, const RuntimeConfig& runtime,
                              const std::string& base_dir,
                              std::vector<std::string>& skipped, int index) {
  std::string where = "scenario " + std::to_string(index);
  if (!js.is_object()) fail(where, "scenario must be an object");
  check_keys(js, {"name", "truth", "simulations", "deviations"}, where);

  const json& jt = require_field(js, "truth", where);
  if (!jt.is_object()) fail(where, "truth must be an object");
  check_keys(jt, {"p", "n", "correlation", "beta", "errorSd", "errorDistribution"},
             where + ".truth");

  TruthParts parts = parse_truth_features(jt, base_dir, where + ".truth");

  ScenarioConfig scen;
  scen.p = parts.p;
  scen.n = static_cast<int>(as_integer(require_field(jt, "n", where + ".truth"), where));
  if (scen.n <= scen.p + 1) {
    fail(where, "n must exceed p + 1 = " + std::to_string(scen.p + 1));
  }
  scen.truth_dgp = std::move(parts.dgp);
  scen.correlation_label = parts.corr_label;

  scen.truth_ogm.error_dist = parse_truth_error(jt, where + ".truth");
  scen.truth_ogm.beta = jt.contains("beta")
                            ? beta_vector(jt["beta"], scen.p, where + ".truth.beta")
                            : Eigen::VectorXd::Ones(scen.p + 1).eval();

  scen.name = js.contains("name")
                  ? as_string(js["name"], where)
                  : "p" + std::to_string(scen.p) + "n" + std::to_string(scen.n) +
                        parts.name_hint;
  check_name_token(scen.name, where);
  where = "scenario \"" + scen.name + "\"";

  if (js.contains("simulations")) {
    const json& jv = js["simulations"];
    if (!jv.is_array() || jv.empty()) fail(where, "simulations must be a nonempty array");
    std::set<std::string> names;
    for (const auto& item : jv) {
      SimulationVariant v = parse_variant(item, scen.p, scen.n, where + ".simulations");
      if (!names.insert(v.name).second) {
        fail(where, "duplicate simulation name \"" + v.name + "\"");
      }
      scen.variants.push_back(std::move(v));
    }
  } else {
    scen.variants.push_back(SimulationVariant{});
    scen.variants.back().name = "parametric";
  }

  DeviationCell true_cell;
  true_cell.kind = "true";
  true_cell.label = "true";
  true_cell.assumed_ogm = scen.truth_ogm;
  scen.deviations.push_back(std::move(true_cell));

  if (js.contains("deviations")) {
    const json& jds = js["deviations"];
    if (!jds.is_array()) fail(where, "deviations must be an array");
    std::set<std::string> axis_names;
    for (const auto& jd : jds) {
      expand_deviation(jd, scen, skipped, parts.power_block_count, axis_names);
    }
  }

  (void)runtime;
  return scen;
}

RuntimeConfig parse_runtime(const json& jr) {
  RuntimeConfig runtime;
  if (jr.is_null()) return runtime;
  const std::string where = "runtime";
  if (!jr.is_object()) fail(where, "runtime must be an object");
  check_keys(jr, {"nMse", "nMod", "truthReplications", "masterSeed", "workers"}, where);
  if (jr.contains("nMse")) runtime.n_mse = static_cast<int>(as_integer(jr["nMse"], where));
  if (jr.contains("nMod")) runtime.n_mod = static_cast<int>(as_integer(jr["nMod"], where));
  if (jr.contains("truthReplications")) {
    runtime.truth_replications = as_integer(jr["truthReplications"], where);
  }
  if (jr.contains("masterSeed")) {
    if (!jr["masterSeed"].is_number_integer() && !jr["masterSeed"].is_number_unsigned()) {
      fail(where, "masterSeed must be an integer");
    }
    runtime.master_seed = jr["masterSeed"].get<std::uint64_t>();
  }
  if (jr.contains("workers")) runtime.workers = static_cast<int>(as_integer(jr["workers"], where));
  if (runtime.n_mse < 1) fail(where, "nMse must be at least 1");
  if (runtime.n_mod < 1) fail(where, "nMod must be at least 1");
  if (runtime.truth_replications < 1000) {
    fail(where, "truthReplications must be at least 1000");
  }
  if (runtime.workers < 1) fail(where, "workers must be at least 1");
  return runtime;
}

}  // namespace

bool cell_applies(const DeviationCell& cell, const SimulationVariant& variant) {
  return !cell.affects_dgp || variant.kind == SimulationVariant::Kind::kParametric;
}

SweepConfig parse_sweep_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("config root must be an object");

  json scenario_list = json::array();
  json runtime_json;
  if (root.contains("scenarios")) {
    check_keys(root, {"scenarios", "runtime"}, "config");
    if (!root["scenarios"].is_array()) throw InputError("scenarios must be an array");
    scenario_list = root["scenarios"];
    if (root.contains("runtime")) runtime_json = root["runtime"];
  } else {
    check_keys(root, {"name", "truth", "simulations", "deviations", "runtime"}, "config");
    json single = root;
    single.erase("runtime");
    scenario_list.push_back(std::move(single));
    if (root.contains("runtime")) runtime_json = root["runtime"];
  }

  SweepConfig config;
  config.runtime = parse_runtime(runtime_json);

  std::set<std::string> names;
  for (int i = 0; i < static_cast<int>(scenario_list.size()); ++i) {
    try {
      ScenarioConfig scen =
          parse_scenario(scenario_list[i], config.runtime, base_dir, config.skipped, i);
      if (!names.insert(scen.name).second) {
        throw InputError("duplicate scenario name \"" + scen.name + "\"");
      }
      config.scenarios.push_back(std::move(scen));
    } catch (const DatasetMissing& m) {
      config.skipped.push_back("scenario " + std::to_string(i) + " skipped: " + m.message);
    } catch (const InfeasibleCorrelation& e) {
      config.skipped.push_back("scenario " + std::to_string(i) +
                               " skipped: infeasible truth correlation: " + e.what());
    }
  }

  json echo;
  echo["scenarios"] = scenario_list;
  echo["runtime"] = {{"nMse", config.runtime.n_mse},
                     {"nMod", config.runtime.n_mod},
                     {"truthReplications", config.runtime.truth_replications},
                     {"masterSeed", config.runtime.master_seed},
                     {"workers", config.runtime.workers}};
  config.echo_json = echo.dump(2);
  return config;
}

SweepConfig load_sweep_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_config(buffer.str(),
                            std::filesystem::path(path).parent_path().string());
}

// ---------------------------------------------------------------------------
// Baseline preset: every deviation grid over the twelve baseline scenarios.
// ---------------------------------------------------------------------------

namespace {

// Decimal grid lo/denom .. hi/denom inclusive, stepping by step/denom, with
// each value the double nearest the printed decimal.
json dgrid(long lo, long hi, long step, double denom) {
  json values = json::array();
  for (long v = lo; v <= hi; v += step) {
    values.push_back(static_cast<double>(v) / denom);
  }
  return values;
}

json cat(std::initializer_list<json> parts) {
  json out = json::array();
  for (const auto& part : parts) {
    for (const auto& v : part) out.push_back(v);
  }
  return out;
}

json entry(const std::string& kind, json values) {
  return json{{"kind", kind}, {"values", std::move(values)}};
}

json entry_desc(const std::string& kind, json values) {
  return json{{"kind", kind}, {"values", std::move(values)}, {"scan", "descending"}};
}

json error_sd_entry() { return entry("errorSd", json::array({0.1, 0.2, 0.4, 0.5})); }

json error_dist_entry() {
  return entry("errorDistribution",
               json::array({json{{"family", "t"}, {"df", 10}},
                            json{{"family", "t"}, {"df", 3}},
                            json{{"family", "chiSquared"}, {"df", 1}},
                            json{{"family", "chiSquared"}, {"df", 5}}}));
}

json mixture_entries(long alpha_hi_percent) {
  return json::array({entry("mixtureContamination", dgrid(1, alpha_hi_percent, 1, 100)),
                      entry("mixtureShift", dgrid(1, alpha_hi_percent, 1, 100))});
}

json lognormal_entry() { return json{{"kind", "logNormalSecondHalf"}}; }

json bernoulli_entry(bool include_02) {
  json values = json::array();
  if (include_02) values.push_back(0.2);
  else values.push_back(0.3);
  for (double v : {0.35, 0.4, 0.45, 0.5}) values.push_back(v);
  return entry("bernoulliSecondFeature", values);
}

json coef_corr(std::initializer_list<std::pair<json, double>> items) {
  json values = json::array();
  for (const auto& [beta, rho] : items) {
    values.push_back(json{{"beta", beta}, {"rho", rho}});
  }
  return entry("coefficientsCorrelation", std::move(values));
}

json sd_corr(std::initializer_list<double> rhos) {
  json values = json::array();
  for (double rho : rhos) values.push_back(json{{"sd", 0.4}, {"rho", rho}});
  return entry("errorSdCorrelation", std::move(values));
}

json power_entry(json values, int block_count) {
  json e = entry("correlationPower", std::move(values));
  e["blockCount"] = block_count;
  return e;
}

json fixed_truth(int p, int n, double rho) {
  return json{{"p", p}, {"n", n}, {"correlation", json{{"kind", "fixed"}, {"rho", rho}}}};
}

json power_truth(int p, int n, double rho, int blocks) {
  return json{{"p", p},
              {"n", n},
              {"correlation",
               json{{"kind", "powerBlock"}, {"rho", rho}, {"blockCount", blocks}}}};
}

json dataset_truth(const std::string& file, int n) {
  return json{{"n", n},
              {"correlation", json{{"kind", "dataset"}, {"path", "datasets/" + file}}}};
}

json preset_variants() {
  json variants = json::array();
  variants.push_back(json{{"kind", "parametric"}});
  variants.push_back(json{{"kind", "pluginParametric"}, {"estSampleSize", 1000}});
  for (double pi : {0.01, 0.1, 0.5, 0.632, 0.8, 0.9}) {
    variants.push_back(
        json{{"kind", "plasmode"}, {"strategy", "mOutOfN"}, {"proportion", pi}});
  }
  variants.push_back(json{{"kind", "plasmode"}, {"strategy", "nOutOfN"}});
  variants.push_back(json{{"kind", "plasmode"}, {"strategy", "smoothed"}});
  variants.push_back(json{{"kind", "plasmode"}, {"strategy", "wild"}});
  for (double pi : {0.01, 0.1, 0.5, 0.632, 0.8, 0.9}) {
    variants.push_back(
        json{{"kind", "plasmode"}, {"strategy", "subsampling"}, {"proportion", pi}});
  }
  variants.push_back(json{{"kind", "plasmode"}, {"strategy", "none"}});
  return variants;
}

json scenario(json truth, json deviations) {
  return json{{"truth", std::move(truth)},
              {"simulations", preset_variants()},
              {"deviations", std::move(deviations)}};
}

}  // namespace

std::string table4_preset_json() {
  json scenarios = json::array();

  // p = 2, n = 100, rho = 0.2
  scenarios.push_back(scenario(
      fixed_truth(2, 100, 0.2),
      cat({json::array({
               error_sd_entry(),
               entry("correlation", cat({dgrid(-90, 0, 10, 100), dgrid(1, 19, 1, 100),
                                         dgrid(21, 50, 1, 100), dgrid(60, 90, 10, 100)})),
               coef_corr({{json("ramp"), -0.5}, {json("ramp"), 0.5}, {json(0.05), -0.5}}),
               sd_corr({-0.5, 0.5}),
               entry("expectationSecondHalf", cat({dgrid(5, 100, 5, 100), json::array({2.0, 3.0})})),
               entry("expectationAll", json::array({10.0})),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 150, 5, 100), json::array({2.0, 3.0, 5.0})})),
               entry("varianceAll", json::array({5.0})),
               entry("meanVarianceAll", json::array({json{{"mu", 10.0}, {"variance", 5.0}}})),
           }),
           mixture_entries(5),
           json::array({lognormal_entry(), bernoulli_entry(true), error_dist_entry()})})));

  // p = 2, n = 50, rho = 0.2
  scenarios.push_back(scenario(
      fixed_truth(2, 50, 0.2),
      cat({json::array({
               error_sd_entry(),
               entry("correlation", cat({dgrid(-90, 0, 10, 100), dgrid(1, 19, 1, 100),
                                         dgrid(21, 40, 1, 100), dgrid(50, 90, 10, 100)})),
               coef_corr({{json("ramp"), -0.5}, {json("ramp"), 0.5}, {json(0.05), -0.5}}),
               sd_corr({-0.5}),
               entry("expectationSecondHalf", cat({dgrid(5, 100, 5, 100), json::array({2.0, 3.0})})),
               entry("expectationAll", json::array({10.0})),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 150, 5, 100), json::array({2.0, 3.0})})),
               entry("varianceAll", json::array({5.0})),
               entry("meanVarianceAll", json::array({json{{"mu", 10.0}, {"variance", 5.0}}})),
           }),
           mixture_entries(5),
           json::array({lognormal_entry(), bernoulli_entry(true), error_dist_entry()})})));

  // p = 2, n = 100, rho = 0.5
  scenarios.push_back(scenario(
      fixed_truth(2, 100, 0.5),
      cat({json::array({
               error_sd_entry(),
               entry("correlation", cat({dgrid(-90, 40, 10, 100), dgrid(51, 90, 1, 100)})),
               coef_corr({{json("ramp"), -0.2}, {json(0.05), -0.2}}),
               sd_corr({-0.2}),
               entry("expectationSecondHalf", cat({dgrid(5, 200, 5, 100), json::array({3.0})})),
               entry("expectationAll", json::array({10.0})),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 150, 5, 100), json::array({2.0, 3.0})})),
               entry("varianceAll", json::array({5.0})),
               entry("meanVarianceAll", json::array({json{{"mu", 10.0}, {"variance", 5.0}}})),
           }),
           mixture_entries(5),
           json::array({lognormal_entry(), bernoulli_entry(true), error_dist_entry()})})));

  // p = 10, n = 100, rho = 0.2
  scenarios.push_back(scenario(
      fixed_truth(10, 100, 0.2),
      cat({json::array({
               error_sd_entry(),
               entry("correlation", cat({json::array({0.0, 0.1}), dgrid(21, 50, 1, 100),
                                         dgrid(60, 90, 10, 100)})),
               power_entry(cat({dgrid(-90, -10, 10, 100), json::array({0.1, 0.2}),
                                dgrid(21, 50, 1, 100), dgrid(60, 90, 10, 100)}),
                           1),
               coef_corr({{json("ramp"), 0.5}}),
               sd_corr({0.5}),
               entry("expectationSecondHalf", dgrid(5, 200, 5, 100)),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 200, 5, 100), json::array({5.0})})),
           }),
           mixture_entries(5),
           json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));

  // p = 10, n = 50, rho = 0.2
  scenarios.push_back(scenario(
      fixed_truth(10, 50, 0.2),
      cat({json::array({
               error_sd_entry(),
               entry("correlation", cat({json::array({0.0, 0.1}), dgrid(21, 90, 1, 100)})),
               power_entry(cat({dgrid(-90, -10, 10, 100), json::array({0.1, 0.2}),
                                dgrid(21, 50, 1, 100), dgrid(60, 90, 10, 100)}),
                           1),
               coef_corr({{json("ramp"), 0.5}}),
               sd_corr({0.5}),
               entry("expectationSecondHalf", dgrid(5, 300, 5, 100)),
               entry("varianceSecondHalf", dgrid(105, 500, 5, 100)),
           }),
           mixture_entries(10),
           json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));

  // p = 50, n = 100, rho = 0.2
  scenarios.push_back(scenario(
      fixed_truth(50, 100, 0.2),
      cat({json::array({
               entry("coefficients", json::array({json("ramp"), 0.05, 10.0, 0.0})),
               error_sd_entry(),
               entry("correlation",
                     cat({json::array({-0.01, 0.0, 0.1}), dgrid(21, 90, 1, 100)})),
               power_entry(cat({dgrid(-90, -10, 10, 100), json::array({0.1, 0.2}),
                                dgrid(21, 99, 1, 100)}),
                           5),
               coef_corr({{json("ramp"), 0.5}}),
               sd_corr({0.5}),
               entry("expectationSecondHalf", dgrid(5, 500, 5, 100)),
               entry("expectationAll", json::array({1.0})),
               entry_desc("varianceSecondHalf", dgrid(10, 99, 1, 100)),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 1000, 5, 100), dgrid(1010, 2000, 10, 100),
                          json::array({32.0, 64.0, 128.0, 256.0, 512.0, 1024.0, 2048.0,
                                       4096.0, 8192.0, 16384.0, 32768.0, 65536.0,
                                       131072.0})})),
           }),
           mixture_entries(99),
           json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));

  // p = 50, n = 100, rho = 0.2^|i-j| in 5 blocks
  scenarios.push_back(scenario(
      power_truth(50, 100, 0.2, 5),
      cat({json::array({
               error_sd_entry(),
               power_entry(cat({dgrid(-90, -10, 10, 100), json::array({0.1}),
                                dgrid(21, 99, 1, 100)}),
                           5),
               entry("correlation",
                     cat({json::array({0.0, 0.2}), dgrid(21, 90, 1, 100)})),
               coef_corr({{json("ramp"), 0.0}}),
               sd_corr({0.0}),
               entry("expectationSecondHalf", dgrid(5, 500, 5, 100)),
               entry_desc("varianceSecondHalf", dgrid(10, 99, 1, 100)),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 1000, 5, 100), dgrid(1010, 2000, 10, 100)})),
           }),
           mixture_entries(80),
           json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));

  // p = 50, n = 100, rho = 0.5^|i-j| in 5 blocks
  scenarios.push_back(scenario(
      power_truth(50, 100, 0.5, 5),
      cat({json::array({
               error_sd_entry(),
               power_entry(cat({dgrid(-90, -10, 10, 100),
                                json::array({0.1, 0.2, 0.3, 0.4}), dgrid(51, 99, 1, 100)}),
                           5),
               entry("correlation",
                     cat({json::array({0.0}), dgrid(10, 40, 10, 100), dgrid(51, 90, 1, 100)})),
               coef_corr({{json("ramp"), 0.0}}),
               sd_corr({0.0}),
               entry("expectationSecondHalf", dgrid(5, 500, 5, 100)),
               entry_desc("varianceSecondHalf", dgrid(10, 99, 1, 100)),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 1000, 5, 100), dgrid(1010, 2000, 10, 100)})),
           }),
           mixture_entries(80),
           json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));

  // quake, p = 3 after ingest, n = 100
  scenarios.push_back(scenario(
      dataset_truth("quake.csv", 100),
      cat({json::array({
               error_sd_entry(),
               power_entry(cat({dgrid(-90, -10, 10, 100), dgrid(1, 40, 1, 100),
                                dgrid(50, 90, 10, 100)}),
                           1),
               entry("correlation", cat({json::array({0.0}), dgrid(1, 40, 1, 100),
                                         dgrid(50, 90, 10, 100)})),
               coef_corr({{json("ramp"), 0.0}}),
               sd_corr({0.0}),
               entry("expectationSecondHalf", cat({dgrid(5, 100, 5, 100), json::array({2.0})})),
               entry_desc("varianceSecondHalf", dgrid(10, 99, 1, 100)),
               entry("varianceSecondHalf",
                     cat({dgrid(105, 150, 5, 100), json::array({2.0, 5.0})})),
           }),
           mixture_entries(5),
           json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));

  // wine_quality, pol, Yolanda
  const struct {
    const char* file;
    int n;
    int blocks;
  } dataset_rows[] = {{"wine_quality.csv", 100, 2}, {"pol.csv", 100, 2},
                      {"Yolanda.csv", 200, 10}};
  for (const auto& row : dataset_rows) {
    scenarios.push_back(scenario(
        dataset_truth(row.file, row.n),
        cat({json::array({
                 error_sd_entry(),
                 power_entry(dgrid(-90, 90, 10, 100), row.blocks),
                 entry("correlation", dgrid(0, 90, 10, 100)),
                 coef_corr({{json("ramp"), 0.0}}),
                 sd_corr({0.0}),
                 entry("expectationSecondHalf", dgrid(5, 500, 5, 100)),
                 entry_desc("varianceSecondHalf", dgrid(10, 99, 1, 100)),
                 entry("varianceSecondHalf", json::array({2.0, 5.0})),
             }),
             mixture_entries(99),
             json::array({lognormal_entry(), bernoulli_entry(false), error_dist_entry()})})));
  }

  json root;
  root["scenarios"] = std::move(scenarios);
  root["runtime"] = {{"nMse", 100},
                     {"nMod", 1000},
                     {"truthReplications", 25000000},
                     {"masterSeed", 1},
                     {"workers", 1}};
  return root.dump(2) + "\n";
}

std::vector<std::string> preset_names() { return {"table4"}; }

std::string preset_json(const std::string& name) {
  if (name == "table4") return table4_preset_json();
  throw InputError("unknown preset \"" + name + "\"; available: table4");
}

}  // namespace simmse
