#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "simmse/config.hpp"
#include "simmse/dgp.hpp"
#include "simmse/errors.hpp"

using namespace simmse;

namespace {

SweepConfig parse(const std::string& text) { return parse_sweep_config(text, "."); }

std::string single(const std::string& truth, const std::string& deviations,
                   const std::string& simulations = R"([{"kind": "parametric"}])") {
  return std::string("{\"truth\": ") + truth + ", \"simulations\": " + simulations +
         ", \"deviations\": [" + deviations + "]}";
}

const std::string kTruthP2 =
    R"({"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}})";

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const DeviationCell& cell_with_label(const ScenarioConfig& scen, const std::string& label) {
  for (const DeviationCell& cell : scen.deviations) {
    if (cell.label == label) return cell;
  }
  REQUIRE_MESSAGE(false, "no cell labeled ", label);
  return scen.deviations.front();
}

}  // namespace

TEST_CASE("defaults, naming, and the true cell") {
  const SweepConfig config = parse(single(kTruthP2, ""));
  CHECK(config.runtime.n_mse == 100);
  CHECK(config.runtime.n_mod == 1000);
  CHECK(config.runtime.truth_replications == 1000000);
  CHECK(config.runtime.master_seed == 1);
  CHECK(config.runtime.workers == 1);

  REQUIRE(config.scenarios.size() == 1);
  const ScenarioConfig& scen = config.scenarios[0];
  CHECK(scen.name == "p2n100rho0.2");
  CHECK(scen.p == 2);
  CHECK(scen.n == 100);
  CHECK(scen.correlation_label == "0.2");
  CHECK(scen.truth_ogm.beta.size() == 3);
  CHECK((scen.truth_ogm.beta.array() == 1.0).all());
  CHECK(error_sd(scen.truth_ogm.error_dist) == 0.3);
  CHECK(scen.truth_dgp.target_correlation(0, 1) == 0.2);

  REQUIRE(scen.deviations.size() == 1);
  const DeviationCell& true_cell = scen.deviations[0];
  CHECK(true_cell.kind == "true");
  CHECK(true_cell.label == "true");
  CHECK_FALSE(true_cell.affects_dgp);
  CHECK_FALSE(true_cell.assumed_dgp.has_value());
  CHECK(true_cell.assumed_ogm.beta == scen.truth_ogm.beta);
  CHECK(scen.crossover_axes.empty());

  REQUIRE(scen.variants.size() == 1);
  CHECK(scen.variants[0].name == "parametric");
}

TEST_CASE("variant parsing, default names, and applicability") {
  const std::string sims = R"([
    {"kind": "parametric"},
    {"kind": "pluginParametric", "estSampleSize": 500},
    {"kind": "plasmode", "strategy": "mOutOfN", "proportion": 0.1},
    {"kind": "plasmode", "strategy": "subsampling", "proportion": 0.632},
    {"kind": "plasmode", "strategy": "nOutOfN"},
    {"kind": "plasmode", "strategy": "smoothed"},
    {"kind": "plasmode", "strategy": "wild"},
    {"kind": "plasmode", "strategy": "none", "name": "control"}
  ])";
  const SweepConfig config = parse(single(
      kTruthP2, R"({"kind": "errorSd", "values": [0.1]}, {"kind": "correlation", "values": [0.5]})",
      sims));
  const ScenarioConfig& scen = config.scenarios[0];
  REQUIRE(scen.variants.size() == 8);
  CHECK(scen.variants[0].name == "parametric");
  CHECK(scen.variants[1].name == "plugin");
  CHECK(scen.variants[1].est_sample_size == 500);
  CHECK(scen.variants[2].name == "mOutOfN-0.1");
  CHECK(scen.variants[3].name == "subsampling-0.632");
  CHECK(scen.variants[4].name == "nOutOfN");
  CHECK(scen.variants[7].name == "control");

  const DeviationCell& sd_cell = cell_with_label(scen, "errorSd=0.1");
  const DeviationCell& corr_cell = cell_with_label(scen, "correlation=0.5");
  for (const SimulationVariant& v : scen.variants) {
    CHECK(cell_applies(scen.deviations[0], v));
    CHECK(cell_applies(sd_cell, v));  // outcome-model cells run everywhere
    CHECK(cell_applies(corr_cell, v) == (v.kind == SimulationVariant::Kind::kParametric));
  }
}

TEST_CASE("coefficient deviations: ramp and constants") {
  const SweepConfig config = parse(
      single(kTruthP2, R"({"kind": "coefficients", "values": ["ramp", 0, 10]})"));
  const ScenarioConfig& scen = config.scenarios[0];

  const DeviationCell& ramp = cell_with_label(scen, "coefficients=ramp");
  REQUIRE(ramp.assumed_ogm.beta.size() == 3);
  CHECK(ramp.assumed_ogm.beta(0) == 0.0);
  CHECK(ramp.assumed_ogm.beta(1) == 0.5);
  CHECK(ramp.assumed_ogm.beta(2) == 1.0);
  CHECK_FALSE(ramp.affects_dgp);
  CHECK_FALSE(ramp.assumed_dgp.has_value());
  CHECK(error_sd(ramp.assumed_ogm.error_dist) == 0.3);

  CHECK((cell_with_label(scen, "coefficients=0").assumed_ogm.beta.array() == 0.0).all());
  CHECK((cell_with_label(scen, "coefficients=10").assumed_ogm.beta.array() == 10.0).all());
}

TEST_CASE("error scale and shape deviations keep everything else fixed") {
  const SweepConfig config = parse(single(
      kTruthP2,
      R"({"kind": "errorSd", "values": [0.5, 0.1]},
         {"kind": "errorDistribution", "values": [{"family": "t", "df": 3},
                                                  {"family": "chiSquared", "df": 1}]})"));
  const ScenarioConfig& scen = config.scenarios[0];

  // Grid sorted ascending regardless of config order.
  CHECK(scen.deviations[1].label == "errorSd=0.1");
  CHECK(scen.deviations[2].label == "errorSd=0.5");
  CHECK(scen.deviations[1].axis_value == 0.1);
  CHECK(scen.deviations[1].has_axis_value);
  CHECK(error_sd(scen.deviations[1].assumed_ogm.error_dist) == 0.1);
  CHECK(scen.deviations[1].assumed_ogm.beta == scen.truth_ogm.beta);

  const DeviationCell& t3 = cell_with_label(scen, "errorDist=t(3)");
  const auto* t = std::get_if<ScaledTError>(&t3.assumed_ogm.error_dist);
  REQUIRE(t != nullptr);
  CHECK(t->df == 3.0);
  CHECK(t->target_sd == 0.3);  // truth sd carried over

  const DeviationCell& chi = cell_with_label(scen, "errorDist=chiSq(1)");
  const auto* c = std::get_if<ShiftedScaledChiSqError>(&chi.assumed_ogm.error_dist);
  REQUIRE(c != nullptr);
  CHECK(c->df == 1.0);
  CHECK(c->target_sd == 0.3);

  // No crossover axes for outcome-model deviations by default.
  CHECK(scen.crossover_axes.empty());
}

TEST_CASE("correlation deviation rebuilds the feature model at the new rho") {
  const SweepConfig config =
      parse(single(kTruthP2, R"({"kind": "correlation", "values": [0.5, -0.3]})"));
  const ScenarioConfig& scen = config.scenarios[0];
  const DeviationCell& cell = cell_with_label(scen, "correlation=0.5");
  CHECK(cell.affects_dgp);
  REQUIRE(cell.assumed_dgp.has_value());
  CHECK(cell.assumed_dgp->target_correlation(0, 1) == 0.5);
  CHECK(cell.assumed_dgp->target_correlation(1, 0) == 0.5);
  CHECK(cell.assumed_dgp->target_correlation(0, 0) == 1.0);
  CHECK(cell.assumed_ogm.beta == scen.truth_ogm.beta);

  REQUIRE(scen.crossover_axes.size() == 1);
  const CrossoverAxis& axis = scen.crossover_axes[0];
  CHECK(axis.kind == "correlation");
  CHECK(axis.true_value == "0.2");
  REQUIRE(axis.cell_indices.size() == 2);
  // Ascending scan order.
  CHECK(scen.deviations[axis.cell_indices[0]].axis_value == -0.3);
  CHECK(scen.deviations[axis.cell_indices[1]].axis_value == 0.5);
}

TEST_CASE("descending scan reverses the stored grid and the axis") {
  const SweepConfig config = parse(single(
      kTruthP2,
      R"({"kind": "varianceSecondHalf", "values": [0.5, 0.9, 0.1], "scan": "descending"})"));
  const ScenarioConfig& scen = config.scenarios[0];
  REQUIRE(scen.deviations.size() == 4);
  CHECK(scen.deviations[1].axis_value == 0.9);
  CHECK(scen.deviations[2].axis_value == 0.5);
  CHECK(scen.deviations[3].axis_value == 0.1);
  REQUIRE(scen.crossover_axes.size() == 1);
  CHECK(scen.crossover_axes[0].kind == "varianceSecondHalf (descending)");
  CHECK(scen.crossover_axes[0].true_value == "1");
}

TEST_CASE("expectation deviations shift the second half and keep the correlation") {
  const SweepConfig config = parse(
      "{\"truth\": {\"p\": 3, \"n\": 100, \"correlation\": {\"kind\": \"fixed\", "
      "\"rho\": 0.2}}, \"deviations\": "
      "[{\"kind\": \"expectationSecondHalf\", \"values\": [2]}]}");
  const ScenarioConfig& scen = config.scenarios[0];
  const DeviationCell& cell = cell_with_label(scen, "expectationSecondHalf=2");
  REQUIRE(cell.assumed_dgp.has_value());
  const DgpSpec& dgp = *cell.assumed_dgp;

  // Second half of p = 3 is features 1 and 2.
  const auto* m0 = std::get_if<NormalMarginal>(&dgp.marginals[0]);
  const auto* m1 = std::get_if<NormalMarginal>(&dgp.marginals[1]);
  const auto* m2 = std::get_if<NormalMarginal>(&dgp.marginals[2]);
  REQUIRE((m0 && m1 && m2));
  CHECK(m0->mean == 0.0);
  CHECK(m1->mean == 2.0);
  CHECK(m2->mean == 2.0);
  CHECK(m1->variance == 1.0);

  // The target correlation still matches the truth, bitwise.
  CHECK((dgp.target_correlation - scen.truth_dgp.target_correlation).cwiseAbs().maxCoeff() ==
        0.0);
  // All-normal with equal variances: the underlying covariance matches too.
  CHECK((dgp.underlying_covariance - scen.truth_dgp.underlying_covariance)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("expectationAll shifts every feature; p = 10 second half is five features") {
  const std::string truth10 =
      R"({"p": 10, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}})";
  const SweepConfig config = parse(single(
      truth10, R"({"kind": "expectationAll", "values": [1]},
                  {"kind": "expectationSecondHalf", "values": [3]})"));
  const ScenarioConfig& scen = config.scenarios[0];

  const DgpSpec& all = *cell_with_label(scen, "expectationAll=1").assumed_dgp;
  for (int i = 0; i < 10; ++i) {
    CHECK(std::get<NormalMarginal>(all.marginals[i]).mean == 1.0);
  }

  const DgpSpec& half = *cell_with_label(scen, "expectationSecondHalf=3").assumed_dgp;
  int shifted = 0;
  for (int i = 0; i < 10; ++i) {
    if (std::get<NormalMarginal>(half.marginals[i]).mean == 3.0) ++shifted;
  }
  CHECK(shifted == 5);
  CHECK(std::get<NormalMarginal>(half.marginals[4]).mean == 0.0);
  CHECK(std::get<NormalMarginal>(half.marginals[5]).mean == 3.0);
}

TEST_CASE("variance deviation solves the underlying covariance at the new scale") {
  const SweepConfig config =
      parse(single(kTruthP2, R"({"kind": "varianceSecondHalf", "values": [4]})"));
  const ScenarioConfig& scen = config.scenarios[0];
  const DgpSpec& dgp = *cell_with_label(scen, "varianceSecondHalf=4").assumed_dgp;
  CHECK(std::get<NormalMarginal>(dgp.marginals[0]).variance == 1.0);
  CHECK(std::get<NormalMarginal>(dgp.marginals[1]).variance == 4.0);
  // Normal-normal: covariance = rho * sd1 * sd2 = 0.2 * 1 * 2.
  CHECK(dgp.underlying_covariance(0, 1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(dgp.target_correlation(0, 1) == 0.2);
}

TEST_CASE("meanVarianceAll applies both moments everywhere") {
  const SweepConfig config = parse(single(
      kTruthP2, R"({"kind": "meanVarianceAll", "values": [{"mu": 10, "variance": 5}]})"));
  const DgpSpec& dgp =
      *cell_with_label(config.scenarios[0], "meanVarianceAll=(10;5)").assumed_dgp;
  for (int i = 0; i < 2; ++i) {
    CHECK(std::get<NormalMarginal>(dgp.marginals[i]).mean == 10.0);
    CHECK(std::get<NormalMarginal>(dgp.marginals[i]).variance == 5.0);
  }
}

TEST_CASE("contamination mixture matches the first-half moments exactly") {
  const SweepConfig config = parse(
      single(kTruthP2, R"({"kind": "mixtureContamination", "values": [0.05]})"));
  const ScenarioConfig& scen = config.scenarios[0];
  const DgpSpec& dgp = *cell_with_label(scen, "mixtureContamination=0.05").assumed_dgp;

  const auto* mix = std::get_if<GaussianMixtureMarginal>(&dgp.marginals[1]);
  REQUIRE(mix != nullptr);
  CHECK(mix->weight == 0.95);
  CHECK(mix->first.mean == 0.0);
  CHECK(mix->first.variance == 1.0);
  CHECK(mix->second.mean == 0.0);
  CHECK(mix->second.variance == 10.0);

  const auto* matched = std::get_if<NormalMarginal>(&dgp.marginals[0]);
  REQUIRE(matched != nullptr);
  CHECK(matched->mean == 0.0);
  // 0.95 * 1 + 0.05 * 10 = 1.45, means equal so no cross term.
  CHECK(matched->variance == doctest::Approx(1.45).epsilon(1e-15));
  CHECK(matched->variance == mixture_variance(*mix));

  // One mixture widens the underlying normal vector by one column.
  CHECK(dgp.underlying_covariance.rows() == 3);
  CHECK(dgp.target_correlation(0, 1) == 0.2);
  // Both component columns carry the same covariance against the normal.
  const double expected = solve_mixture_normal(*mix, matched->variance, 0.2);
  const int norm_col = dgp.column_map[0][0];
  CHECK(dgp.underlying_covariance(norm_col, dgp.column_map[1][0]) == expected);
  CHECK(dgp.underlying_covariance(norm_col, dgp.column_map[1][1]) == expected);
}

TEST_CASE("shift mixture matches mean 3a and variance 1 + 9a(1-a)") {
  const SweepConfig config =
      parse(single(kTruthP2, R"({"kind": "mixtureShift", "values": [0.1]})"));
  const DgpSpec& dgp =
      *cell_with_label(config.scenarios[0], "mixtureShift=0.1").assumed_dgp;

  const auto* mix = std::get_if<GaussianMixtureMarginal>(&dgp.marginals[1]);
  REQUIRE(mix != nullptr);
  CHECK(mix->weight == 0.9);
  CHECK(mix->second.mean == 3.0);
  CHECK(mix->second.variance == 1.0);

  const auto* matched = std::get_if<NormalMarginal>(&dgp.marginals[0]);
  REQUIRE(matched != nullptr);
  CHECK(matched->mean == marginal_mean(dgp.marginals[1]));
  CHECK(matched->mean == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(matched->variance == doctest::Approx(1.81).epsilon(1e-15));
}

TEST_CASE("log-normal deviation matches exp moments in the first half") {
  const SweepConfig config = parse(single(kTruthP2, R"({"kind": "logNormalSecondHalf"})"));
  const DgpSpec& dgp = *cell_with_label(config.scenarios[0], "logNormal").assumed_dgp;

  const auto* logn = std::get_if<LogNormalMarginal>(&dgp.marginals[1]);
  REQUIRE(logn != nullptr);
  CHECK(logn->log_mean == 0.0);
  CHECK(logn->log_variance == 1.0);

  const auto* matched = std::get_if<NormalMarginal>(&dgp.marginals[0]);
  REQUIRE(matched != nullptr);
  // E = exp(1/2), Var = (e - 1) e for a standard log-normal.
  CHECK(matched->mean == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK(matched->variance ==
        doctest::Approx((std::exp(1.0) - 1.0) * std::exp(1.0)).epsilon(1e-15));
  CHECK(matched->mean == marginal_mean(dgp.marginals[1]));
  CHECK(matched->variance == marginal_variance(dgp.marginals[1]));

  // Providing a grid is an error: the deviation has no parameter.
  CHECK_THROWS_AS(
      parse(single(kTruthP2, R"({"kind": "logNormalSecondHalf", "values": [1]})")),
      InputError);
}

TEST_CASE("bernoulli deviation replaces exactly the second feature") {
  const SweepConfig config = parse(
      single(kTruthP2, R"({"kind": "bernoulliSecondFeature", "values": [0.4]})"));
  const DgpSpec& dgp =
      *cell_with_label(config.scenarios[0], "bernoulli=0.4").assumed_dgp;

  CHECK(std::holds_alternative<NormalMarginal>(dgp.marginals[0]));
  const auto* bern = std::get_if<BernoulliMarginal>(&dgp.marginals[1]);
  REQUIRE(bern != nullptr);
  CHECK(bern->prob == 0.4);
  CHECK(dgp.underlying_covariance(0, 1) == solve_bernoulli_normal(0.4, 1.0, 0.2));

  // p = 1 has no second feature.
  CHECK_THROWS_AS(
      parse(single(R"({"p": 1, "n": 100, "correlation": {"kind": "fixed", "rho": 0}})",
                   R"({"kind": "bernoulliSecondFeature", "values": [0.4]})")),
      InputError);
}

TEST_CASE("combined deviations set both model parts") {
  const SweepConfig config = parse(single(
      kTruthP2,
      R"({"kind": "coefficientsCorrelation", "values": [{"beta": 0.05, "rho": -0.5}]},
         {"kind": "errorSdCorrelation", "values": [{"sd": 0.4, "rho": 0.5}]})"));
  const ScenarioConfig& scen = config.scenarios[0];

  const DeviationCell& cc =
      cell_with_label(scen, "coefficientsCorrelation=0.05;rho=-0.5");
  CHECK(cc.affects_dgp);
  CHECK(cc.assumed_dgp->target_correlation(0, 1) == -0.5);
  CHECK((cc.assumed_ogm.beta.array() == 0.05).all());
  CHECK(cc.axis_value == -0.5);

  const DeviationCell& sc = cell_with_label(scen, "errorSdCorrelation=0.4;rho=0.5");
  CHECK(sc.assumed_dgp->target_correlation(0, 1) == 0.5);
  CHECK(error_sd(sc.assumed_ogm.error_dist) == 0.4);
  CHECK(sc.assumed_ogm.beta == scen.truth_ogm.beta);

  // Neither is a crossover axis by default.
  CHECK(scen.crossover_axes.empty());
}

TEST_CASE("power block deviation with uneven blocks") {
  const std::string truth11 =
      R"({"p": 11, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}})";
  const SweepConfig config = parse(single(
      truth11,
      R"({"kind": "correlationPower", "values": [0.5], "blockCount": 2})"));
  const DgpSpec& dgp =
      *cell_with_label(config.scenarios[0], "correlationPower=0.5").assumed_dgp;
  const Eigen::MatrixXd& t = dgp.target_correlation;
  // 11 features in two blocks: 6 then 5.
  CHECK(t(0, 5) == 0.03125);   // 0.5^5, same block
  CHECK(t(0, 6) == 0.0);       // across blocks
  CHECK(t(6, 10) == 0.0625);   // 0.5^4, second block
  CHECK(t(5, 6) == 0.0);
  CHECK(t(3, 3) == 1.0);
}

TEST_CASE("powerBlock truth carries its block count into deviations") {
  const std::string truth =
      R"({"p": 4, "n": 100, "correlation": {"kind": "powerBlock", "rho": 0.5, "blockCount": 2}})";
  const SweepConfig config =
      parse(single(truth, R"({"kind": "correlationPower", "values": [0.3]})"));
  const ScenarioConfig& scen = config.scenarios[0];
  CHECK(scen.name == "p4n100rho0.5pow2");
  CHECK(scen.correlation_label == "0.5^|i-j| (2 blocks)");
  CHECK(scen.truth_dgp.target_correlation(0, 1) == 0.5);
  CHECK(scen.truth_dgp.target_correlation(0, 2) == 0.0);

  // The deviation inherits two blocks: entry (0, 2) stays zero.
  const DgpSpec& dgp = *cell_with_label(scen, "correlationPower=0.3").assumed_dgp;
  CHECK(dgp.target_correlation(0, 1) == 0.3);
  CHECK(dgp.target_correlation(0, 2) == 0.0);
  CHECK(dgp.target_correlation(2, 3) == 0.3);
}

TEST_CASE("infeasible grid points are skipped and reported, the rest survive") {
  // Bernoulli(0.5) against a standard normal can reach at most about 0.798.
  const std::string truth =
      R"({"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.9}})";
  const SweepConfig config = parse(single(
      truth, R"({"kind": "bernoulliSecondFeature", "values": [0.5]},
                {"kind": "errorSd", "values": [0.1]})"));
  REQUIRE(config.scenarios.size() == 1);
  const ScenarioConfig& scen = config.scenarios[0];
  CHECK(scen.deviations.size() == 2);  // true + errorSd; bernoulli cell dropped
  REQUIRE(config.skipped.size() == 1);
  CHECK(config.skipped[0].find("bernoulli=0.5") != std::string::npos);
  CHECK(config.skipped[0].find(scen.name) != std::string::npos);
}

TEST_CASE("missing dataset file skips the scenario, bad config still throws") {
  const std::string text = R"({"scenarios": [
    {"truth": {"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}}},
    {"truth": {"n": 50, "correlation": {"kind": "dataset", "path": "no_such_file.csv"}}}
  ]})";
  const SweepConfig config = parse_sweep_config(text, "/tmp");
  CHECK(config.scenarios.size() == 1);
  REQUIRE(config.skipped.size() == 1);
  CHECK(config.skipped[0].find("no_such_file.csv") != std::string::npos);
  CHECK(config.skipped[0].find("scenario 1") != std::string::npos);
}

TEST_CASE("validation failures carry context") {
  CHECK(error_of([] { parse(single(kTruthP2, R"({"kind": "nonsense", "values": [1]})")); })
            .find("nonsense") != std::string::npos);
  CHECK_THROWS_AS(parse(single(kTruthP2, R"({"kind": "errorSd", "values": []})")),
                  InputError);
  CHECK_THROWS_AS(parse(single(kTruthP2, R"({"kind": "errorSd", "values": [0]})")),
                  InputError);
  CHECK_THROWS_AS(parse(single(kTruthP2, R"({"kind": "varianceAll", "values": [-1]})")),
                  InputError);
  CHECK_THROWS_AS(
      parse(single(kTruthP2, R"({"kind": "mixtureShift", "values": [1.5]})")),
      InputError);
  CHECK_THROWS_AS(
      parse(single(kTruthP2, R"({"kind": "errorSd", "values": [0.1], "blockCount": 2})")),
      InputError);
  CHECK_THROWS_AS(
      parse(single(kTruthP2, R"({"kind": "coefficients", "values": ["ramp"], "crossover": true})")),
      InputError);
  CHECK_THROWS_AS(
      parse(single(kTruthP2, R"({"kind": "errorSd", "values": [0.1], "scan": "sideways"})")),
      InputError);
  // Unknown keys anywhere are rejected.
  CHECK_THROWS_AS(parse(R"({"truth": {"p": 2, "n": 100, "rho": 0.2,
                   "correlation": {"kind": "fixed", "rho": 0.2}}})"),
                  InputError);
  // Beta array must have p + 1 entries.
  CHECK_THROWS_AS(parse(R"({"truth": {"p": 2, "n": 100, "beta": [1, 2],
                   "correlation": {"kind": "fixed", "rho": 0.2}}})"),
                  InputError);
  // n must exceed p + 1.
  CHECK_THROWS_AS(parse(R"({"truth": {"p": 2, "n": 3,
                   "correlation": {"kind": "fixed", "rho": 0.2}}})"),
                  InputError);
  // Duplicate variant names.
  CHECK_THROWS_AS(
      parse(single(kTruthP2, "",
                   R"([{"kind": "parametric"}, {"kind": "parametric"}])")),
      InputError);
  // Plugin sample must exceed p + 1.
  CHECK_THROWS_AS(
      parse(single(kTruthP2, "",
                   R"([{"kind": "pluginParametric", "estSampleSize": 3}])")),
      InputError);
  // Bad resampling proportion.
  CHECK_THROWS_AS(
      parse(single(kTruthP2, "",
                   R"([{"kind": "plasmode", "strategy": "mOutOfN", "proportion": 0}])")),
      InputError);
  // Unknown strategy.
  CHECK_THROWS_AS(
      parse(single(kTruthP2, "",
                   R"([{"kind": "plasmode", "strategy": "jackknife"}])")),
      InputError);
  // Runtime bounds.
  CHECK_THROWS_AS(parse(R"({"truth": {"p": 2, "n": 100,
                   "correlation": {"kind": "fixed", "rho": 0.2}},
                   "runtime": {"truthReplications": 10}})"),
                  InputError);
  CHECK_THROWS_AS(parse("not json at all"), InputError);
}

TEST_CASE("explicit truth matrices and custom error distributions parse") {
  const SweepConfig config = parse(R"({"truth": {
    "n": 100,
    "correlation": {"kind": "explicit", "matrix": [[1.0, 0.3], [0.3, 1.0]]},
    "beta": 2.5,
    "errorSd": 0.7,
    "errorDistribution": {"family": "t", "df": 5}
  }})");
  const ScenarioConfig& scen = config.scenarios[0];
  CHECK(scen.p == 2);
  CHECK(scen.truth_dgp.target_correlation(0, 1) == 0.3);
  CHECK((scen.truth_ogm.beta.array() == 2.5).all());
  const auto* t = std::get_if<ScaledTError>(&scen.truth_ogm.error_dist);
  REQUIRE(t != nullptr);
  CHECK(t->df == 5.0);
  CHECK(t->target_sd == 0.7);
}

TEST_CASE("the full preset parses into the twelve baseline scenarios") {
  // Without the dataset files the four data-backed scenarios are skipped.
  const SweepConfig config = parse_sweep_config(table4_preset_json(), ".");
  REQUIRE(config.scenarios.size() == 8);
  CHECK(config.scenarios[0].name == "p2n100rho0.2");
  CHECK(config.scenarios[1].name == "p2n50rho0.2");
  CHECK(config.scenarios[2].name == "p2n100rho0.5");
  CHECK(config.scenarios[3].name == "p10n100rho0.2");
  CHECK(config.scenarios[4].name == "p10n50rho0.2");
  CHECK(config.scenarios[5].name == "p50n100rho0.2");
  CHECK(config.scenarios[6].name == "p50n100rho0.2pow5");
  CHECK(config.scenarios[7].name == "p50n100rho0.5pow5");

  CHECK(config.runtime.n_mse == 100);
  CHECK(config.runtime.n_mod == 1000);
  CHECK(config.runtime.truth_replications == 25000000);

  for (const ScenarioConfig& scen : config.scenarios) {
    CHECK(scen.variants.size() == 18);
    CHECK(scen.deviations[0].kind == "true");
  }

  // Hand-counted deviation cells for the first scenario: 1 true + 4 errorSd
  // + 63 correlation + 3 + 2 combos + 22 + 1 expectation + 13 + 1 variance
  // + 1 meanVariance + 5 + 5 mixtures + 1 logNormal + 5 bernoulli + 4 shapes.
  CHECK(config.scenarios[0].deviations.size() == 131);
  CHECK(config.scenarios[0].crossover_axes.size() == 7);

  // Four dataset scenarios skipped, plus the mixture grid points whose
  // matched-moment correlations are unattainable (alpha too large for the
  // component covariance bound): 55 + 36 + 69 + 68 cells over the p50 rows.
  int dataset_skips = 0;
  int infeasible_skips = 0;
  for (const std::string& s : config.skipped) {
    if (s.find("dataset file") != std::string::npos) ++dataset_skips;
    if (s.find("attainable") != std::string::npos) ++infeasible_skips;
  }
  CHECK(dataset_skips == 4);
  CHECK(infeasible_skips == 228);
  CHECK(config.skipped.size() == 232);

  // The p50 power-block truth: adjacent 0.2, zero across the ten-feature
  // block boundary.
  const ScenarioConfig& pow5 = config.scenarios[6];
  CHECK(pow5.truth_dgp.target_correlation(0, 1) == 0.2);
  CHECK(pow5.truth_dgp.target_correlation(0, 9) == doctest::Approx(std::pow(0.2, 9)));
  CHECK(pow5.truth_dgp.target_correlation(9, 10) == 0.0);
  CHECK(pow5.correlation_label == "0.2^|i-j| (5 blocks)");
}

TEST_CASE("committed preset file matches the generator") {
  const std::string path = std::string(SIMMSE_SOURCE_DIR) + "/presets/table4.json";
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing ", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == table4_preset_json());
  CHECK(preset_json("table4") == table4_preset_json());
  CHECK_THROWS_AS(preset_json("table5"), InputError);
  CHECK(preset_names() == std::vector<std::string>{"table4"});
}

TEST_CASE("duplicate scenario names are rejected, explicit names accepted") {
  const std::string dup = R"({"scenarios": [
    {"truth": {"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}}},
    {"truth": {"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}}}
  ]})";
  CHECK_THROWS_AS(parse(dup), InputError);

  const std::string named = R"({"scenarios": [
    {"name": "a", "truth": {"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}}},
    {"name": "b", "truth": {"p": 2, "n": 100, "correlation": {"kind": "fixed", "rho": 0.2}}}
  ]})";
  const SweepConfig config = parse(named);
  CHECK(config.scenarios[0].name == "a");
  CHECK(config.scenarios[1].name == "b");
}
