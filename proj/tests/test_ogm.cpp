#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "simmse/dgp.hpp"
#include "simmse/errors.hpp"
#include "simmse/ogm.hpp"
#include "simmse/rng.hpp"
#include "test_support.hpp"

using namespace simmse;

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

DesignMatrix line_design(std::initializer_list<double> xs) {
  DesignMatrix d;
  d.values.resize(static_cast<Eigen::Index>(xs.size()), 2);
  d.values.col(0).setOnes();
  Eigen::Index i = 0;
  for (double x : xs) d.values(i++, 1) = x;
  return d;
}

}  // namespace

TEST_CASE("normal errors match their moments") {
  RngStream stream = derive_stream(21, {0});
  const Eigen::VectorXd eps = sample_errors(NormalError{0.3}, 1000000, stream);
  const auto v = to_vector(eps);
  CHECK(test_support::mean(v) == doctest::Approx(0.0).epsilon(1.0).scale(0.001));
  CHECK(test_support::sample_sd(v) == doctest::Approx(0.3).epsilon(1.0).scale(0.001));
}

TEST_CASE("scaled t errors match their moments") {
  // df = 5 keeps the kurtosis finite so the sample sd concentrates.
  RngStream stream = derive_stream(22, {0});
  const Eigen::VectorXd eps =
      sample_errors(ScaledTError{5.0, 0.3}, 1000000, stream);
  const auto v = to_vector(eps);
  CHECK(test_support::mean(v) == doctest::Approx(0.0).epsilon(1.0).scale(0.0015));
  CHECK(test_support::sample_sd(v) == doctest::Approx(0.3).epsilon(1.0).scale(0.002));
}

TEST_CASE("shifted scaled chi-squared errors match their moments") {
  RngStream stream = derive_stream(23, {0});
  const Eigen::VectorXd eps =
      sample_errors(ShiftedScaledChiSqError{1.0, 0.3}, 1000000, stream);
  const auto v = to_vector(eps);
  CHECK(test_support::mean(v) == doctest::Approx(0.0).epsilon(1.0).scale(0.001));
  CHECK(test_support::sample_sd(v) == doctest::Approx(0.3).epsilon(1.0).scale(0.002));
  // Right skew survives the centering.
  double third = 0.0;
  for (double x : v) third += x * x * x;
  CHECK(third / static_cast<double>(v.size()) > 0.0);
}

TEST_CASE("errors factor exactly into sd times a unit-sd shape") {
  // The sd enters as one final multiplication, bitwise reproducible across
  // coupled streams. Doubling the sd therefore doubles every draw exactly.
  for (const ErrorDistSpec spec :
       {ErrorDistSpec{NormalError{0.3}}, ErrorDistSpec{ScaledTError{3.0, 0.3}},
        ErrorDistSpec{ShiftedScaledChiSqError{2.0, 0.3}}}) {
    RngStream s1 = derive_stream(24, {0});
    RngStream s2 = derive_stream(24, {0});
    const Eigen::VectorXd scaled = sample_errors(spec, 200, s1);
    const Eigen::VectorXd unit = sample_unit_errors(spec, 200, s2);
    CHECK(scaled == (0.3 * unit.array()).matrix());
  }

  RngStream s1 = derive_stream(25, {0});
  RngStream s2 = derive_stream(25, {0});
  const Eigen::VectorXd narrow = sample_errors(ScaledTError{3.0, 0.3}, 200, s1);
  const Eigen::VectorXd wide = sample_errors(ScaledTError{3.0, 0.6}, 200, s2);
  CHECK(wide == (2.0 * narrow.array()).matrix());
}

TEST_CASE("error distribution validation") {
  CHECK_THROWS_AS(validate_error_dist(ScaledTError{2.0, 0.3}), InputError);
  CHECK_THROWS_AS(validate_error_dist(ShiftedScaledChiSqError{0.5, 0.3}), InputError);
  CHECK_THROWS_AS(validate_error_dist(NormalError{-0.1}), InputError);
  CHECK_NOTHROW(validate_error_dist(NormalError{0.0}));
  CHECK_NOTHROW(validate_error_dist(ScaledTError{2.5, 0.3}));
  CHECK_NOTHROW(validate_error_dist(ShiftedScaledChiSqError{1.0, 0.3}));
}

TEST_CASE("outcomes follow the linear model") {
  const DesignMatrix design = line_design({1.0, 2.0, 3.0});
  OgmSpec ogm;
  ogm.beta = Eigen::Vector2d(1.0, 1.0);
  ogm.error_dist = NormalError{0.0};  // exactness hook

  RngStream stream = derive_stream(26, {0});
  const Eigen::VectorXd y = generate_outcome(design, ogm, stream);
  CHECK(y == Eigen::Vector3d(2.0, 3.0, 4.0));

  // With zero coefficients the outcome is the noise draw itself.
  OgmSpec pure_noise;
  pure_noise.beta = Eigen::Vector2d(0.0, 0.0);
  pure_noise.error_dist = NormalError{0.3};
  RngStream s1 = derive_stream(27, {0});
  RngStream s2 = derive_stream(27, {0});
  const Eigen::VectorXd y2 = generate_outcome(design, pure_noise, s1);
  const Eigen::VectorXd eps = sample_errors(pure_noise.error_dist, 3, s2);
  CHECK(y2 == eps);

  OgmSpec wrong;
  wrong.beta = Eigen::Vector3d(1.0, 1.0, 1.0);
  wrong.error_dist = NormalError{0.3};
  RngStream s3 = derive_stream(28, {0});
  CHECK_THROWS_AS((void)generate_outcome(design, wrong, s3), InputError);
}

TEST_CASE("least squares recovers an exact line") {
  const DesignMatrix design = line_design({0.0, 1.0, 2.0});
  const Eigen::Vector3d y(1.0, 3.0, 5.0);
  const LseFit fit = fit_lse(design, y);
  CHECK_FALSE(fit.rank_deficient);
  CHECK(fit.beta_hat[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.beta_hat[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("least squares recovers noiseless coefficients") {
  const DgpSpec spec = standard_normal_dgp(4, FixedCorrelation{0.3});
  DesignSampler sampler(spec);
  RngStream stream = derive_stream(29, {0});
  const DesignMatrix design = sampler.sample(200, stream);
  Eigen::VectorXd beta(5);
  beta << 0.5, -1.0, 2.0, 0.0, 3.0;
  const LseFit fit = fit_lse(design, design.values * beta);
  CHECK_FALSE(fit.rank_deficient);
  for (int j = 0; j < 5; ++j) {
    CHECK(fit.beta_hat[j] == doctest::Approx(beta[j]).epsilon(1e-10));
  }
}

TEST_CASE("duplicated columns are flagged, not thrown") {
  Eigen::MatrixXd x(5, 3);
  for (int i = 0; i < 5; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = i + 1.0;
    x(i, 2) = i + 1.0;
  }
  const LseFit fit = fit_lse(x, Eigen::VectorXd::Ones(5));
  CHECK(fit.rank_deficient);
}

TEST_CASE("fewer rows than columns is an input error") {
  Eigen::MatrixXd x(2, 3);
  x.setOnes();
  CHECK_THROWS_AS((void)fit_lse(x, Eigen::VectorXd::Ones(2)), InputError);
  Eigen::MatrixXd ok(3, 3);
  ok.setIdentity();
  CHECK_THROWS_AS((void)fit_lse(ok, Eigen::VectorXd::Ones(2)), InputError);
}

TEST_CASE("residuals are orthogonal to the design columns") {
  const DgpSpec spec = standard_normal_dgp(3, FixedCorrelation{0.5});
  DesignSampler sampler(spec);
  RngStream stream = derive_stream(30, {0});
  const DesignMatrix design = sampler.sample(100, stream);
  OgmSpec ogm;
  ogm.beta = Eigen::VectorXd::Ones(4);
  ogm.error_dist = NormalError{0.5};
  RngStream noise = derive_stream(30, {1});
  const Eigen::VectorXd y = generate_outcome(design, ogm, noise);
  const LseFit fit = fit_lse(design, y);
  const Eigen::VectorXd residual = y - design.values * fit.beta_hat;
  const double scale = design.values.norm() * y.norm();
  CHECK((design.values.transpose() * residual).norm() / scale < 1e-8);
}

TEST_CASE("fit error does not depend on the coefficients") {
  // beta_hat - beta = (X^t X)^-1 X^t eps: with the same noise, the fit error
  // is a function of X and eps alone. Fitting the noise directly gives the
  // same vector, which is what lets an engine reuse one fit across betas.
  const DgpSpec spec = standard_normal_dgp(3, FixedCorrelation{0.2});
  DesignSampler sampler(spec);
  RngStream stream = derive_stream(31, {0});
  const DesignMatrix design = sampler.sample(50, stream);
  RngStream noise = derive_stream(31, {1});
  const Eigen::VectorXd eps = sample_errors(NormalError{0.3}, 50, noise);

  Eigen::VectorXd beta1(4), beta2(4);
  beta1 << 0.0, 1.0, -2.0, 0.5;
  beta2 << 100.0, -50.0, 7.0, 0.0;
  const Eigen::VectorXd err1 =
      fit_lse(design, design.values * beta1 + eps).beta_hat - beta1;
  const Eigen::VectorXd err2 =
      fit_lse(design, design.values * beta2 + eps).beta_hat - beta2;
  const Eigen::VectorXd direct = fit_lse(design, eps).beta_hat;

  CHECK((err1 - err2).norm() < 1e-9);
  CHECK((err1 - direct).norm() < 1e-9);
}
