#include "simmse/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace simmse {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

// 20-point Gauss-Legendre rule on [-1, 1]. Nodes are roots of P_20 found by
// Newton iteration on the three-term recurrence; generating them at startup
// avoids a table of frozen constants.
struct GlRule {
  double node[20];
  double weight[20];
};

GlRule make_gl_rule() {
  constexpr int n = 20;
  GlRule rule{};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p_curr = 1.0;
      double p_prev = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p_old = p_prev;
        p_prev = p_curr;
        p_curr = ((2.0 * j + 1.0) * x * p_prev - j * p_old) / (j + 1.0);
      }
      deriv = n * (x * p_curr - p_prev) / (x * x - 1.0);
      const double step = p_curr / deriv;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.node[i] = -x;
    rule.node[n - 1 - i] = x;
    rule.weight[i] = rule.weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
  }
  return rule;
}

const GlRule& gl_rule() {
  static const GlRule rule = make_gl_rule();
  return rule;
}

template <typename F>
double gl20(const F& f, double a, double b) {
  const GlRule& rule = gl_rule();
  const double mid = 0.5 * (a + b);
  const double halfwidth = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 20; ++i) {
    sum += rule.weight[i] * f(mid + halfwidth * rule.node[i]);
  }
  return halfwidth * sum;
}

template <typename F>
double adaptive_gl(const F& f, double a, double b, double whole, double tol,
                   int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl20(f, a, mid);
  const double right = gl20(f, mid, b);
  if (std::abs(left + right - whole) <= tol || depth >= 48) {
    return left + right;
  }
  return adaptive_gl(f, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive_gl(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double normal_pdf(double x) noexcept {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie strictly in (0, 1)");
  }
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double density = normal_pdf(x);
    if (density <= 0.0) break;
    x -= (normal_cdf(x) - p) / density;
  }
  return x;
}

double bvn_cdf(double h, double k, double r) {
  if (std::isnan(h) || std::isnan(k) || std::isnan(r)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (std::abs(r) > 1.0) {
    throw std::invalid_argument("bvn_cdf: correlation must lie in [-1, 1]");
  }
  if (std::isinf(h) || std::isinf(k)) {
    if (h < 0.0 || k < 0.0) return 0.0;
    if (std::isinf(h) && std::isinf(k)) return 1.0;
    return std::isinf(h) ? normal_cdf(k) : normal_cdf(h);
  }
  const double ph = normal_cdf(h);
  const double pk = normal_cdf(k);
  // Degenerate correlations reduce to the Frechet envelope.
  if (r == 1.0) return std::min(ph, pk);
  if (r == -1.0) return std::max(0.0, ph + pk - 1.0);
  if (r == 0.0) return ph * pk;

  // d/dr P(X<=h, Y<=k; r) equals the bivariate density at (h, k), so
  //   P = Phi(h)Phi(k) + (1/2pi) Int_0^r exp(-q(t)) / sqrt(1-t^2) dt,
  //   q(t) = (h^2 - 2hkt + k^2) / (2(1-t^2)).
  // Substituting t = sin(theta) removes the 1/sqrt(1-t^2) factor. Writing
  // u = 1 - sin(theta) = 2 sin^2(pi/4 - theta/2) keeps the exponent stable
  // as theta approaches pi/2 where the naive form cancels catastrophically.
  const double hk_gap_sq = (h - k) * (h - k);
  const double hk = h * k;
  const auto integrand = [&](double theta) {
    const double s = std::sin(0.25 * kPi - 0.5 * theta);
    const double u = 2.0 * s * s;
    const double exponent = -(hk_gap_sq + 2.0 * hk * u) / (2.0 * u * (2.0 - u));
    return std::exp(exponent);
  };

  double a = 0.0;
  double b = std::asin(r);
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double whole = gl20(integrand, a, b);
  const double correction =
      sign * adaptive_gl(integrand, a, b, whole, 1e-12, 0) / (2.0 * kPi);

  double result = ph * pk + correction;
  const double lower = std::max(0.0, ph + pk - 1.0);
  const double upper = std::min(ph, pk);
  return std::min(std::max(result, lower), upper);
}

}  // namespace simmse
