#pragma once

namespace simmse {

// Standard normal density.
double normal_pdf(double x) noexcept;

// Standard normal CDF via erfc, accurate in both tails.
double normal_cdf(double x) noexcept;

// Standard normal quantile for p in (0, 1). Bisection bracket plus Newton
// polish; a few dozen erfc evaluations, accurate to machine precision. This
// sits on cold paths only (threshold setup, solver bounds), never in the
// per-replication sampling loop.
double normal_quantile(double p);

// P(X1 <= h, X2 <= k) for standard bivariate normal with correlation r,
// r in [-1, 1] (the degenerate endpoints are evaluated analytically).
//
// Uses Drezner & Wesolowsky's reduction of the bivariate CDF to a single
// integral over the correlation parameter, taken in the arcsine-substituted
// form which is free of endpoint singularities, then integrated by adaptive
// Gauss-Legendre. Absolute accuracy is well below the 1e-7 target; see the
// test suite for quadrature cross-checks against an independent integral.
double bvn_cdf(double h, double k, double r);

}  // namespace simmse
