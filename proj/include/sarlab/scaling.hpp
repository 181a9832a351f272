#pragma once

// Empirical accuracy-cliff law SAR(n) = exp(-beta0 * n * alpha^(n-1)) and its
// inverse problem.
//
// The law is linear after the transform
//   y(n) = log(-log SAR(n)) - log n = log beta0 + (n - 1) log alpha,
// so fitting is a weighted straight-line regression in (n - 1, y). Weights are
// the inverse delta-method variances of y for binomial estimates,
//   Var y = (1 - p) / (trials * p * log(p)^2),
// or uniform when the curve carries no trial counts.

#include <optional>
#include <span>

#include "sarlab/scoring.hpp"

namespace sarlab {

// exp(-beta0 * n * alpha^(n-1)); n may be fractional. Throws ParameterError
// unless n, alpha and beta0 are positive.
double sar_empirical(double n, double alpha, double beta0);

// 1 + log(1/beta0) / log(alpha). DomainError when alpha <= 1 (no cliff) or
// beta0 outside (0, 1].
double nstar_closed(double alpha, double beta0);

// Root of SAR(n) = 1/2, by bracketing bisection to 1e-9 absolute. May be
// below 1. NumericError when no sign change is found up to n = 1e6.
double nstar_half(double alpha, double beta0);

struct CurveSample {
  double n = 0.0;
  double sar = 0.0;
  double trials = 0.0;  // 0 means "unknown": the fit is unweighted
};

enum class ExtremePolicy {
  exclude,  // drop points with SAR exactly 0 or 1
  clip,     // replace them by 1/(2 trials) and 1 - 1/(2 trials)
};

struct FitOptions {
  ExtremePolicy extremes = ExtremePolicy::exclude;
  // Second stage: binomial maximum likelihood (Fisher scoring) started from
  // the regression estimate. Needs trial counts.
  bool mle_refine = false;
};

struct ScalingFit {
  double alpha = 1.0;
  double beta0 = 1.0;
  std::optional<double> nstar_closed;  // only when alpha > 1 and beta0 <= 1
  std::optional<double> nstar_half;
  double residual = 0.0;  // unweighted sum of squared residuals in y-space
  int points_used = 0;
  // Standard errors of log alpha / log beta0 and their covariance. NaN when
  // the data cannot support them (two unweighted points).
  double log_alpha_se = 0.0;
  double log_beta0_se = 0.0;
  double log_cov = 0.0;

  // 95% normal interval for log alpha.
  std::pair<double, double> log_alpha_ci95() const;
};

ScalingFit fit_scaling(std::span<const CurveSample> samples, const FitOptions& options = {});
ScalingFit fit_scaling(const SarCurve& curve, const FitOptions& options = {});

// Same transform and weights with the slope pinned to log(alpha).
ScalingFit fit_scaling_fixed_alpha(std::span<const CurveSample> samples, double alpha,
                                   const FitOptions& options = {});

std::vector<CurveSample> to_samples(const SarCurve& curve);

struct MapPoint {
  double log_alpha = 0.0;
  double log_beta0 = 0.0;
  double log_nstar = 0.0;
};

// Coordinates on the correlation-error map: natural logs of alpha, beta0 and
// the SAR = 1/2 crossover. DomainError when the fit has no positive nstar_half.
MapPoint map_point(const ScalingFit& fit);

}  // namespace sarlab
