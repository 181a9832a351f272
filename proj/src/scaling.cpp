#include "sarlab/scaling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sarlab/error.hpp"

namespace sarlab {

namespace {

void check_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be positive and finite, got " +
                         std::to_string(value));
  }
}

struct Point {
  double x;       // n - 1
  double log_n;   // offset
  double y;       // log(-log p) - log n
  double trials;
  double weight;
};

// Inverse delta-method variance of y at SAR = exp(-rate).
double delta_weight(double trials, double rate) {
  return trials * std::exp(-rate) * rate * rate / -std::expm1(-rate);
}

std::optional<double> usable_sar(const CurveSample& s, ExtremePolicy policy) {
  double p = s.sar;
  if (policy == ExtremePolicy::clip && s.trials > 0.0) {
    const double floor = 1.0 / (2.0 * s.trials);
    if (p <= 0.0) p = floor;
    if (p >= 1.0) p = 1.0 - floor;
  }
  // Subnormal estimates carry too few significant bits for the log transform.
  if (!(p >= std::numeric_limits<double>::min() && p < 1.0)) return std::nullopt;
  return p;
}

struct Prepared {
  std::vector<Point> points;
  bool weighted = true;
};

Prepared prepare(std::span<const CurveSample> samples, ExtremePolicy policy) {
  Prepared out;
  for (const auto& s : samples) {
    if (s.trials <= 0.0) out.weighted = false;
  }
  if (policy == ExtremePolicy::clip && !out.weighted) {
    throw FitError("clipping SAR = 0 / 1 points needs trial counts on every point");
  }
  for (const auto& s : samples) {
    check_positive(s.n, "n");
    const auto p = usable_sar(s, policy);
    if (!p) continue;
    const double log_p = std::log(*p);
    Point pt{};
    pt.x = s.n - 1.0;
    pt.log_n = std::log(s.n);
    pt.y = std::log(-log_p) - pt.log_n;
    pt.trials = s.trials;
    pt.weight = out.weighted ? delta_weight(s.trials, -log_p) : 1.0;
    out.points.push_back(pt);
  }
  if (out.points.size() < 2) {
    throw FitError("need at least 2 usable points with SAR strictly in (0, 1), got " +
                   std::to_string(out.points.size()));
  }
  return out;
}

void fill_derived(ScalingFit& fit) {
  if (fit.alpha > 1.0 && fit.beta0 <= 1.0) fit.nstar_closed = nstar_closed(fit.alpha, fit.beta0);
  try {
    fit.nstar_half = nstar_half(fit.alpha, fit.beta0);
  } catch (const NumericError&) {
    fit.nstar_half.reset();
  }
}

// Binomial log-likelihood under SAR = exp(-exp(eta)).
struct Binomial {
  double successes;
  double trials;
  double x;
  double log_n;
};

double log_likelihood(std::span<const Binomial> data, double b0, double b1) {
  double ll = 0.0;
  for (const auto& d : data) {
    const double rate = std::exp(b0 + b1 * d.x + d.log_n);
    const double log_fail = std::log(-std::expm1(-rate));
    ll += -d.successes * rate + (d.trials - d.successes) * log_fail;
  }
  return ll;
}

void refine_mle(std::span<const CurveSample> samples, ScalingFit& fit) {
  std::vector<Binomial> data;
  for (const auto& s : samples) {
    if (s.trials <= 0.0) throw FitError("maximum-likelihood refinement needs trial counts");
    data.push_back({s.sar * s.trials, s.trials, s.n - 1.0, std::log(s.n)});
  }
  double b0 = std::log(fit.beta0);
  double b1 = std::log(fit.alpha);
  double ll = log_likelihood(data, b0, b1);
  double i00 = 0.0, i01 = 0.0, i11 = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double g0 = 0.0, g1 = 0.0;
    i00 = i01 = i11 = 0.0;
    for (const auto& d : data) {
      const double rate = std::exp(b0 + b1 * d.x + d.log_n);
      const double fail = -std::expm1(-rate);          // 1 - mu
      const double mu = std::exp(-rate);
      // d ll / d eta and the expected information per unit eta.
      const double score = -d.successes * rate + (d.trials - d.successes) * rate * mu / fail;
      const double info = d.trials * rate * rate * mu / fail;
      g0 += score;
      g1 += score * d.x;
      i00 += info;
      i01 += info * d.x;
      i11 += info * d.x * d.x;
    }
    const double det = i00 * i11 - i01 * i01;
    if (!(det > 0.0)) throw NumericError("singular information matrix in MLE refinement");
    double step0 = (i11 * g0 - i01 * g1) / det;
    double step1 = (i00 * g1 - i01 * g0) / det;
    double next_ll = log_likelihood(data, b0 + step0, b1 + step1);
    int halvings = 0;
    while (!(next_ll >= ll) && halvings < 40) {
      step0 *= 0.5;
      step1 *= 0.5;
      next_ll = log_likelihood(data, b0 + step0, b1 + step1);
      ++halvings;
    }
    b0 += step0;
    b1 += step1;
    const bool converged = std::abs(step0) + std::abs(step1) < 1e-12 || next_ll - ll < 1e-13;
    ll = next_ll;
    if (converged) break;
    if (iter == 199) throw NumericError("MLE refinement did not converge");
  }
  const double det = i00 * i11 - i01 * i01;
  fit.beta0 = std::exp(b0);
  fit.alpha = std::exp(b1);
  fit.log_beta0_se = std::sqrt(i11 / det);
  fit.log_alpha_se = std::sqrt(i00 / det);
  fit.log_cov = -i01 / det;
  fit.points_used = static_cast<int>(data.size());
}

}  // namespace

double sar_empirical(double n, double alpha, double beta0) {
  check_positive(n, "n");
  check_positive(alpha, "alpha");
  check_positive(beta0, "beta0");
  return std::exp(-beta0 * n * std::pow(alpha, n - 1.0));
}

double nstar_closed(double alpha, double beta0) {
  if (!(alpha > 1.0)) {
    throw DomainError("nstar_closed needs alpha > 1 (no cliff otherwise), got " +
                      std::to_string(alpha));
  }
  if (!(beta0 > 0.0 && beta0 <= 1.0)) {
    throw DomainError("nstar_closed needs beta0 in (0, 1], got " + std::to_string(beta0));
  }
  return 1.0 + std::log(1.0 / beta0) / std::log(alpha);
}

double nstar_half(double alpha, double beta0) {
  check_positive(alpha, "alpha");
  check_positive(beta0, "beta0");
  // g(n) = log(beta0 n alpha^(n-1)) - log(ln 2); increasing in n for alpha >= 1.
  const double log_alpha = std::log(alpha);
  const double target = std::log(std::numbers::ln2);
  const auto g = [&](double n) {
    return std::log(beta0) + std::log(n) + (n - 1.0) * log_alpha - target;
  };
  constexpr double kMaxN = 1e6;
  double lo = 1.0;
  while (g(lo) >= 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw NumericError("nstar_half: no lower bracket");
  }
  double hi = lo;
  do {
    lo = hi;
    hi = std::min(2.0 * hi, kMaxN);
    if (g(hi) > 0.0) break;
    if (hi >= kMaxN) throw NumericError("nstar_half: SAR stays above 1/2 up to n = 1e6");
  } while (true);
  for (int iter = 0; iter < 400 && hi - lo > 1e-10; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> ScalingFit::log_alpha_ci95() const {
  const double centre = std::log(alpha);
  return {centre - kZ95 * log_alpha_se, centre + kZ95 * log_alpha_se};
}

std::vector<CurveSample> to_samples(const SarCurve& curve) {
  std::vector<CurveSample> samples;
  samples.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    samples.push_back({static_cast<double>(p.n), p.estimate, static_cast<double>(p.trials)});
  }
  return samples;
}

namespace {

struct Line {
  double intercept = 0.0;
  double slope = 0.0;
  double sw = 0.0;
  double xm = 0.0;
  double sxx = 0.0;
};

Line weighted_line(std::span<const Point> pts) {
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& p : pts) {
    sw += p.weight;
    sx += p.weight * p.x;
    sy += p.weight * p.y;
  }
  const double xm = sx / sw;
  const double ym = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += p.weight * (p.x - xm) * (p.x - xm);
    sxy += p.weight * (p.x - xm) * (p.y - ym);
  }
  if (!(sxx > 0.0)) throw FitError("usable points must span at least two distinct lengths");
  const double slope = sxy / sxx;
  return {ym - slope * xm, slope, sw, xm, sxx};
}

// Re-evaluates the delta-method weights at the fitted curve instead of the
// observed estimates, whose noise would otherwise leak into the weights.
void reweight(std::span<Point> pts, double intercept, double slope) {
  for (auto& p : pts) {
    p.weight = delta_weight(p.trials, std::exp(intercept + slope * p.x + p.log_n));
  }
}

bool settled(double before, double after) {
  return std::abs(after - before) <= 1e-13 * std::max(1.0, std::abs(after));
}

}  // namespace

ScalingFit fit_scaling(std::span<const CurveSample> samples, const FitOptions& options) {
  Prepared prep = prepare(samples, options.extremes);
  auto& pts = prep.points;
  Line line = weighted_line(pts);
  if (prep.weighted) {
    for (int iter = 0; iter < 100; ++iter) {
      reweight(pts, line.intercept, line.slope);
      const Line next = weighted_line(pts);
      const bool done = settled(line.slope, next.slope) && settled(line.intercept, next.intercept);
      line = next;
      if (done) break;
    }
  }
  const double slope = line.slope;
  const double intercept = line.intercept;
  const double sw = line.sw;
  const double xm = line.xm;
  const double sxx = line.sxx;

  ScalingFit fit;
  fit.alpha = std::exp(slope);
  fit.beta0 = std::exp(intercept);
  fit.points_used = static_cast<int>(pts.size());
  double chi2 = 0.0;
  for (const auto& p : pts) {
    const double r = p.y - (intercept + slope * p.x);
    fit.residual += r * r;
    chi2 += p.weight * r * r;
  }
  // Known-variance weights give the covariance directly; uniform weights are
  // scaled by the residual variance.
  double scale = 1.0;
  if (!prep.weighted) {
    scale = pts.size() > 2 ? chi2 / static_cast<double>(pts.size() - 2)
                           : std::numeric_limits<double>::quiet_NaN();
  }
  fit.log_alpha_se = std::sqrt(scale / sxx);
  fit.log_beta0_se = std::sqrt(scale * (1.0 / sw + xm * xm / sxx));
  fit.log_cov = -scale * xm / sxx;

  if (options.mle_refine) refine_mle(samples, fit);
  fill_derived(fit);
  return fit;
}

ScalingFit fit_scaling(const SarCurve& curve, const FitOptions& options) {
  const auto samples = to_samples(curve);
  return fit_scaling(samples, options);
}

ScalingFit fit_scaling_fixed_alpha(std::span<const CurveSample> samples, double alpha,
                                   const FitOptions& options) {
  check_positive(alpha, "alpha");
  Prepared prep = prepare(samples, options.extremes);
  const double log_alpha = std::log(alpha);
  const auto weighted_intercept = [&](double& sw) {
    double sr = 0.0;
    sw = 0.0;
    for (const auto& p : prep.points) {
      sw += p.weight;
      sr += p.weight * (p.y - log_alpha * p.x);
    }
    return sr / sw;
  };
  double sw = 0.0;
  double intercept = weighted_intercept(sw);
  if (prep.weighted) {
    for (int iter = 0; iter < 100; ++iter) {
      reweight(prep.points, intercept, log_alpha);
      const double next = weighted_intercept(sw);
      const bool done = settled(intercept, next);
      intercept = next;
      if (done) break;
    }
  }
  ScalingFit fit;
  fit.alpha = alpha;
  fit.beta0 = std::exp(intercept);
  fit.points_used = static_cast<int>(prep.points.size());
  double chi2 = 0.0;
  for (const auto& p : prep.points) {
    const double r = p.y - (intercept + log_alpha * p.x);
    fit.residual += r * r;
    chi2 += p.weight * r * r;
  }
  double scale = 1.0;
  if (!prep.weighted) scale = chi2 / static_cast<double>(prep.points.size() - 1);
  fit.log_alpha_se = 0.0;
  fit.log_beta0_se = std::sqrt(scale / sw);
  fit.log_cov = 0.0;
  fill_derived(fit);
  return fit;
}

MapPoint map_point(const ScalingFit& fit) {
  if (!(fit.alpha > 0.0 && fit.beta0 > 0.0)) throw DomainError("fit parameters must be positive");
  const double nstar = fit.nstar_half ? *fit.nstar_half : nstar_half(fit.alpha, fit.beta0);
  if (!(nstar > 0.0)) throw DomainError("map point needs a positive crossover scale");
  return {std::log(fit.alpha), std::log(fit.beta0), std::log(nstar)};
}

}  // namespace sarlab
