#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>

#include "sarlab/error.hpp"
#include "sarlab/rng.hpp"
#include "sarlab/scaling.hpp"

namespace sarlab {
namespace {

using Big = boost::multiprecision::cpp_dec_float_50;

std::vector<CurveSample> noise_free(double alpha, double beta0, int n_lo, int n_hi,
                                    double trials = 0.0) {
  std::vector<CurveSample> out;
  for (int n = n_lo; n <= n_hi; ++n) out.push_back({double(n), sar_empirical(n, alpha, beta0), trials});
  return out;
}

TEST(SarEmpirical, Examples) {
  EXPECT_NEAR(sar_empirical(10, 1.0, 0.1), std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(sar_empirical(1, 1.7, 0.2), std::exp(-0.2));
  const Big reference = exp(-Big("0.001") * 30 * pow(Big("1.2"), 29));
  EXPECT_NEAR(sar_empirical(30, 1.2, 0.001), reference.convert_to<double>(), 1e-15);
  EXPECT_NEAR(sar_empirical(30, 1.2, 0.001), 0.00265, 1e-5);
  EXPECT_THROW(sar_empirical(0, 1.2, 0.1), ParameterError);
  EXPECT_THROW(sar_empirical(3, 0.0, 0.1), ParameterError);
  EXPECT_THROW(sar_empirical(3, 1.2, -0.1), ParameterError);
}

TEST(SarEmpirical, MonotoneInEveryArgument) {
  for (double n = 1; n < 40; n += 0.5) {
    EXPECT_GT(sar_empirical(n, 1.1, 0.01), sar_empirical(n + 0.5, 1.1, 0.01));
    if (n == 1) continue;  // alpha^0 = 1
    EXPECT_GT(sar_empirical(n, 1.1, 0.01), sar_empirical(n, 1.11, 0.01));
    EXPECT_GT(sar_empirical(n, 1.1, 0.01), sar_empirical(n, 1.1, 0.011));
  }
}

TEST(NstarClosed, Examples) {
  EXPECT_NEAR(nstar_closed(std::exp(1.0), std::exp(-5.0)), 6.0, 1e-12);
  EXPECT_EQ(nstar_closed(1.3, 1.0), 1.0);
  const Big reference = 1 + log(1 / Big("0.001")) / log(Big("1.2"));
  EXPECT_NEAR(nstar_closed(1.2, 0.001), reference.convert_to<double>(), 1e-12);
  EXPECT_NEAR(nstar_closed(1.2, 0.001), 38.89, 5e-3);
  EXPECT_THROW(nstar_closed(1.0, 0.1), DomainError);
  EXPECT_THROW(nstar_closed(0.9, 0.1), DomainError);
}

TEST(NstarHalf, Examples) {
  EXPECT_NEAR(nstar_half(1.0, 0.0693147), std::log(2.0) / 0.0693147, 1e-8);
  EXPECT_NEAR(nstar_half(1.0, 0.0693147), 10.0, 1e-5);
  const double n = nstar_half(1.2, 0.001);
  EXPECT_NEAR(sar_empirical(n, 1.2, 0.001), 0.5, 1e-8);
  // Brute-force scan in steps of 1e-4.
  double scan = 1.0;
  while (sar_empirical(scan, 1.2, 0.001) > 0.5) scan += 1e-4;
  EXPECT_NEAR(n, scan, 1e-4);
  EXPECT_NEAR(n, 20.4, 0.05);
  EXPECT_NEAR(nstar_half(1.0, 1.0), std::log(2.0), 1e-9);
}

TEST(NstarHalf, PrecedesClosedFormByExactGap) {
  // At the half point beta0 n alpha^(n-1) = log 2, at the closed-form point
  // beta0 alpha^(n-1) = 1, hence closed - half = log(half / log 2) / log alpha.
  for (double alpha : {1.05, 1.1, 1.3, 1.6, 2.0}) {
    for (double beta0 : {1e-6, 1e-4, 1e-2, 0.1}) {
      const double half = nstar_half(alpha, beta0);
      const double closed = nstar_closed(alpha, beta0);
      EXPECT_LT(half, closed) << alpha << " " << beta0;
      EXPECT_NEAR(closed - half, std::log(half / std::log(2.0)) / std::log(alpha), 1e-7)
          << alpha << " " << beta0;
    }
  }
}

TEST(FitScaling, NoiseFreeRoundTrip) {
  for (double alpha : {1.0, 1.05, 1.1, 1.3}) {
    for (double beta0 : {1e-4, 1e-3, 1e-2}) {
      const auto samples = noise_free(alpha, beta0, 2, 40);
      const ScalingFit fit = fit_scaling(samples);
      EXPECT_NEAR(fit.alpha / alpha, 1.0, 1e-9);
      EXPECT_NEAR(fit.beta0 / beta0, 1.0, 1e-9);
      EXPECT_LT(fit.residual, 1e-18);
      if (alpha == 1.0) {
        EXPECT_NEAR(std::log(fit.alpha), 0.0, 1e-9);
      } else {
        ASSERT_TRUE(fit.nstar_closed.has_value());
        EXPECT_GT(*fit.nstar_closed, 1.0);
      }
    }
  }
}

TEST(FitScaling, ExtremesExcludedOrClipped) {
  std::vector<CurveSample> samples = noise_free(1.1, 0.01, 2, 12, 100);
  samples.insert(samples.begin(), {1.0, 1.0, 100});
  samples.push_back({80.0, 0.0, 100});
  const ScalingFit dropped = fit_scaling(samples);
  EXPECT_EQ(dropped.points_used, 11);
  EXPECT_NEAR(dropped.alpha, 1.1, 1e-9);

  FitOptions clip;
  clip.extremes = ExtremePolicy::clip;
  EXPECT_EQ(fit_scaling(samples, clip).points_used, 13);

  std::vector<CurveSample> unknown = samples;
  for (auto& s : unknown) s.trials = 0;
  EXPECT_THROW(fit_scaling(unknown, clip), FitError);
}

TEST(FitScaling, ErrorsWithoutUsablePoints) {
  const std::vector<CurveSample> ones{{2, 1.0, 10}, {3, 1.0, 10}, {4, 1.0, 10}};
  EXPECT_THROW(fit_scaling(ones), FitError);
  const std::vector<CurveSample> single{{2, 0.5, 10}, {3, 1.0, 10}};
  EXPECT_THROW(fit_scaling(single), FitError);
  EXPECT_THROW(fit_scaling(std::span<const CurveSample>{}), FitError);
}

TEST(FitScaling, BinomialNoiseCoverage) {
  // Known-variance 95% interval for log alpha covers the truth at ~95%.
  const double alpha = 1.1;
  const double beta0 = 0.01;
  const int trials = 200;
  int covered = 0;
  int runs = 0;
  for (int sim = 0; sim < 200; ++sim) {
    Xoshiro256 rng(derive_seed(2024, sim));
    std::vector<CurveSample> samples;
    for (int n = 2; n <= 30; ++n) {
      const double p = sar_empirical(n, alpha, beta0);
      int hits = 0;
      for (int t = 0; t < trials; ++t) hits += rng.bernoulli(p) ? 1 : 0;
      samples.push_back({double(n), double(hits) / trials, double(trials)});
    }
    const ScalingFit fit = fit_scaling(samples);
    const auto [lo, hi] = fit.log_alpha_ci95();
    covered += (lo <= std::log(alpha) && std::log(alpha) <= hi) ? 1 : 0;
    ++runs;
  }
  EXPECT_GE(covered, 180) << covered << "/" << runs;
}

TEST(FitScaling, MaximumLikelihoodRefinementStaysClose) {
  Xoshiro256 rng(77);
  std::vector<CurveSample> samples;
  for (int n = 2; n <= 30; ++n) {
    const double p = sar_empirical(n, 1.1, 0.01);
    int hits = 0;
    for (int t = 0; t < 400; ++t) hits += rng.bernoulli(p) ? 1 : 0;
    samples.push_back({double(n), hits / 400.0, 400.0});
  }
  FitOptions mle;
  mle.mle_refine = true;
  const ScalingFit wls = fit_scaling(samples);
  const ScalingFit refined = fit_scaling(samples, mle);
  EXPECT_NEAR(std::log(refined.alpha), std::log(1.1), 4 * refined.log_alpha_se);
  EXPECT_NEAR(std::log(refined.alpha), std::log(wls.alpha), 3 * wls.log_alpha_se);

  // Noise-free input is a fixed point of the refinement.
  const ScalingFit exact = fit_scaling(noise_free(1.2, 1e-3, 2, 25, 100), mle);
  EXPECT_NEAR(exact.alpha, 1.2, 1e-8);
  EXPECT_NEAR(exact.beta0 / 1e-3, 1.0, 1e-7);
}

TEST(FitScaling, FixedAlpha) {
  const auto samples = noise_free(1.0, 0.02, 2, 20);
  const ScalingFit fit = fit_scaling_fixed_alpha(samples, 1.0);
  EXPECT_EQ(fit.alpha, 1.0);
  EXPECT_NEAR(fit.beta0, 0.02, 1e-12);
}

TEST(FitScaling, CurveOverloadUsesTrialCounts) {
  SarCurve curve;
  for (int n = 2; n <= 10; ++n) {
    const auto hits = static_cast<std::int64_t>(std::llround(1000 * sar_empirical(n, 1.2, 0.02)));
    curve.points.push_back(make_point(n, hits, 1000));
  }
  const auto samples = to_samples(curve);
  ASSERT_EQ(samples.size(), 9U);
  EXPECT_EQ(samples[0].trials, 1000.0);
  EXPECT_NEAR(fit_scaling(curve).alpha, 1.2, 0.02);
}

TEST(MapPoint, Examples) {
  ScalingFit unit;
  unit.alpha = 1.0;
  unit.beta0 = 1.0;
  unit.nstar_half = nstar_half(1.0, 1.0);
  MapPoint p = map_point(unit);
  EXPECT_EQ(p.log_alpha, 0.0);
  EXPECT_EQ(p.log_beta0, 0.0);
  EXPECT_NEAR(p.log_nstar, std::log(std::log(2.0)), 1e-9);

  const ScalingFit fit = fit_scaling(noise_free(1.2, 0.001, 2, 30));
  p = map_point(fit);
  EXPECT_NEAR(p.log_alpha, std::log(1.2), 1e-8);
  EXPECT_NEAR(p.log_beta0, std::log(0.001), 1e-8);
  EXPECT_NEAR(p.log_nstar, std::log(nstar_half(1.2, 0.001)), 1e-8);
  EXPECT_NEAR(std::exp(p.log_nstar), 20.4, 0.05);
}

}  // namespace
}  // namespace sarlab
