#include "sarlab/dnc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sarlab/error.hpp"
#include "sarlab/scaling.hpp"

namespace sarlab {

namespace {

void check_inputs(double n, int k, double alpha, double beta0, double theta) {
  if (!(n > 0.0)) throw ParameterError("n must be positive, got " + std::to_string(n));
  if (k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(k));
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(beta0 > 0.0)) throw ParameterError("beta0 must be positive");
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ParameterError("theta must lie in (0, 1], got " + std::to_string(theta));
  }
}

}  // namespace

double sar_dc(double n, int k, double alpha, double beta0, double theta) {
  check_inputs(n, k, alpha, beta0, theta);
  return theta * std::exp(-beta0 * n * std::pow(alpha, n / k - 1.0));
}

double gain(double n, int k, double alpha, double beta0, double theta) {
  check_inputs(n, k, alpha, beta0, theta);
  return std::log(theta) + beta0 * n * (std::pow(alpha, n - 1.0) - std::pow(alpha, n / k - 1.0));
}

double n_dc_bound(int k, double alpha, double beta0, double theta) {
  if (!(alpha > 1.0)) throw DomainError("n_dc_bound needs alpha > 1");
  if (k < 2) throw DomainError("n_dc_bound needs k >= 2");
  check_inputs(1.0, k, alpha, beta0, theta);
  const double overhead = std::log(1.0 - 2.0 * std::log(theta) / beta0);
  const double split = std::numbers::ln2 / (1.0 - 1.0 / k);
  return 1.0 + (overhead + split) / std::log(alpha);
}

double nstar_extended(int k, double alpha, double beta0) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (!(alpha > 1.0)) throw DomainError("nstar_extended needs alpha > 1");
  if (!(beta0 > 0.0 && beta0 < 1.0)) throw DomainError("nstar_extended needs beta0 in (0, 1)");
  return 1.0 + k * std::log(1.0 / beta0) / std::log(alpha);
}

DividePlan make_plan(double n, int k, double alpha, double beta0, double theta) {
  DividePlan plan;
  plan.n = n;
  plan.k = k;
  plan.theta = theta;
  plan.alpha = alpha;
  plan.beta0 = beta0;
  plan.sar_single = sar_empirical(n, alpha, beta0);
  plan.sar_dc = sar_dc(n, k, alpha, beta0, theta);
  plan.gain = gain(n, k, alpha, beta0, theta);
  if (k >= 2 && alpha > 1.0) plan.n_dc = n_dc_bound(k, alpha, beta0, theta);
  if (alpha > 1.0 && beta0 < 1.0) plan.nstar_extended = nstar_extended(k, alpha, beta0);
  return plan;
}

BestK best_k(double n, double alpha, double beta0, const ThetaModel& theta, int k_max) {
  if (k_max < 1) throw ParameterError("k_max must be >= 1");
  BestK best;
  for (int k = 1; k <= k_max; ++k) {
    const double th = theta ? theta(n, k) : 1.0;
    DividePlan plan = make_plan(n, k, alpha, beta0, th);
    if (k == 1 || plan.gain > best.plan.gain) best = {k, plan};
  }
  return best;
}

std::vector<int> partition_segments(int n, int k) {
  if (n < 1 || k < 1) throw ParameterError("partition needs n >= 1 and k >= 1");
  if (k > n) throw ParameterError("cannot split " + std::to_string(n) + " units into " +
                                  std::to_string(k) + " nonempty segments");
  std::vector<int> lengths(static_cast<std::size_t>(k), n / k);
  for (int i = 0; i < n % k; ++i) ++lengths[i];
  return lengths;
}

}  // namespace sarlab
