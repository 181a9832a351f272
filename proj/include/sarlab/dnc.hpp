#pragma once

// Divide-and-conquer planning under the empirical law: a length-n task split
// into k segments of length n/k succeeds with
//   SAR_DC(n, k) = theta * SAR(n/k)^k = theta * exp(-beta0 n alpha^(n/k - 1)),
// where theta in (0, 1] is a multiplicative overhead supplied by the caller.

#include <functional>
#include <optional>
#include <vector>

namespace sarlab {

struct DividePlan {
  double n = 0.0;
  int k = 1;
  double theta = 1.0;
  double alpha = 1.0;
  double beta0 = 0.0;
  double sar_single = 0.0;
  double sar_dc = 0.0;
  double gain = 0.0;
  std::optional<double> n_dc;            // needs k >= 2 and alpha > 1
  std::optional<double> nstar_extended;  // needs alpha > 1, beta0 in (0, 1)
};

// n/k need not be integral.
double sar_dc(double n, int k, double alpha, double beta0, double theta);

// log theta + beta0 n (alpha^(n-1) - alpha^(n/k-1)).
double gain(double n, int k, double alpha, double beta0, double theta);

// Sufficient length for a positive gain:
//   1 + (log(1 - 2 log(theta) / beta0) + log 2 / (1 - 1/k)) / log alpha.
// DomainError for alpha <= 1 or k < 2.
double n_dc_bound(int k, double alpha, double beta0, double theta);

// 1 + k log(1/beta0) / log alpha.
double nstar_extended(int k, double alpha, double beta0);

DividePlan make_plan(double n, int k, double alpha, double beta0, double theta);

using ThetaModel = std::function<double(double n, int k)>;

struct BestK {
  int k = 1;
  DividePlan plan;
};

// argmax of gain over k in [1, k_max]; ties go to the smaller k.
BestK best_k(double n, double alpha, double beta0, const ThetaModel& theta, int k_max);

// Lengths of k contiguous segments covering n units, longer ones first:
// (n mod k) segments of ceil(n/k), the rest floor(n/k).
std::vector<int> partition_segments(int n, int k);

}  // namespace sarlab
