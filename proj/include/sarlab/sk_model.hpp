#pragma once

// Sherrington-Kirkpatrick model of token correctness.
//
// Spins s_i = +1 (token i correct) or -1, energy
//   E_J[s] = -sum_{i<j} J_ij s_i s_j - h sum_i s_i,
// couplings J_ij ~ N(0, j0^2) i.i.d., p_J[s] = exp(-E_J[s]) / Z_J. The
// sequence accuracy rate of one realization is p_J[all +1]; the ensemble SAR
// is the geometric mean exp(E_J log p_J[all +1]).

#include <cstdint>
#include <span>
#include <vector>

namespace sarlab {

struct SkParams {
  int n = 1;
  double j0 = 0.0;
  double h = 0.0;

  double m() const;  // tanh h
  double z() const;  // 2 cosh h
  void validate() const;
};

// Couplings J_ij for i < j stored row-major: (0,1), (0,2), ..., (1,2), ...
struct CouplingRealization {
  int n = 0;
  std::vector<double> upper;
  std::uint64_t seed = 0;

  double at(int i, int j) const;  // symmetric, zero on the diagonal
  bool all_zero() const;
};

CouplingRealization zero_couplings(int n);

struct SkEnsembleSpec {
  SkParams params;
  int realizations = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

inline constexpr int kMaxEnumerationSpins = 20;

// Seed of realization r: derive_seed(master_seed, r).
std::uint64_t realization_seed(std::uint64_t master_seed, int realization);

double energy(std::span<const int> spins, const CouplingRealization& couplings, double h);

// n(n-1)/2 normal draws (polar method, see rng.hpp) scaled by j0, in
// row-major (i < j) order.
CouplingRealization sample_couplings(const SkParams& params, std::uint64_t seed);

// log p_J[all +1] by Gray-code enumeration of all 2^n states with a streaming
// log-sum-exp. When every coupling is zero the distribution factorizes and
// the product form n * log p_tok is returned. SizeError for n > 20.
double log_sar_exact_realization(const CouplingRealization& couplings, double h);
double sar_exact_realization(const CouplingRealization& couplings, double h);

// p_J[s] for every state, evaluated state by state from energy(). Bit i of
// the index set means s_i = -1. SizeError for n > 20.
std::vector<double> state_probabilities(const CouplingRealization& couplings, double h);

struct DisorderAverage {
  double sar_geo = 0.0;          // exp(mean log p_J[1])
  double sar_arith = 0.0;        // mean p_J[1]
  double mean_log = 0.0;
  double std_err_of_log = 0.0;   // sample std / sqrt(R); 0 for R = 1
  int realizations = 0;
};

// Averages over realizations r = 0..R-1 seeded with realization_seed. The
// reduction is in index order, so the result does not depend on threads.
DisorderAverage sar_disorder_avg(const SkEnsembleSpec& spec, unsigned threads = 1);

// log of the single-token accuracy 1 / (1 + e^{-2h}).
double log_token_accuracy(double h);
// (1 / (1 + e^{-2h}))^n.
double sar_independent(int n, double h);

namespace series {

// Small-j0 expansion of the disorder-averaged log SAR, m = tanh h:
//
//   log SAR = n (h - log(2 cosh h))
//           + j0^2 / 4 * n(n-1) (-1 + m^4)
//           - j0^4 / 4 * n(n-1) [ -1/2 - (n-4) m^4 + 4(n-2) m^6 - 3/2 (2n-3) m^8 ]
//           + O(j0^6).
//
// The j0^4 prefactor -1/4 comes from the fourth Gaussian cumulant of the
// coupling energy; it reproduces the large-h limit
//   log SAR ~ -e^{-2h} n [1 + 2 j0^2 (n-1) + 2 j0^4 (n-1)^2].
inline constexpr double kQuadraticPrefactor = 0.25;
inline constexpr double kQuarticPrefactor = -0.25;

inline constexpr double kBracketConstant = -0.5;  // -1/2
inline constexpr double kBracketM4 = -1.0;        // -(n-4) m^4
inline constexpr double kBracketM6 = 4.0;         // +4(n-2) m^6
inline constexpr double kBracketM8 = -1.5;        // -3/2 (2n-3) m^8

double quadratic_term(double n, double j0, double m);
double quartic_bracket(double n, double m);
double quartic_term(double n, double j0, double m);

}  // namespace series

// exp of the series truncated at j0^2 (order 2) or j0^4 (order 4). The field
// term is n * log_token_accuracy(h), the same expression sar_independent
// uses. ParameterError for other orders.
double log_sar_perturbative(const SkParams& params, int order);
double sar_perturbative(const SkParams& params, int order);

struct EmpiricalParams {
  double alpha = 1.0;
  double beta0 = 1.0;
};

struct FieldParams {
  double j0 = 0.0;
  double h = 0.0;
};

// alpha = exp(2 j0^2 / (1 + 2 j0)), beta0 = exp(-2h).
EmpiricalParams params_to_empirical(double j0, double h);
// Inverse map: h = -log(beta0) / 2, j0 the nonnegative root of
// 2 j0^2 - 2 j0 log(alpha) - log(alpha) = 0. DomainError for alpha < 1.
FieldParams empirical_to_params(double alpha, double beta0);

// exp(-n exp[2 j0^2 (n-1) / (1 + 2 j0) - 2h]), evaluated as
// sar_empirical(n, params_to_empirical(j0, h)).
double sar_crossover_approx(const SkParams& params);

struct SynthOutcome {
  int n = 0;
  int realization = 0;
  int trial = 0;
  bool success = false;
};

// Synthetic agent: for each realization, trials_per_realization Bernoulli
// draws with success probability p_J[all +1]. Trial t of realization r draws
// from derive_seed(realization_seed(master, r), t). The success frequency
// estimates the ARITHMETIC disorder mean.
std::vector<SynthOutcome> synth_trials(const SkEnsembleSpec& spec, int trials_per_realization,
                                       unsigned threads = 1);

}  // namespace sarlab
