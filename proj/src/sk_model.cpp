#include "sarlab/sk_model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "sarlab/error.hpp"
#include "sarlab/parallel.hpp"
#include "sarlab/rng.hpp"
#include "sarlab/scaling.hpp"

namespace sarlab {

namespace {

std::size_t pair_index(int n, int i, int j) {
  // Row-major offset of (i, j), i < j, in the strict upper triangle.
  const auto ii = static_cast<std::size_t>(i);
  const auto nn = static_cast<std::size_t>(n);
  return ii * (2 * nn - ii - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

void check_enumerable(int n) {
  if (n > kMaxEnumerationSpins) {
    throw SizeError("exhaustive enumeration is limited to n <= " +
                    std::to_string(kMaxEnumerationSpins) + ", got " + std::to_string(n));
  }
}

class LogSumExp {
 public:
  void add(double v) {
    if (count_ == 0) {
      max_ = v;
      sum_ = 1.0;
    } else if (v <= max_) {
      sum_ += std::exp(v - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - v) + 1.0;
      max_ = v;
    }
    ++count_;
  }
  double value() const { return max_ + std::log(sum_); }

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

// Neumaier-compensated mean of xs - xs[0], added back to xs[0]. Identical
// inputs give xs[0] exactly.
double shifted_mean(std::span<const double> xs) {
  const double base = xs.front();
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double d = x - base;
    const double t = sum + d;
    comp += std::abs(sum) >= std::abs(d) ? (sum - t) + d : (d - t) + sum;
    sum = t;
  }
  return base + (sum + comp) / static_cast<double>(xs.size());
}

}  // namespace

double SkParams::m() const { return std::tanh(h); }
double SkParams::z() const { return 2.0 * std::cosh(h); }

void SkParams::validate() const {
  if (n < 1) throw ParameterError("n must be >= 1, got " + std::to_string(n));
  if (!(j0 >= 0.0) || !std::isfinite(j0)) {
    throw ParameterError("j0 must be a finite nonnegative number, got " + std::to_string(j0));
  }
  if (!std::isfinite(h)) throw ParameterError("h must be finite");
}

void SkEnsembleSpec::validate() const {
  params.validate();
  if (realizations < 1) {
    throw ParameterError("realizations must be >= 1, got " + std::to_string(realizations));
  }
}

double CouplingRealization::at(int i, int j) const {
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return upper[pair_index(n, i, j)];
}

bool CouplingRealization::all_zero() const {
  for (double v : upper) {
    if (v != 0.0) return false;
  }
  return true;
}

CouplingRealization zero_couplings(int n) {
  if (n < 1) throw ParameterError("n must be >= 1");
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  return {n, std::vector<double>(count, 0.0), 0};
}

std::uint64_t realization_seed(std::uint64_t master_seed, int realization) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(realization));
}

double energy(std::span<const int> spins, const CouplingRealization& couplings, double h) {
  if (spins.size() != static_cast<std::size_t>(couplings.n)) {
    throw ValidationError("spin vector has " + std::to_string(spins.size()) +
                          " entries, couplings have n = " + std::to_string(couplings.n));
  }
  double pair_sum = 0.0;
  double field_sum = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < couplings.n; ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw ValidationError("spin " + std::to_string(i) + " must be +1 or -1");
    }
    field_sum += spins[i];
    for (int j = i + 1; j < couplings.n; ++j) {
      pair_sum += couplings.upper[idx++] * spins[i] * spins[j];
    }
  }
  return -pair_sum - h * field_sum;
}

CouplingRealization sample_couplings(const SkParams& params, std::uint64_t seed) {
  params.validate();
  CouplingRealization out = zero_couplings(params.n);
  out.seed = seed;
  NormalSampler normal(seed);
  for (double& j : out.upper) j = params.j0 * normal();
  return out;
}

double log_token_accuracy(double h) { return -std::log1p(std::exp(-2.0 * h)); }

double sar_independent(int n, double h) {
  if (n < 1) throw ParameterError("n must be >= 1, got " + std::to_string(n));
  return std::exp(n * log_token_accuracy(h));
}

double log_sar_exact_realization(const CouplingRealization& couplings, double h) {
  const int n = couplings.n;
  if (n < 1) throw ParameterError("realization has no spins");
  check_enumerable(n);
  if (couplings.all_zero()) return n * log_token_accuracy(h);

  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  double neg_energy = h * n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = couplings.upper[pair_index(n, i, j)];
      dense[i * n + j] = v;
      dense[j * n + i] = v;
      neg_energy += v;
    }
  }
  const double neg_energy_all_up = neg_energy;
  std::vector<int> spin(n, 1);
  std::vector<double> local(n, 0.0);  // sum_j J_ij s_j
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) local[i] += dense[i * n + j];
  }
  LogSumExp lse;
  lse.add(neg_energy);
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < states; ++step) {
    const int k = std::countr_zero(step);
    neg_energy -= 2.0 * spin[k] * (local[k] + h);
    spin[k] = -spin[k];
    const double delta = 2.0 * spin[k];
    const double* row = &dense[static_cast<std::size_t>(k) * n];
    for (int j = 0; j < n; ++j) local[j] += row[j] * delta;
    lse.add(neg_energy);
  }
  return neg_energy_all_up - lse.value();
}

double sar_exact_realization(const CouplingRealization& couplings, double h) {
  return std::exp(log_sar_exact_realization(couplings, h));
}

std::vector<double> state_probabilities(const CouplingRealization& couplings, double h) {
  const int n = couplings.n;
  check_enumerable(n);
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> neg_energy(states);
  std::vector<int> spins(n);
  double max_value = -INFINITY;
  for (std::uint64_t idx = 0; idx < states; ++idx) {
    for (int i = 0; i < n; ++i) spins[i] = ((idx >> i) & 1U) ? -1 : 1;
    neg_energy[idx] = -energy(spins, couplings, h);
    max_value = std::max(max_value, neg_energy[idx]);
  }
  double total = 0.0;
  for (double& v : neg_energy) {
    v = std::exp(v - max_value);
    total += v;
  }
  for (double& v : neg_energy) v /= total;
  return neg_energy;
}

DisorderAverage sar_disorder_avg(const SkEnsembleSpec& spec, unsigned threads) {
  spec.validate();
  check_enumerable(spec.params.n);
  const auto count = static_cast<std::size_t>(spec.realizations);
  std::vector<double> logs(count);
  parallel_for(count, threads, [&](std::size_t r) {
    const auto couplings =
        sample_couplings(spec.params, realization_seed(spec.master_seed, static_cast<int>(r)));
    logs[r] = log_sar_exact_realization(couplings, spec.params.h);
  });
  std::vector<double> probs(count);
  for (std::size_t r = 0; r < count; ++r) probs[r] = std::exp(logs[r]);

  DisorderAverage out;
  out.realizations = spec.realizations;
  out.mean_log = shifted_mean(logs);
  out.sar_geo = std::exp(out.mean_log);
  out.sar_arith = shifted_mean(probs);
  if (count > 1) {
    double ss = 0.0;
    for (double v : logs) ss += (v - out.mean_log) * (v - out.mean_log);
    out.std_err_of_log = std::sqrt(ss / static_cast<double>(count - 1)) /
                         std::sqrt(static_cast<double>(count));
  }
  return out;
}

namespace series {

double quadratic_term(double n, double j0, double m) {
  const double m2 = m * m;
  return kQuadraticPrefactor * j0 * j0 * n * (n - 1.0) * (-1.0 + m2 * m2);
}

double quartic_bracket(double n, double m) {
  const double m2 = m * m;
  const double m4 = m2 * m2;
  return kBracketConstant + kBracketM4 * (n - 4.0) * m4 + kBracketM6 * (n - 2.0) * m4 * m2 +
         kBracketM8 * (2.0 * n - 3.0) * m4 * m4;
}

double quartic_term(double n, double j0, double m) {
  const double j2 = j0 * j0;
  return kQuarticPrefactor * j2 * j2 * n * (n - 1.0) * quartic_bracket(n, m);
}

}  // namespace series

double log_sar_perturbative(const SkParams& params, int order) {
  params.validate();
  if (order != 2 && order != 4) {
    throw ParameterError("perturbative order must be 2 or 4, got " + std::to_string(order));
  }
  const double n = params.n;
  const double m = params.m();
  double value = params.n * log_token_accuracy(params.h);
  value += series::quadratic_term(n, params.j0, m);
  if (order == 4) value += series::quartic_term(n, params.j0, m);
  return value;
}

double sar_perturbative(const SkParams& params, int order) {
  return std::exp(log_sar_perturbative(params, order));
}

EmpiricalParams params_to_empirical(double j0, double h) {
  if (!(j0 >= 0.0)) throw ParameterError("j0 must be nonnegative");
  return {std::exp(2.0 * j0 * j0 / (1.0 + 2.0 * j0)), std::exp(-2.0 * h)};
}

FieldParams empirical_to_params(double alpha, double beta0) {
  if (!(alpha >= 1.0)) {
    throw DomainError("empirical_to_params needs alpha >= 1, got " + std::to_string(alpha));
  }
  if (!(beta0 > 0.0 && beta0 <= 1.0)) {
    throw DomainError("empirical_to_params needs beta0 in (0, 1], got " + std::to_string(beta0));
  }
  const double l = std::log(alpha);
  return {(l + std::sqrt(l * l + 2.0 * l)) / 2.0, -std::log(beta0) / 2.0};
}

double sar_crossover_approx(const SkParams& params) {
  params.validate();
  const EmpiricalParams e = params_to_empirical(params.j0, params.h);
  return sar_empirical(params.n, e.alpha, e.beta0);
}

std::vector<SynthOutcome> synth_trials(const SkEnsembleSpec& spec, int trials_per_realization,
                                       unsigned threads) {
  spec.validate();
  check_enumerable(spec.params.n);
  if (trials_per_realization < 1) throw ParameterError("trials_per_realization must be >= 1");
  const auto count = static_cast<std::size_t>(spec.realizations);
  const auto per = static_cast<std::size_t>(trials_per_realization);
  std::vector<SynthOutcome> out(count * per);
  parallel_for(count, threads, [&](std::size_t r) {
    const std::uint64_t seed = realization_seed(spec.master_seed, static_cast<int>(r));
    const double p = sar_exact_realization(sample_couplings(spec.params, seed), spec.params.h);
    for (std::size_t t = 0; t < per; ++t) {
      Xoshiro256 rng(derive_seed(seed, t));
      out[r * per + t] = {spec.params.n, static_cast<int>(r), static_cast<int>(t),
                          rng.bernoulli(p)};
    }
  });
  return out;
}

}  // namespace sarlab
