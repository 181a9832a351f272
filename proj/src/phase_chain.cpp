#include "sarlab/phase_chain.hpp"

#include <cmath>
#include <string>

#include "sarlab/error.hpp"
#include "sarlab/rng.hpp"

namespace sarlab {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

void check_length(int n) {
  if (n < 1) throw ParameterError("n must be >= 1, got " + std::to_string(n));
}

// One noisy phase update: the intended multiplier, or one of the three
// others chosen uniformly.
int noisy_multiplier(Xoshiro256& rng, int intended, double p_phi) {
  if (rng.bernoulli(p_phi)) {
    return (intended + 1 + static_cast<int>(rng.uniform_below(3))) % 4;
  }
  return intended;
}

}  // namespace

PhaseChain PhaseChain::make(double p_phi) {
  check_probability(p_phi, "p_phi");
  PhaseChain chain{phase_kernel(p_phi), {}};
  for (int k = 0; k < 4; ++k) chain.shifts[k] = shift_matrix<double>(Phase::from_exponent(k));
  return chain;
}

void PauliNoiseParams::validate() const {
  check_probability(p_sigma, "p_sigma");
  check_probability(p_phi, "p_phi");
}

double phase_chain_success(double p_phi, int n) {
  check_probability(p_phi, "p_phi");
  check_length(n);
  return 0.25 + 0.75 * std::pow((3.0 - 4.0 * p_phi) / 3.0, n);
}

double phase_chain_simulate(double p_phi, int n, std::uint64_t trials, std::uint64_t seed) {
  check_probability(p_phi, "p_phi");
  check_length(n);
  if (trials == 0) throw ParameterError("trials must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Xoshiro256 rng(derive_seed(seed, t));
    int truth = 0;
    int agent = 0;
    for (int step = 0; step < n; ++step) {
      const int multiplier = static_cast<int>(rng.uniform_below(4));
      truth = (truth + multiplier) % 4;
      agent = (agent + noisy_multiplier(rng, multiplier, p_phi)) % 4;
    }
    hits += (truth == agent) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double pauli_sar_theory(const PauliNoiseParams& params, int n) {
  params.validate();
  check_length(n);
  return std::pow(1.0 - params.p_sigma, n) * phase_chain_success(params.p_phi, n);
}

double pauli_agent_simulate(const PauliNoiseParams& params, int n, std::uint64_t trials,
                            std::uint64_t seed) {
  params.validate();
  check_length(n);
  if (trials == 0) throw ParameterError("trials must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Xoshiro256 rng(derive_seed(seed, t));
    bool letters_ok = true;
    Phase truth = Phase::one();
    Phase agent = Phase::one();
    for (int site = 0; site < n; ++site) {
      const auto p = static_cast<Pauli>(rng.uniform_below(4));
      const auto q = static_cast<Pauli>(rng.uniform_below(4));
      const SiteProduct local = mul_single(p, q);
      if (rng.bernoulli(params.p_sigma)) letters_ok = false;
      truth *= local.phase;
      agent *= Phase::from_exponent(noisy_multiplier(rng, local.phase.exponent(), params.p_phi));
    }
    hits += (letters_ok && truth == agent) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace sarlab
