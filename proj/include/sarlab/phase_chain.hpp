#pragma once

// Noisy-agent model of the Pauli multiplication task.
//
// The accumulated global phase is a Markov chain on {1, i, -1, -i} (state
// order as listed). A phase update returns the intended multiplier with
// probability 1 - p_phi and each of the three other group elements with
// probability p_phi / 3. Independently, every sitewise Pauli product is wrong
// with probability p_sigma.
//
// Both p_sigma and p_phi are ERROR probabilities.

#include <array>
#include <cstdint>

#include "sarlab/pauli.hpp"

namespace sarlab {

template <class T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

template <class T>
Matrix4<T> identity4() {
  Matrix4<T> m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i][j] = T(i == j ? 1 : 0);
  }
  return m;
}

template <class T>
Matrix4<T> operator*(const Matrix4<T>& a, const Matrix4<T>& b) {
  Matrix4<T> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      T acc(0);
      for (int l = 0; l < 4; ++l) acc += a[i][l] * b[l][j];
      out[i][j] = acc;
    }
  }
  return out;
}

template <class T>
Matrix4<T> matrix_power(Matrix4<T> base, std::uint64_t exponent) {
  Matrix4<T> result = identity4<T>();
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    base = base * base;
    exponent >>= 1U;
  }
  return result;
}

// K = (1 - p) 1 + (p / 3)(J - 1): the one-step kernel when the intended
// multiplier is 1.
template <class T>
Matrix4<T> phase_kernel(const T& p_phi) {
  Matrix4<T> k{};
  const T off = p_phi / T(3);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) k[i][j] = (i == j) ? T(1) - p_phi : off;
  }
  return k;
}

// Permutation implementing left multiplication by phi on the state order:
// column j has its single 1 in row (j + exponent(phi)) mod 4.
template <class T>
Matrix4<T> shift_matrix(Phase phi) {
  Matrix4<T> s{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) s[i][j] = T(0);
  }
  for (int j = 0; j < 4; ++j) s[(j + phi.exponent()) % 4][j] = T(1);
  return s;
}

// e_total^T S_total K^n e_1, the probability that the chain lands on the true
// accumulated phase. Evaluated by explicit matrix powers; works for any
// field-like T (double, exact rationals).
template <class T>
T phase_chain_kernel_success(const T& p_phi, std::uint64_t n, Phase total) {
  const Matrix4<T> walk = shift_matrix<T>(total) * matrix_power(phase_kernel(p_phi), n);
  return walk[total.exponent()][0];
}

struct PhaseChain {
  Matrix4<double> kernel;
  std::array<Matrix4<double>, 4> shifts;  // indexed by Phase::exponent()

  // Throws ParameterError unless p_phi is in [0, 1].
  static PhaseChain make(double p_phi);

  // T(phi) = S_phi K.
  Matrix4<double> transition(Phase phi) const { return shifts[phi.exponent()] * kernel; }
};

struct PauliNoiseParams {
  double p_sigma = 0.0;  // sitewise Pauli product error rate
  double p_phi = 0.0;    // phase update error rate

  void validate() const;
};

// Closed form 1/4 + 3/4 ((3 - 4 p_phi) / 3)^n.
double phase_chain_success(double p_phi, int n);

// Monte Carlo estimate of phase_chain_success. Trial t uses its own
// generator seeded with derive_seed(seed, t).
double phase_chain_simulate(double p_phi, int n, std::uint64_t trials, std::uint64_t seed);

// (1 - p_sigma)^n * phase_chain_success(p_phi, n).
double pauli_sar_theory(const PauliNoiseParams& params, int n);

// Monte Carlo agent exercising both error channels on random operand pairs.
double pauli_agent_simulate(const PauliNoiseParams& params, int n, std::uint64_t trials,
                            std::uint64_t seed);

}  // namespace sarlab
