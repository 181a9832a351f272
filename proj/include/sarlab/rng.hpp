#pragma once

// Portable seeded randomness.
//
// Every random draw in the library goes through the generators below so that
// instances, ensembles and Monte Carlo runs can be reproduced bit-for-bit in
// any language:
//
//   * SplitMix64 (Steele, Lea, Flood 2014) expands a 64-bit seed.
//   * xoshiro256** (Blackman, Vigna 2018) is the working generator; its
//     256-bit state is four consecutive SplitMix64 outputs of the seed.
//   * derive_seed(seed, index) = splitmix64_mix(seed + (index + 1) * 0x9E3779B97F4A7C15)
//     gives independent child seeds for trial / realization / instance
//     streams, so results never depend on execution order.
//   * uniform_below(bound) rejects raw outputs below (2^64 mod bound) and
//     returns raw % bound (unbiased).
//   * uniform01() = (raw >> 11) * 2^-53, in [0, 1).
//   * Normal deviates use the Marsaglia polar method; both members of each
//     accepted pair are used, the second one cached.

#include <cmath>
#include <cstdint>
#include <optional>

namespace sarlab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64_mix(seed + (index + 1) * kGoldenGamma);
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound). bound must be nonzero.
  constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  constexpr double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  constexpr bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

// Standard normal deviates by the Marsaglia polar method.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (cached_) {
      const double v = *cached_;
      cached_.reset();
      return v;
    }
    for (;;) {
      const double u = 2.0 * rng_.uniform01() - 1.0;
      const double v = 2.0 * rng_.uniform01() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * factor;
        return u * factor;
      }
    }
  }

 private:
  Xoshiro256 rng_;
  std::optional<double> cached_;
};

}  // namespace sarlab
