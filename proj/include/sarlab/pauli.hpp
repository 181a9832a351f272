#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sarlab {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p) noexcept;
// Throws ValidationError for anything but I, X, Y, Z.
Pauli pauli_from_char(char c);

// Element of the cyclic group {+1, +i, -1, -i}, stored as the exponent k of i^k.
class Phase {
 public:
  constexpr Phase() noexcept = default;

  static constexpr Phase from_exponent(int k) noexcept {
    Phase p;
    p.k_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4);
    return p;
  }
  static constexpr Phase one() noexcept { return from_exponent(0); }
  static constexpr Phase i() noexcept { return from_exponent(1); }
  static constexpr Phase minus_one() noexcept { return from_exponent(2); }
  static constexpr Phase minus_i() noexcept { return from_exponent(3); }

  constexpr int exponent() const noexcept { return k_; }

  constexpr Phase operator*(Phase other) const noexcept {
    return from_exponent(k_ + other.k_);
  }
  constexpr Phase& operator*=(Phase other) noexcept { return *this = *this * other; }
  constexpr bool operator==(const Phase&) const noexcept = default;

  std::complex<double> value() const noexcept;

  // "+1", "+i", "-1", "-i".
  std::string_view token() const noexcept;
  // Accepts the four canonical tokens. Throws ValidationError otherwise.
  static Phase parse(std::string_view token);

 private:
  std::uint8_t k_ = 0;
};

struct SiteProduct {
  Phase phase;
  Pauli op;
  bool operator==(const SiteProduct&) const = default;
};

// P x Q = phi R for single-site Pauli operators.
SiteProduct mul_single(Pauli p, Pauli q) noexcept;

class PauliString {
 public:
  PauliString(Phase phase, std::vector<Pauli> ops);

  // Parses the canonical rendering, e.g. "+i XZY".
  static PauliString parse(std::string_view text);
  static PauliString identity(std::size_t n);

  Phase phase() const noexcept { return phase_; }
  const std::vector<Pauli>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

  // Operator letters only, e.g. "XZY".
  std::string letters() const;
  // Phase token, one space, letters: "+i XZY".
  std::string str() const;

  bool operator==(const PauliString&) const = default;

 private:
  Phase phase_;
  std::vector<Pauli> ops_;
};

// Sitewise products with the local phases folded into the global phase.
// Throws ValidationError on length mismatch.
PauliString mul_strings(const PauliString& lhs, const PauliString& rhs);

inline constexpr std::size_t kMatrixOracleMaxSites = 6;

// Dense 2^N x 2^N matrix of the string (phase times tensor product, site 1
// is the most significant factor). Throws SizeError for N > 6.
Eigen::MatrixXcd matrix_oracle(const PauliString& s);

}  // namespace sarlab
