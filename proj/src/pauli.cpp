#include "sarlab/pauli.hpp"

#include <array>

#include "sarlab/error.hpp"

namespace sarlab {

char to_char(Pauli p) noexcept { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw ValidationError(std::string("not a Pauli letter: '") + c + "'");
  }
}

std::complex<double> Phase::value() const noexcept {
  static constexpr std::array<std::complex<double>, 4> kValues{
      std::complex<double>{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kValues[k_];
}

std::string_view Phase::token() const noexcept {
  static constexpr std::array<std::string_view, 4> kTokens{"+1", "+i", "-1", "-i"};
  return kTokens[k_];
}

Phase Phase::parse(std::string_view token) {
  for (int k = 0; k < 4; ++k) {
    if (from_exponent(k).token() == token) return from_exponent(k);
  }
  throw ValidationError("not a phase token: '" + std::string(token) + "'");
}

SiteProduct mul_single(Pauli p, Pauli q) noexcept {
  const int a = static_cast<int>(p);
  const int b = static_cast<int>(q);
  // With X=1, Y=2, Z=3 the product letter is the XOR of the codes.
  const auto letter = static_cast<Pauli>(a ^ b);
  if (a == 0 || b == 0 || a == b) return {Phase::one(), letter};
  // Cyclic order X -> Y -> Z -> X gives +i, the reverse gives -i.
  const bool cyclic = (b - a + 3) % 3 == 1;
  return {cyclic ? Phase::i() : Phase::minus_i(), letter};
}

PauliString::PauliString(Phase phase, std::vector<Pauli> ops)
    : phase_(phase), ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("Pauli string must have at least one site");
}

PauliString PauliString::parse(std::string_view text) {
  const auto space = text.find(' ');
  if (space == std::string_view::npos) {
    throw ValidationError("Pauli string needs '<phase> <letters>': '" + std::string(text) + "'");
  }
  const Phase phase = Phase::parse(text.substr(0, space));
  const std::string_view letters = text.substr(space + 1);
  std::vector<Pauli> ops;
  ops.reserve(letters.size());
  for (char c : letters) ops.push_back(pauli_from_char(c));
  return PauliString(phase, std::move(ops));
}

PauliString PauliString::identity(std::size_t n) {
  return PauliString(Phase::one(), std::vector<Pauli>(n, Pauli::I));
}

std::string PauliString::letters() const {
  std::string out;
  out.reserve(ops_.size());
  for (Pauli p : ops_) out.push_back(to_char(p));
  return out;
}

std::string PauliString::str() const {
  std::string out(phase_.token());
  out.push_back(' ');
  out += letters();
  return out;
}

PauliString mul_strings(const PauliString& lhs, const PauliString& rhs) {
  if (lhs.size() != rhs.size()) {
    throw ValidationError("Pauli strings differ in length: " + std::to_string(lhs.size()) +
                          " vs " + std::to_string(rhs.size()));
  }
  Phase phase = lhs.phase() * rhs.phase();
  std::vector<Pauli> ops(lhs.size());
  for (std::size_t site = 0; site < lhs.size(); ++site) {
    const SiteProduct local = mul_single(lhs.ops()[site], rhs.ops()[site]);
    phase *= local.phase;
    ops[site] = local.op;
  }
  return PauliString(phase, std::move(ops));
}

namespace {

Eigen::Matrix2cd single_site_matrix(Pauli p) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I:
      m << C(1, 0), C(0, 0), C(0, 0), C(1, 0);
      break;
    case Pauli::X:
      m << C(0, 0), C(1, 0), C(1, 0), C(0, 0);
      break;
    case Pauli::Y:
      m << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
      break;
    case Pauli::Z:
      m << C(1, 0), C(0, 0), C(0, 0), C(-1, 0);
      break;
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd matrix_oracle(const PauliString& s) {
  if (s.size() > kMatrixOracleMaxSites) {
    throw SizeError("matrix oracle limited to " + std::to_string(kMatrixOracleMaxSites) +
                    " sites, got " + std::to_string(s.size()));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (Pauli p : s.ops()) out = kron(out, single_site_matrix(p));
  return s.phase().value() * out;
}

}  // namespace sarlab
