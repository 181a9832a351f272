#include "sarlab/tasks.hpp"

#include <algorithm>
#include <string>

#include "sarlab/error.hpp"
#include "sarlab/rng.hpp"

namespace sarlab {

namespace {

constexpr std::string_view kPauliSeparator = " * ";

void check_alphabet(int alphabet_size) {
  if (alphabet_size < kMinAlphabet || alphabet_size > kMaxAlphabet) {
    throw ParameterError("alphabet_size must be in [2, 26], got " +
                         std::to_string(alphabet_size));
  }
}

void check_positive(int n, const char* name) {
  if (n < 1) throw ParameterError(std::string(name) + " must be >= 1, got " + std::to_string(n));
}

void check_digits(std::string_view s, const char* name) {
  if (s.empty()) throw ValidationError(std::string(name) + " operand is empty");
  for (std::size_t pos = 0; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9') {
      throw ValidationError(std::string(name) + " operand has non-digit '" + s[pos] +
                            "' at position " + std::to_string(pos));
    }
  }
}

std::string random_operand(Xoshiro256& rng, int n_digits) {
  std::string digits(static_cast<std::size_t>(n_digits), '0');
  for (int pos = 0; pos < n_digits; ++pos) {
    const bool leading = pos == 0 && n_digits > 1;
    const auto low = leading ? 1U : 0U;
    digits[pos] = static_cast<char>('0' + low + rng.uniform_below(10 - low));
  }
  return digits;
}

PauliString random_pauli_string(Xoshiro256& rng, int n) {
  const Phase phase = Phase::from_exponent(static_cast<int>(rng.uniform_below(4)));
  std::vector<Pauli> ops(static_cast<std::size_t>(n));
  for (auto& op : ops) op = static_cast<Pauli>(rng.uniform_below(4));
  return PauliString(phase, std::move(ops));
}

}  // namespace

std::string_view to_string(TaskKind kind) noexcept {
  switch (kind) {
    case TaskKind::cyclic:
      return "cyclic";
    case TaskKind::addition:
      return "addition";
    case TaskKind::pauli:
      return "pauli";
  }
  return "?";
}

TaskKind parse_task_kind(std::string_view name) {
  for (TaskKind kind : {TaskKind::cyclic, TaskKind::addition, TaskKind::pauli}) {
    if (to_string(kind) == name) return kind;
  }
  throw ValidationError("unknown task kind '" + std::string(name) + "'");
}

std::string cyclic_oracle(std::string_view input, int alphabet_size) {
  check_alphabet(alphabet_size);
  std::string out(input.size(), '\0');
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    const int index = input[pos] - 'A';
    if (index < 0 || index >= alphabet_size) {
      throw ValidationError("character '" + std::string(1, input[pos]) + "' at position " +
                            std::to_string(pos) + " is outside the " +
                            std::to_string(alphabet_size) + "-letter alphabet");
    }
    out[pos] = static_cast<char>('A' + (index + 1) % alphabet_size);
  }
  return out;
}

TaskInstance gen_cyclic(int alphabet_size, int n, std::uint64_t seed) {
  check_alphabet(alphabet_size);
  check_positive(n, "n");
  Xoshiro256 rng(seed);
  std::string input(static_cast<std::size_t>(n), 'A');
  for (auto& c : input) {
    c = static_cast<char>('A' + rng.uniform_below(static_cast<std::uint64_t>(alphabet_size)));
  }
  return make_cyclic(alphabet_size, std::move(input), seed);
}

TaskInstance make_cyclic(int alphabet_size, std::string input, std::uint64_t seed) {
  TaskInstance instance;
  instance.kind = TaskKind::cyclic;
  instance.n = static_cast<int>(input.size());
  instance.seed = seed;
  instance.params.alphabet_size = alphabet_size;
  instance.expected = cyclic_oracle(input, alphabet_size);
  instance.input = std::move(input);
  return instance;
}

std::string addition_oracle(std::string_view a, std::string_view b) {
  check_digits(a, "first");
  check_digits(b, "second");
  std::string sum;
  sum.reserve(std::max(a.size(), b.size()) + 1);
  int carry = 0;
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  while (ia != a.rend() || ib != b.rend() || carry != 0) {
    int digit = carry;
    if (ia != a.rend()) digit += *ia++ - '0';
    if (ib != b.rend()) digit += *ib++ - '0';
    sum.push_back(static_cast<char>('0' + digit % 10));
    carry = digit / 10;
  }
  while (sum.size() > 1 && sum.back() == '0') sum.pop_back();
  std::reverse(sum.begin(), sum.end());
  return sum;
}

TaskInstance gen_addition(int n_digits, std::uint64_t seed) {
  check_positive(n_digits, "n_digits");
  Xoshiro256 rng(seed);
  std::string a = random_operand(rng, n_digits);
  std::string b = random_operand(rng, n_digits);
  return make_addition(std::move(a), std::move(b), seed);
}

TaskInstance make_addition(std::string a, std::string b, std::uint64_t seed) {
  TaskInstance instance;
  instance.kind = TaskKind::addition;
  instance.expected = addition_oracle(a, b);
  instance.n = static_cast<int>(std::max(a.size(), b.size()));
  instance.seed = seed;
  instance.params.digits = instance.n;
  instance.input = a + "+" + b;
  return instance;
}

TaskInstance gen_pauli(int n, std::uint64_t seed) {
  check_positive(n, "n");
  Xoshiro256 rng(seed);
  PauliString lhs = random_pauli_string(rng, n);
  PauliString rhs = random_pauli_string(rng, n);
  return make_pauli(lhs, rhs, seed);
}

TaskInstance make_pauli(const PauliString& lhs, const PauliString& rhs, std::uint64_t seed) {
  TaskInstance instance;
  instance.kind = TaskKind::pauli;
  instance.expected = mul_strings(lhs, rhs).str();
  instance.n = static_cast<int>(lhs.size());
  instance.seed = seed;
  instance.input = lhs.str();
  instance.input += kPauliSeparator;
  instance.input += rhs.str();
  return instance;
}

std::pair<PauliString, PauliString> parse_pauli_input(std::string_view input) {
  const auto split = input.find(kPauliSeparator);
  if (split == std::string_view::npos) {
    throw ValidationError("pauli input needs two strings joined by ' * '");
  }
  return {PauliString::parse(input.substr(0, split)),
          PauliString::parse(input.substr(split + kPauliSeparator.size()))};
}

TaskInstance generate(TaskKind kind, int n, std::uint64_t seed, const TaskParams& params) {
  switch (kind) {
    case TaskKind::cyclic:
      return gen_cyclic(params.alphabet_size, n, seed);
    case TaskKind::addition:
      return gen_addition(n, seed);
    case TaskKind::pauli:
      return gen_pauli(n, seed);
  }
  throw ValidationError("unknown task kind");
}

std::string solve(const TaskInstance& instance) {
  switch (instance.kind) {
    case TaskKind::cyclic:
      return cyclic_oracle(instance.input, instance.params.alphabet_size);
    case TaskKind::addition: {
      const auto plus = instance.input.find('+');
      if (plus == std::string::npos) throw ValidationError("addition input needs 'A+B'");
      return addition_oracle(std::string_view(instance.input).substr(0, plus),
                             std::string_view(instance.input).substr(plus + 1));
    }
    case TaskKind::pauli: {
      const auto [lhs, rhs] = parse_pauli_input(instance.input);
      return mul_strings(lhs, rhs).str();
    }
  }
  throw ValidationError("unknown task kind");
}

}  // namespace sarlab
