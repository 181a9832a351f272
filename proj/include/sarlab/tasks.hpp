#pragma once

// Deterministic benchmark instances and their exact oracles.
//
// Input payload encodings:
//   cyclic    "ADBAA"                 letters from the first alphabet_size of A..Z
//   addition  "1234+5678"             two decimal operands
//   pauli     "+1 XY * +i ZZ"         two canonical Pauli strings joined by " * "
//
// Expected outputs are the oracle renderings: a letter string, a decimal
// string without leading zeros, or a canonical Pauli string ("+i ZX").

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "sarlab/pauli.hpp"

namespace sarlab {

enum class TaskKind { cyclic, addition, pauli };

std::string_view to_string(TaskKind kind) noexcept;
// Throws ValidationError for unknown names.
TaskKind parse_task_kind(std::string_view name);

struct TaskParams {
  int alphabet_size = 0;  // cyclic only
  int digits = 0;         // addition only

  bool operator==(const TaskParams&) const = default;
};

struct TaskInstance {
  TaskKind kind = TaskKind::cyclic;
  int n = 0;
  std::uint64_t seed = 0;
  TaskParams params;
  std::string input;
  std::string expected;

  bool operator==(const TaskInstance&) const = default;
};

inline constexpr int kMinAlphabet = 2;
inline constexpr int kMaxAlphabet = 26;

std::string cyclic_oracle(std::string_view input, int alphabet_size);
TaskInstance gen_cyclic(int alphabet_size, int n, std::uint64_t seed);
// Instance around a caller-chosen input string.
TaskInstance make_cyclic(int alphabet_size, std::string input, std::uint64_t seed = 0);

// Schoolbook addition of two decimal strings. Zero-padded operands are
// accepted; the result carries no leading zeros.
std::string addition_oracle(std::string_view a, std::string_view b);
TaskInstance gen_addition(int n_digits, std::uint64_t seed);
TaskInstance make_addition(std::string a, std::string b, std::uint64_t seed = 0);

TaskInstance gen_pauli(int n, std::uint64_t seed);
TaskInstance make_pauli(const PauliString& lhs, const PauliString& rhs, std::uint64_t seed = 0);
// Splits a pauli payload into its two operands.
std::pair<PauliString, PauliString> parse_pauli_input(std::string_view input);

// Dispatches on kind. params.alphabet_size is required for cyclic.
TaskInstance generate(TaskKind kind, int n, std::uint64_t seed, const TaskParams& params);

// Re-runs the oracle on instance.input.
std::string solve(const TaskInstance& instance);

}  // namespace sarlab
