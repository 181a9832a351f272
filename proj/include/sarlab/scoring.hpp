#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sarlab/tasks.hpp"

namespace sarlab {

struct TrialRecord {
  TaskInstance instance;
  std::string responder;
  std::string raw_response;
  std::optional<std::string> parsed;
  bool strict_correct = false;
  // Phase-ignored verdict for pauli; equals strict_correct for other kinds.
  bool relaxed_correct = false;

  bool operator==(const TrialRecord&) const = default;
};

enum class Criterion { strict, relaxed };

std::string_view to_string(Criterion criterion) noexcept;
Criterion parse_criterion(std::string_view name);

// Extracts the answer from a free-form response. The LAST candidate in the
// text wins, since chat models tend to put the answer after their reasoning:
//
//   cyclic    last maximal run of ASCII letters that is entirely uppercase
//             in the raw text; failing that, the last letter run, uppercased.
//   addition  last decimal number; ',' and '_' thousands separators are
//             dropped ("6,912" -> "6912").
//   pauli     last whitespace-delimited word made of I X Y Z (x y z also
//             accepted), with a phase glued in front ("-iXZ") or carried by
//             the preceding word ("+i", "-1", "i", "-"). A missing phase
//             reads as +1. Output is canonical: "<phase> <letters>".
//
// Returns nullopt when nothing resembling an answer is present. Never throws.
std::optional<std::string> parse_response(std::string_view raw, TaskKind kind);

TrialRecord judge(const TaskInstance& instance, std::string responder, std::string raw_response);

struct SarPoint {
  int n = 0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool operator==(const SarPoint&) const = default;
};

struct SarCurve {
  std::optional<TaskKind> kind;  // absent for synthetic curves
  std::vector<SarPoint> points;  // sorted by n, unique n
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z = kZ95);

// Point for one length with its 95% Wilson interval.
SarPoint make_point(int n, std::int64_t successes, std::int64_t trials);

// Groups records by n. Throws ValidationError on an empty input or mixed kinds.
SarCurve sar_curve(std::span<const TrialRecord> records, Criterion criterion);

struct Outcome {
  int n = 0;
  bool success = false;
};

// Same aggregation for bare outcomes (synthetic agents).
SarCurve sar_curve(std::span<const Outcome> outcomes, std::optional<TaskKind> kind = std::nullopt);

}  // namespace sarlab
