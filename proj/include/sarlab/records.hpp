#pragma once

// File formats shared by the command-line pipeline.
//
// JSONL, one compact object per line, keys in this order:
//   instance  {"task","n","seed","params","input","expected"}
//   response  {"task","n","seed","model","response"}
//   trial     {"task","n","seed","model","response","parsed","strict","relaxed"}
// "params" is {"alphabet_size":k} for cyclic, {"digits":d} for addition and
// {} for pauli; "parsed" is null when no answer could be extracted.
//
// CSV uses '.' decimals, no thousands separators and LF line endings. Curve
// files carry the header n,trials,successes,sar,ci_low,ci_high.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sarlab/scoring.hpp"

namespace sarlab {

using Json = nlohmann::ordered_json;

struct ResponseLine {
  TaskKind task = TaskKind::cyclic;
  int n = 0;
  std::uint64_t seed = 0;
  std::string model;
  std::string response;

  bool operator==(const ResponseLine&) const = default;
};

struct TrialLine {
  TaskKind task = TaskKind::cyclic;
  int n = 0;
  std::uint64_t seed = 0;
  std::string model;
  std::string response;
  std::optional<std::string> parsed;
  bool strict = false;
  bool relaxed = false;

  static TrialLine from_record(const TrialRecord& record);
  bool operator==(const TrialLine&) const = default;
};

Json to_json(const TaskInstance& instance);
Json to_json(const ResponseLine& response);
Json to_json(const TrialLine& trial);

// Each reader throws ValidationError naming the offending field. Instances
// are re-checked against their oracle.
TaskInstance instance_from_json(const Json& j);
ResponseLine response_from_json(const Json& j);
TrialLine trial_from_json(const Json& j);

// Compact single-line rendering.
std::string to_line(const Json& j);

// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string format_double(double value);

void write_curve_csv(std::ostream& out, const SarCurve& curve);
// Reads a curve file; the sar column is taken as written.
SarCurve read_curve_csv(std::istream& in);

inline constexpr std::string_view kCurveHeader = "n,trials,successes,sar,ci_low,ci_high";

}  // namespace sarlab
