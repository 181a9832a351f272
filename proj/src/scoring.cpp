#include "sarlab/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <regex>

#include "sarlab/error.hpp"

namespace sarlab {

namespace {

bool is_ascii_letter(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

char ascii_upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

std::optional<std::string> parse_cyclic(std::string_view raw) {
  std::optional<std::string> last_upper;
  std::optional<std::string> last_any;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    if (!is_ascii_letter(raw[pos])) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < raw.size() && is_ascii_letter(raw[pos])) ++pos;
    const std::string_view run = raw.substr(start, pos - start);
    std::string upper(run);
    std::transform(upper.begin(), upper.end(), upper.begin(), ascii_upper);
    if (upper == run) last_upper = upper;
    last_any = std::move(upper);
  }
  return last_upper ? last_upper : last_any;
}

std::optional<std::string> parse_addition(std::string_view raw) {
  static const std::regex kNumber(R"(\d{1,3}(?:[,_]\d{3})+(?!\d)|\d+)");
  const std::string text(raw);
  std::optional<std::string> last;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kNumber);
       it != std::sregex_iterator(); ++it) {
    last = it->str();
  }
  if (!last) return std::nullopt;
  std::erase_if(*last, [](char c) { return c == ',' || c == '_'; });
  return last;
}

// Words are whitespace-delimited with surrounding punctuation removed.
std::vector<std::string> pauli_words(std::string_view raw) {
  static constexpr std::string_view kPunct = ".,;:!?`\"'()[]{}*<>";
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    std::string_view word = raw.substr(start, pos - start);
    while (!word.empty() && kPunct.find(word.front()) != std::string_view::npos) {
      word.remove_prefix(1);
    }
    while (!word.empty() && kPunct.find(word.back()) != std::string_view::npos) {
      word.remove_suffix(1);
    }
    if (!word.empty()) words.emplace_back(word);
  }
  return words;
}

bool is_operator_char(char c) {
  return c == 'I' || c == 'X' || c == 'Y' || c == 'Z' || c == 'x' || c == 'y' || c == 'z';
}

// "+1" "-1" "+i" "-i" "1" "i" "+" "-" -> canonical token.
std::optional<std::string> phase_word(std::string_view word) {
  std::string sign = "+";
  if (!word.empty() && (word.front() == '+' || word.front() == '-')) {
    sign = std::string(1, word.front());
    word.remove_prefix(1);
  }
  if (word.empty() || word == "1") return sign + "1";
  if (word == "i") return sign + "i";
  return std::nullopt;
}

std::optional<std::string> parse_pauli(std::string_view raw) {
  std::string text(raw);
  // U+2212 MINUS SIGN
  for (std::size_t at; (at = text.find("\xE2\x88\x92")) != std::string::npos;) {
    text.replace(at, 3, "-");
  }
  const auto words = pauli_words(text);
  for (std::size_t w = words.size(); w-- > 0;) {
    const std::string& word = words[w];
    std::size_t split = word.size();
    while (split > 0 && is_operator_char(word[split - 1])) --split;
    if (split == word.size()) continue;
    std::string letters = word.substr(split);
    std::transform(letters.begin(), letters.end(), letters.begin(), ascii_upper);
    std::optional<std::string> phase;
    if (split > 0) {
      phase = phase_word(std::string_view(word).substr(0, split));
      if (!phase) continue;
    } else if (w > 0) {
      phase = phase_word(words[w - 1]);
    }
    return phase.value_or("+1") + " " + letters;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Criterion criterion) noexcept {
  return criterion == Criterion::strict ? "strict" : "relaxed";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "strict") return Criterion::strict;
  if (name == "relaxed") return Criterion::relaxed;
  throw ValidationError("criterion must be 'strict' or 'relaxed', got '" + std::string(name) + "'");
}

std::optional<std::string> parse_response(std::string_view raw, TaskKind kind) {
  try {
    switch (kind) {
      case TaskKind::cyclic:
        return parse_cyclic(raw);
      case TaskKind::addition:
        return parse_addition(raw);
      case TaskKind::pauli:
        return parse_pauli(raw);
    }
  } catch (const std::exception&) {
    // std::regex may throw on pathological input (complexity limits).
  }
  return std::nullopt;
}

TrialRecord judge(const TaskInstance& instance, std::string responder, std::string raw_response) {
  TrialRecord record;
  record.parsed = parse_response(raw_response, instance.kind);
  record.instance = instance;
  record.responder = std::move(responder);
  record.raw_response = std::move(raw_response);
  if (!record.parsed) return record;
  record.strict_correct = *record.parsed == instance.expected;
  if (instance.kind == TaskKind::pauli) {
    const auto letters = [](std::string_view s) {
      const auto space = s.find(' ');
      return space == std::string_view::npos ? s : s.substr(space + 1);
    };
    record.relaxed_correct = letters(*record.parsed) == letters(instance.expected);
  } else {
    record.relaxed_correct = record.strict_correct;
  }
  return record;
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw ParameterError("wilson_interval needs trials >= 1");
  if (successes < 0 || successes > trials) {
    throw ParameterError("successes must lie in [0, trials]");
  }
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double centre = (p + z2 / (2.0 * t)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t));
  // At 0 or trials successes the exact endpoint is 0 or 1; rounding can miss it.
  const double low = successes == 0 ? 0.0 : std::clamp(centre - half, 0.0, 1.0);
  const double high = successes == trials ? 1.0 : std::clamp(centre + half, 0.0, 1.0);
  return {low, high};
}

SarPoint make_point(int n, std::int64_t successes, std::int64_t trials) {
  SarPoint point;
  point.n = n;
  point.trials = trials;
  point.successes = successes;
  point.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  const auto [low, high] = wilson_interval(successes, trials);
  point.ci_low = std::min(low, point.estimate);
  point.ci_high = std::max(high, point.estimate);
  return point;
}

namespace {

SarCurve tally(const std::map<int, std::pair<std::int64_t, std::int64_t>>& counts,
               std::optional<TaskKind> kind) {
  SarCurve curve;
  curve.kind = kind;
  curve.points.reserve(counts.size());
  for (const auto& [n, c] : counts) curve.points.push_back(make_point(n, c.first, c.second));
  return curve;
}

}  // namespace

SarCurve sar_curve(std::span<const TrialRecord> records, Criterion criterion) {
  if (records.empty()) throw ValidationError("cannot build a SAR curve from zero records");
  const TaskKind kind = records.front().instance.kind;
  std::map<int, std::pair<std::int64_t, std::int64_t>> counts;
  for (const auto& record : records) {
    if (record.instance.kind != kind) {
      throw ValidationError("records mix task kinds '" + std::string(to_string(kind)) +
                            "' and '" + std::string(to_string(record.instance.kind)) + "'");
    }
    const bool ok =
        criterion == Criterion::strict ? record.strict_correct : record.relaxed_correct;
    auto& c = counts[record.instance.n];
    c.first += ok ? 1 : 0;
    c.second += 1;
  }
  return tally(counts, kind);
}

SarCurve sar_curve(std::span<const Outcome> outcomes, std::optional<TaskKind> kind) {
  if (outcomes.empty()) throw ValidationError("cannot build a SAR curve from zero outcomes");
  std::map<int, std::pair<std::int64_t, std::int64_t>> counts;
  for (const auto& outcome : outcomes) {
    auto& c = counts[outcome.n];
    c.first += outcome.success ? 1 : 0;
    c.second += 1;
  }
  return tally(counts, kind);
}

}  // namespace sarlab
