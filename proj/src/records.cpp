#include "sarlab/records.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sarlab/error.hpp"

namespace sarlab {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field \"") + key + "\" has the wrong type");
  }
}

int positive_n(const Json& j) {
  const auto n = field<std::int64_t>(j, "n");
  if (n < 1 || n > 1'000'000'000) throw ValidationError("field \"n\" must be a positive integer");
  return static_cast<int>(n);
}

std::uint64_t seed_field(const Json& j) {
  if (!j.is_object() || !j.contains("seed") || !j.at("seed").is_number_integer()) {
    throw ValidationError("field \"seed\" must be an unsigned integer");
  }
  if (j.at("seed").is_number_unsigned()) return j.at("seed").get<std::uint64_t>();
  const auto v = j.at("seed").get<std::int64_t>();
  if (v < 0) throw ValidationError("field \"seed\" must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

Json params_json(const TaskInstance& instance) {
  Json params = Json::object();
  switch (instance.kind) {
    case TaskKind::cyclic:
      params["alphabet_size"] = instance.params.alphabet_size;
      break;
    case TaskKind::addition:
      params["digits"] = instance.params.digits;
      break;
    case TaskKind::pauli:
      break;
  }
  return params;
}

}  // namespace

TrialLine TrialLine::from_record(const TrialRecord& record) {
  return {record.instance.kind, record.instance.n,     record.instance.seed,
          record.responder,     record.raw_response,   record.parsed,
          record.strict_correct, record.relaxed_correct};
}

Json to_json(const TaskInstance& instance) {
  Json j;
  j["task"] = to_string(instance.kind);
  j["n"] = instance.n;
  j["seed"] = instance.seed;
  j["params"] = params_json(instance);
  j["input"] = instance.input;
  j["expected"] = instance.expected;
  return j;
}

Json to_json(const ResponseLine& response) {
  Json j;
  j["task"] = to_string(response.task);
  j["n"] = response.n;
  j["seed"] = response.seed;
  j["model"] = response.model;
  j["response"] = response.response;
  return j;
}

Json to_json(const TrialLine& trial) {
  Json j;
  j["task"] = to_string(trial.task);
  j["n"] = trial.n;
  j["seed"] = trial.seed;
  j["model"] = trial.model;
  j["response"] = trial.response;
  j["parsed"] = trial.parsed ? Json(*trial.parsed) : Json(nullptr);
  j["strict"] = trial.strict;
  j["relaxed"] = trial.relaxed;
  return j;
}

TaskInstance instance_from_json(const Json& j) {
  TaskInstance instance;
  instance.kind = parse_task_kind(field<std::string>(j, "task"));
  instance.n = positive_n(j);
  instance.seed = seed_field(j);
  const Json params = j.is_object() && j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) throw ValidationError("field \"params\" must be an object");
  if (instance.kind == TaskKind::cyclic) {
    instance.params.alphabet_size = field<int>(params, "alphabet_size");
  } else if (instance.kind == TaskKind::addition) {
    instance.params.digits = field<int>(params, "digits");
  }
  instance.input = field<std::string>(j, "input");
  instance.expected = field<std::string>(j, "expected");
  if (solve(instance) != instance.expected) {
    throw ValidationError("field \"expected\" does not match the oracle for input \"" +
                          instance.input + "\"");
  }
  return instance;
}

ResponseLine response_from_json(const Json& j) {
  ResponseLine r;
  r.task = parse_task_kind(field<std::string>(j, "task"));
  r.n = positive_n(j);
  r.seed = seed_field(j);
  r.model = field<std::string>(j, "model");
  r.response = field<std::string>(j, "response");
  return r;
}

TrialLine trial_from_json(const Json& j) {
  TrialLine t;
  t.task = parse_task_kind(field<std::string>(j, "task"));
  t.n = positive_n(j);
  t.seed = seed_field(j);
  t.model = field<std::string>(j, "model");
  t.response = field<std::string>(j, "response");
  if (!j.contains("parsed")) throw ValidationError("missing field \"parsed\"");
  if (!j.at("parsed").is_null()) t.parsed = field<std::string>(j, "parsed");
  t.strict = field<bool>(j, "strict");
  t.relaxed = field<bool>(j, "relaxed");
  return t;
}

std::string to_line(const Json& j) { return j.dump(); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, result.ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

void write_curve_csv(std::ostream& out, const SarCurve& curve) {
  out << kCurveHeader << '\n';
  for (const auto& p : curve.points) {
    out << p.n << ',' << p.trials << ',' << p.successes << ',' << format_double(p.estimate) << ','
        << format_double(p.ci_low) << ',' << format_double(p.ci_high) << '\n';
  }
}

SarCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("curve file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCurveHeader) {
    throw ValidationError("curve header must be '" + std::string(kCurveHeader) + "', got '" +
                          line + "'");
  }
  SarCurve curve;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 6) {
      throw ValidationError("curve line " + std::to_string(line_no) + " needs 6 columns");
    }
    SarPoint parsed;
    try {
      SarPoint& p = parsed;
      std::size_t used = 0;
      p.n = std::stoi(cells[0], &used);
      p.trials = std::stoll(cells[1]);
      p.successes = std::stoll(cells[2]);
      p.estimate = std::stod(cells[3]);
      p.ci_low = std::stod(cells[4]);
      p.ci_high = std::stod(cells[5]);
      if (p.n < 1 || used != cells[0].size()) throw std::invalid_argument("n");
    } catch (const std::exception&) {
      throw ValidationError("curve line " + std::to_string(line_no) + " is malformed");
    }
    const SarPoint& p = curve.points.emplace_back(parsed);
    if (p.trials < 0 || p.successes < 0 || p.successes > p.trials || !(p.estimate >= 0.0) ||
        !(p.estimate <= 1.0)) {
      throw ValidationError("curve line " + std::to_string(line_no) +
                            ": counts or estimate out of range");
    }
    if (curve.points.size() > 1 && p.n <= curve.points[curve.points.size() - 2].n) {
      throw ValidationError("curve line " + std::to_string(line_no) +
                            ": n must be strictly increasing");
    }
  }
  return curve;
}

}  // namespace sarlab
