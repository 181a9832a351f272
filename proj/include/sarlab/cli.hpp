#pragma once

// Command-line pipeline: generate, judge, fit, simulate, plan.
//
// Exit codes:
//   0  success
//   2  configuration or usage error
//   3  I/O error
//   4  fit or numeric failure
//   5  validation / parameter / domain error
//   6  no data (e.g. an empty response file)
//   1  anything unexpected
//
// Config files are INI-style ([section] then key = value). Lists are comma
// separated and "a..b" expands to an inclusive integer range. The output
// directory resolves as --out, then $SARLAB_OUT_DIR, then [output] dir, then ".".

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sarlab/dnc.hpp"
#include "sarlab/records.hpp"
#include "sarlab/scaling.hpp"
#include "sarlab/scoring.hpp"
#include "sarlab/tasks.hpp"

namespace sarlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitFit = 4,
  kExitValidation = 5,
  kExitNoData = 6,
};

struct TaskConfig {
  TaskKind kind = TaskKind::cyclic;
  TaskParams params;
  std::vector<int> n_grid;
  int per_n = 1;
  std::uint64_t seed = 0;
  // Explicit payloads ("ADBAA", "1234+5678", "+1 X * +1 Y"), '|' separated.
  std::vector<std::string> inputs;
};

struct SimulateConfig {
  double j0 = 0.0;
  double h = 0.0;
  int realizations = 1;
  std::uint64_t seed = 0;
  std::vector<int> n_grid;
  int trials_per_realization = 0;  // 0 skips the synthetic curve
};

struct PlanConfig {
  double alpha = 1.0;
  double beta0 = 0.0;
  double theta = 1.0;
  double n = 1.0;
  int k_max = 1;
};

struct RunConfig {
  std::optional<TaskConfig> task;
  Criterion criterion = Criterion::strict;
  std::optional<SimulateConfig> sk;
  std::optional<PlanConfig> plan;
  std::optional<std::filesystem::path> out_dir;
  unsigned threads = 1;
};

// Throws ConfigError naming the offending "section.key".
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

// Parses "2, 4, 6" or "2..14" (or a mix, "2..4, 8").
std::vector<int> parse_int_list(std::string_view text);

// Seed of instance `index` at length n: derive_seed(derive_seed(seed, n), index).
std::uint64_t instance_seed(std::uint64_t seed, int n, int index);

std::vector<TaskInstance> build_instances(const TaskConfig& task);

// Writes out_dir/instances.jsonl (and out_dir/oracle_responses.jsonl, where
// every response is the expected answer, when requested).
std::filesystem::path cmd_generate(const RunConfig& config, const std::filesystem::path& out_dir,
                                   bool oracle_responses = false);

struct JudgeSummary {
  std::size_t trials = 0;
  std::size_t rejects = 0;
  SarCurve curve;
};

// Writes out_dir/trials.jsonl, out_dir/curve.csv and out_dir/rejects.jsonl.
JudgeSummary cmd_judge(const std::filesystem::path& instances,
                       const std::filesystem::path& responses, Criterion criterion,
                       const std::optional<std::string>& model,
                       const std::filesystem::path& out_dir);

Json fit_report(const ScalingFit& fit);
ScalingFit cmd_fit(const std::filesystem::path& curve, const FitOptions& options);

// Writes ensemble.csv, theory.csv, simulate_meta.json and, when trials are
// requested, synth_curve.csv.
void cmd_simulate(const SimulateConfig& sk, const std::filesystem::path& out_dir,
                  unsigned threads);

std::vector<DividePlan> plan_rows(const PlanConfig& plan);
void write_plan_csv(std::ostream& out, const std::vector<DividePlan>& rows);

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sarlab
