#include "sarlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sarlab/error.hpp"
#include "sarlab/rng.hpp"
#include "sarlab/sk_model.hpp"

namespace sarlab {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto at = text.find(sep, start);
    parts.push_back(trim(text.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

class Section {
 public:
  Section(const pt::ptree& tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool has(const std::string& key) const { return tree_.count(key) > 0; }

  std::string raw(const std::string& key) const {
    if (!has(key)) throw ConfigError(where(key) + ": required key is missing");
    return trim(tree_.get<std::string>(key));
  }

  template <class T>
  T get(const std::string& key) const {
    const std::string text = raw(key);
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !in.eof()) throw ConfigError(where(key) + ": cannot parse '" + text + "'");
    return value;
  }

  template <class T>
  T get_or(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  std::vector<int> ints(const std::string& key) const {
    try {
      return parse_int_list(raw(key));
    } catch (const ConfigError& e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
  }

  std::string where(const std::string& key) const { return name_ + "." + key; }

 private:
  const pt::ptree& tree_;
  std::string name_;
};

void require_increasing(const std::vector<int>& grid, const std::string& where) {
  if (grid.empty()) throw ConfigError(where + ": must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw ConfigError(where + ": lengths must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) throw ConfigError(where + ": must be strictly increasing");
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

TaskInstance instance_from_payload(const TaskConfig& task, const std::string& payload,
                                   std::uint64_t seed) {
  switch (task.kind) {
    case TaskKind::cyclic:
      return make_cyclic(task.params.alphabet_size, payload, seed);
    case TaskKind::addition: {
      const auto plus = payload.find('+');
      if (plus == std::string::npos) throw ConfigError("task.inputs: addition needs 'A+B'");
      return make_addition(trim(payload.substr(0, plus)), trim(payload.substr(plus + 1)), seed);
    }
    case TaskKind::pauli: {
      const auto [lhs, rhs] = parse_pauli_input(payload);
      return make_pauli(lhs, rhs, seed);
    }
  }
  throw ConfigError("task.kind: unknown");
}

using InstanceKey = std::tuple<TaskKind, int, std::uint64_t>;

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw ConfigError("empty list element");
    try {
      const auto dots = part.find("..");
      if (dots == std::string::npos) {
        std::size_t used = 0;
        values.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } else {
        const int lo = std::stoi(part.substr(0, dots));
        const int hi = std::stoi(part.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument(part);
        for (int v = lo; v <= hi; ++v) values.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse list element '" + part + "'");
    }
  }
  return values;
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  RunConfig config;
  if (auto node = tree.get_child_optional("task")) {
    const Section s(*node, "task");
    TaskConfig task;
    try {
      task.kind = parse_task_kind(s.raw("kind"));
    } catch (const ValidationError& e) {
      throw ConfigError(s.where("kind") + ": " + e.what());
    }
    if (task.kind == TaskKind::cyclic) {
      task.params.alphabet_size = s.get<int>("alphabet_size");
      if (task.params.alphabet_size < kMinAlphabet || task.params.alphabet_size > kMaxAlphabet) {
        throw ConfigError(s.where("alphabet_size") + ": must be in [2, 26]");
      }
    }
    if (s.has("inputs")) {
      for (auto& payload : split(s.raw("inputs"), '|')) {
        if (payload.empty()) throw ConfigError(s.where("inputs") + ": empty payload");
        task.inputs.push_back(std::move(payload));
      }
    }
    if (s.has("n_grid") || task.inputs.empty()) {
      task.n_grid = s.ints("n_grid");
      require_increasing(task.n_grid, s.where("n_grid"));
    }
    task.per_n = s.get_or<int>("per_n", 1);
    if (task.per_n < 1) throw ConfigError(s.where("per_n") + ": must be >= 1");
    task.seed = s.get_or<std::uint64_t>("seed", 0);
    config.task = std::move(task);
  }
  if (auto node = tree.get_child_optional("judge")) {
    const Section s(*node, "judge");
    if (s.has("criterion")) {
      try {
        config.criterion = parse_criterion(s.raw("criterion"));
      } catch (const ValidationError& e) {
        throw ConfigError(s.where("criterion") + ": " + e.what());
      }
    }
  }
  if (auto node = tree.get_child_optional("sk")) {
    const Section s(*node, "sk");
    SimulateConfig sk;
    sk.j0 = s.get<double>("j0");
    sk.h = s.get<double>("h");
    sk.realizations = s.get_or<int>("realizations", 1);
    sk.seed = s.get_or<std::uint64_t>("seed", 0);
    sk.n_grid = s.ints("n_grid");
    sk.trials_per_realization = s.get_or<int>("trials_per_realization", 0);
    require_increasing(sk.n_grid, s.where("n_grid"));
    if (sk.j0 < 0.0) throw ConfigError(s.where("j0") + ": must be >= 0");
    if (sk.realizations < 1) throw ConfigError(s.where("realizations") + ": must be >= 1");
    if (sk.trials_per_realization < 0) {
      throw ConfigError(s.where("trials_per_realization") + ": must be >= 0");
    }
    if (sk.n_grid.back() > kMaxEnumerationSpins) {
      throw ConfigError(s.where("n_grid") + ": lengths are limited to 20");
    }
    config.sk = sk;
  }
  if (auto node = tree.get_child_optional("plan")) {
    const Section s(*node, "plan");
    PlanConfig plan;
    plan.alpha = s.get<double>("alpha");
    plan.beta0 = s.get<double>("beta0");
    plan.theta = s.get_or<double>("theta", 1.0);
    plan.n = s.get<double>("n");
    plan.k_max = s.get<int>("k_max");
    config.plan = plan;
  }
  if (auto node = tree.get_child_optional("output")) {
    const Section s(*node, "output");
    if (s.has("dir")) config.out_dir = s.raw("dir");
    config.threads = s.get_or<unsigned>("threads", 1);
  }
  return config;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  return parse_config(in);
}

std::uint64_t instance_seed(std::uint64_t seed, int n, int index) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(n)),
                     static_cast<std::uint64_t>(index));
}

std::vector<TaskInstance> build_instances(const TaskConfig& task) {
  std::vector<TaskInstance> out;
  for (std::size_t i = 0; i < task.inputs.size(); ++i) {
    out.push_back(instance_from_payload(task, task.inputs[i], derive_seed(task.seed, i)));
  }
  for (int n : task.n_grid) {
    for (int i = 0; i < task.per_n; ++i) {
      out.push_back(generate(task.kind, n, instance_seed(task.seed, n, i), task.params));
    }
  }
  return out;
}

fs::path cmd_generate(const RunConfig& config, const fs::path& out_dir, bool oracle_responses) {
  if (!config.task) throw ConfigError("task: section is required for generate");
  const auto instances = build_instances(*config.task);
  ensure_dir(out_dir);
  const fs::path path = out_dir / "instances.jsonl";
  {
    auto out = open_output(path);
    for (const auto& instance : instances) out << to_line(to_json(instance)) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
  }
  if (oracle_responses) {
    auto out = open_output(out_dir / "oracle_responses.jsonl");
    for (const auto& instance : instances) {
      const ResponseLine r{instance.kind, instance.n, instance.seed, "oracle", instance.expected};
      out << to_line(to_json(r)) << '\n';
    }
  }
  return path;
}

JudgeSummary cmd_judge(const fs::path& instances_path, const fs::path& responses_path,
                       Criterion criterion, const std::optional<std::string>& model,
                       const fs::path& out_dir) {
  std::map<InstanceKey, TaskInstance> instances;
  {
    auto in = open_input(instances_path);
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
      if (trim(line).empty()) continue;
      try {
        const TaskInstance instance = instance_from_json(Json::parse(line));
        instances[{instance.kind, instance.n, instance.seed}] = instance;
      } catch (const std::exception& e) {
        throw ValidationError(instances_path.string() + " line " + std::to_string(line_no) +
                              ": " + e.what());
      }
    }
  }

  ensure_dir(out_dir);
  auto trials_out = open_output(out_dir / "trials.jsonl");
  auto rejects_out = open_output(out_dir / "rejects.jsonl");
  std::vector<TrialRecord> records;
  JudgeSummary summary;
  auto reject = [&](int line_no, const std::string& reason) {
    Json j;
    j["line"] = line_no;
    j["reason"] = reason;
    rejects_out << to_line(j) << '\n';
    ++summary.rejects;
  };

  auto in = open_input(responses_path);
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    ResponseLine response;
    try {
      response = response_from_json(Json::parse(line));
    } catch (const std::exception& e) {
      reject(line_no, std::string("malformed: ") + e.what());
      continue;
    }
    if (model && response.model != *model) continue;
    const auto it = instances.find({response.task, response.n, response.seed});
    if (it == instances.end()) {
      reject(line_no, "orphan: no instance with this (task, n, seed)");
      continue;
    }
    records.push_back(judge(it->second, response.model, response.response));
    trials_out << to_line(to_json(TrialLine::from_record(records.back()))) << '\n';
  }

  summary.trials = records.size();
  auto curve_out = open_output(out_dir / "curve.csv");
  if (!records.empty()) summary.curve = sar_curve(records, criterion);
  write_curve_csv(curve_out, summary.curve);
  if (!curve_out || !trials_out || !rejects_out) throw IoError("failed writing judge outputs");
  return summary;
}

Json fit_report(const ScalingFit& fit) {
  const auto optional_number = [](const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
  };
  Json j;
  j["alpha"] = fit.alpha;
  j["beta0"] = fit.beta0;
  j["nstar_closed"] = optional_number(fit.nstar_closed);
  j["nstar_half"] = optional_number(fit.nstar_half);
  j["residual"] = fit.residual;
  j["points_used"] = fit.points_used;
  j["log_alpha_se"] = std::isfinite(fit.log_alpha_se) ? Json(fit.log_alpha_se) : Json(nullptr);
  Json map = Json::object();
  try {
    const MapPoint p = map_point(fit);
    map["log_alpha"] = p.log_alpha;
    map["log_beta0"] = p.log_beta0;
    map["log_nstar"] = p.log_nstar;
  } catch (const Error&) {
    map = nullptr;
  }
  j["map"] = map;
  return j;
}

ScalingFit cmd_fit(const fs::path& curve_path, const FitOptions& options) {
  auto in = open_input(curve_path);
  const SarCurve curve = read_curve_csv(in);
  return fit_scaling(curve, options);
}

void cmd_simulate(const SimulateConfig& sk, const fs::path& out_dir, unsigned threads) {
  ensure_dir(out_dir);
  auto ensemble = open_output(out_dir / "ensemble.csv");
  auto theory = open_output(out_dir / "theory.csv");
  ensemble << "n,j0,h,R,sar_geo,sar_arith,stderr_log\n";
  theory << "n,j0,h,sar_pert2,sar_pert4,sar_crossover,sar_independent\n";
  std::vector<Outcome> outcomes;
  for (int n : sk.n_grid) {
    const SkEnsembleSpec spec{{n, sk.j0, sk.h}, sk.realizations, sk.seed};
    const DisorderAverage avg = sar_disorder_avg(spec, threads);
    ensemble << n << ',' << format_double(sk.j0) << ',' << format_double(sk.h) << ','
             << sk.realizations << ',' << format_double(avg.sar_geo) << ','
             << format_double(avg.sar_arith) << ',' << format_double(avg.std_err_of_log) << '\n';
    theory << n << ',' << format_double(sk.j0) << ',' << format_double(sk.h) << ','
           << format_double(sar_perturbative(spec.params, 2)) << ','
           << format_double(sar_perturbative(spec.params, 4)) << ','
           << format_double(sar_crossover_approx(spec.params)) << ','
           << format_double(sar_independent(n, sk.h)) << '\n';
    if (sk.trials_per_realization > 0) {
      for (const auto& o : synth_trials(spec, sk.trials_per_realization, threads)) {
        outcomes.push_back({o.n, o.success});
      }
    }
  }
  if (!outcomes.empty()) {
    auto curve = open_output(out_dir / "synth_curve.csv");
    write_curve_csv(curve, sar_curve(outcomes));
  }
  Json meta;
  meta["rng"] = "xoshiro256**";
  meta["seed_expansion"] = "splitmix64";
  meta["realization_seed"] = "derive_seed(master_seed, r)";
  meta["normal_sampler"] = "marsaglia-polar";
  meta["master_seed"] = sk.seed;
  meta["realizations"] = sk.realizations;
  meta["trials_per_realization"] = sk.trials_per_realization;
  auto meta_out = open_output(out_dir / "simulate_meta.json");
  meta_out << meta.dump(2) << '\n';
  if (!ensemble || !theory || !meta_out) throw IoError("failed writing simulate outputs");
}

std::vector<DividePlan> plan_rows(const PlanConfig& plan) {
  if (plan.k_max < 1) throw ParameterError("k_max must be >= 1");
  std::vector<DividePlan> rows;
  for (int k = 1; k <= plan.k_max; ++k) {
    rows.push_back(make_plan(plan.n, k, plan.alpha, plan.beta0, plan.theta));
  }
  return rows;
}

void write_plan_csv(std::ostream& out, const std::vector<DividePlan>& rows) {
  const auto optional_cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  out << "k,sar_single,sar_dc,gain,n_dc,nstar_extended,first_positive\n";
  bool flagged = false;
  for (const auto& row : rows) {
    const bool first = !flagged && row.gain > 0.0;
    flagged = flagged || first;
    out << row.k << ',' << format_double(row.sar_single) << ',' << format_double(row.sar_dc)
        << ',' << format_double(row.gain) << ',' << optional_cell(row.n_dc) << ','
        << optional_cell(row.nstar_extended) << ',' << (first ? 1 : 0) << '\n';
  }
}

namespace {

fs::path resolve_out(const std::string& flag, const RunConfig& config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SARLAB_OUT_DIR"); env && *env) return env;
  if (config.out_dir) return *config.out_dir;
  return ".";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const FitError*>(&e) || dynamic_cast<const NumericError*>(&e)) return kExitFit;
  if (dynamic_cast<const Error*>(&e)) return kExitValidation;
  return kExitUnexpected;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequence accuracy rate laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  std::string criterion_flag;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  auto* gen = app.add_subcommand("generate", "Generate benchmark instances (JSONL)");
  gen->add_option("--config", config_path, "Config file")->required();
  gen->add_option("--out", out_flag, "Output directory");
  auto* gen_seed = gen->add_option("--seed", seed, "Override task.seed");
  bool oracle_responses = false;
  gen->add_flag("--oracle-responses", oracle_responses,
                "Also write oracle_responses.jsonl with perfect answers");

  auto* jdg = app.add_subcommand("judge", "Score responses against instances");
  std::string instances_path;
  std::string responses_path;
  std::string model;
  jdg->add_option("--instances", instances_path, "Instance JSONL")->required();
  jdg->add_option("--responses", responses_path, "Response JSONL")->required();
  jdg->add_option("--config", config_path, "Config file");
  jdg->add_option("--criterion", criterion_flag, "strict|relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  jdg->add_option("--model", model, "Only judge responses from this model");
  jdg->add_option("--out", out_flag, "Output directory");

  auto* fit = app.add_subcommand("fit", "Fit the scaling law to a curve CSV");
  std::string curve_path;
  bool clip = false;
  bool mle = false;
  fit->add_option("--curve", curve_path, "Curve CSV")->required();
  fit->add_flag("--clip", clip, "Clip SAR = 0 / 1 points instead of dropping them");
  fit->add_flag("--mle", mle, "Refine by binomial maximum likelihood");
  fit->add_option("--out", out_flag, "Also write fit.json into this directory");

  auto* sim = app.add_subcommand("simulate", "Spin-glass ensemble and theory curves");
  sim->add_option("--config", config_path, "Config file")->required();
  sim->add_option("--out", out_flag, "Output directory");
  auto* sim_seed = sim->add_option("--seed", seed, "Override sk.seed");
  sim->add_option("--threads", threads, "Worker threads (advisory)");

  auto* pln = app.add_subcommand("plan", "Divide-and-conquer table");
  PlanConfig plan;
  pln->add_option("--config", config_path, "Config file ([plan] section)");
  auto* a_opt = pln->add_option("--alpha", plan.alpha, "Error accumulation factor");
  auto* b_opt = pln->add_option("--beta0", plan.beta0, "Intrinsic error rate");
  pln->add_option("--theta", plan.theta, "Overhead factor in (0, 1]");
  auto* n_opt = pln->add_option("--n", plan.n, "Sequence length");
  auto* k_opt = pln->add_option("--k-max", plan.k_max, "Largest segment count");
  pln->add_option("--out", out_flag, "Write plan.csv into this directory");

  std::vector<std::string> argv_storage{"sarlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    if (threads > 0) config.threads = threads;
    const fs::path out_dir = resolve_out(out_flag, config);

    if (*gen) {
      if (gen_seed->count() > 0 && config.task) config.task->seed = seed;
      const fs::path path = cmd_generate(config, out_dir, oracle_responses);
      out << path.string() << '\n';
      return kExitOk;
    }
    if (*jdg) {
      const Criterion criterion =
          criterion_flag.empty() ? config.criterion : parse_criterion(criterion_flag);
      const auto summary =
          cmd_judge(instances_path, responses_path, criterion,
                    model.empty() ? std::nullopt : std::optional<std::string>(model), out_dir);
      out << "judged " << summary.trials << " responses, " << summary.rejects << " rejected\n";
      if (summary.trials == 0) {
        err << "error: no responses could be judged\n";
        return kExitNoData;
      }
      return kExitOk;
    }
    if (*fit) {
      FitOptions options;
      options.extremes = clip ? ExtremePolicy::clip : ExtremePolicy::exclude;
      options.mle_refine = mle;
      const Json report = fit_report(cmd_fit(curve_path, options));
      out << report.dump(2) << '\n';
      if (!out_flag.empty()) {
        ensure_dir(out_flag);
        auto file = open_output(fs::path(out_flag) / "fit.json");
        file << report.dump(2) << '\n';
      }
      return kExitOk;
    }
    if (*sim) {
      if (!config.sk) throw ConfigError("sk: section is required for simulate");
      if (sim_seed->count() > 0) config.sk->seed = seed;
      cmd_simulate(*config.sk, out_dir, config.threads);
      out << out_dir.string() << '\n';
      return kExitOk;
    }
    if (*pln) {
      if (config.plan) {
        const PlanConfig from_file = *config.plan;
        if (a_opt->count() == 0) plan.alpha = from_file.alpha;
        if (b_opt->count() == 0) plan.beta0 = from_file.beta0;
        if (n_opt->count() == 0) plan.n = from_file.n;
        if (k_opt->count() == 0) plan.k_max = from_file.k_max;
        if (pln->get_option("--theta")->count() == 0) plan.theta = from_file.theta;
      } else if (a_opt->count() == 0 || b_opt->count() == 0 || n_opt->count() == 0 ||
                 k_opt->count() == 0) {
        throw ConfigError("plan: --alpha, --beta0, --n and --k-max are required without a config");
      }
      const auto rows = plan_rows(plan);
      if (out_flag.empty()) {
        write_plan_csv(out, rows);
      } else {
        ensure_dir(out_flag);
        auto file = open_output(fs::path(out_flag) / "plan.csv");
        write_plan_csv(file, rows);
        out << (fs::path(out_flag) / "plan.csv").string() << '\n';
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUnexpected;
}

}  // namespace sarlab
