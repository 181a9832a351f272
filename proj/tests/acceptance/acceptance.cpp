// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock budget.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sarlab/cli.hpp"
#include "sarlab/dnc.hpp"
#include "sarlab/pauli.hpp"
#include "sarlab/phase_chain.hpp"
#include "sarlab/rng.hpp"
#include "sarlab/scaling.hpp"
#include "sarlab/sk_model.hpp"
#include "sarlab/tasks.hpp"

namespace {

using namespace sarlab;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Check {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Verdict()> check;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

std::string percent(int hits, int total) {
  return std::to_string(hits) + "/" + std::to_string(total);
}

std::string trimmed(std::string text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return text;
}

// cpp_int reads a leading 0 as an octal prefix.
boost::multiprecision::cpp_int decimal(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return 0;
  return boost::multiprecision::cpp_int(digits.substr(first));
}

constexpr std::array<Pauli, 4> kLetters{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

PauliString random_pauli(Xoshiro256& rng, std::size_t n) {
  std::vector<Pauli> ops;
  for (std::size_t i = 0; i < n; ++i) ops.push_back(kLetters[rng.uniform_below(4)]);
  return PauliString(Phase::from_exponent(static_cast<int>(rng.uniform_below(4))), ops);
}

bool pauli_matches(const PauliString& a, const PauliString& b) {
  return matrix_oracle(mul_strings(a, b)).isApprox(matrix_oracle(a) * matrix_oracle(b), 1e-12);
}

Verdict oracle_suite() {
  Xoshiro256 rng(derive_seed(1, 1));
  int failures = 0;

  for (int size = kMinAlphabet; size <= kMaxAlphabet; ++size) {
    for (int rep = 0; rep < 100; ++rep) {
      const int len = 1 + static_cast<int>(rng.uniform_below(64));
      std::string s;
      for (int i = 0; i < len; ++i) s.push_back(static_cast<char>('A' + rng.uniform_below(size)));
      std::string t = s;
      for (int step = 0; step < size; ++step) t = cyclic_oracle(t, size);
      failures += (t != s) ? 1 : 0;
    }
  }
  const int cyclic_failures = failures;

  for (int rep = 0; rep < 10000; ++rep) {
    std::string a;
    std::string b;
    const int la = 1 + static_cast<int>(rng.uniform_below(60));
    const int lb = 1 + static_cast<int>(rng.uniform_below(60));
    for (int i = 0; i < la; ++i) a.push_back(static_cast<char>('0' + rng.uniform_below(10)));
    for (int i = 0; i < lb; ++i) b.push_back(static_cast<char>('0' + rng.uniform_below(10)));
    const boost::multiprecision::cpp_int sum = decimal(a) + decimal(b);
    failures += (addition_oracle(a, b) != sum.str()) ? 1 : 0;
  }
  const int addition_failures = failures - cyclic_failures;

  int exhaustive = 0;
  for (std::size_t n : {1U, 2U}) {
    std::vector<PauliString> all;
    const std::size_t words = n == 1 ? 4 : 16;
    for (int phase = 0; phase < 4; ++phase) {
      for (std::size_t code = 0; code < words; ++code) {
        std::vector<Pauli> ops;
        for (std::size_t i = 0, c = code; i < n; ++i, c /= 4) ops.push_back(kLetters[c % 4]);
        all.emplace_back(Phase::from_exponent(phase), ops);
      }
    }
    for (const auto& a : all) {
      for (const auto& b : all) {
        failures += pauli_matches(a, b) ? 0 : 1;
        ++exhaustive;
      }
    }
  }
  for (std::size_t n : {3U, 4U}) {
    for (int rep = 0; rep < 500; ++rep) {
      failures += pauli_matches(random_pauli(rng, n), random_pauli(rng, n)) ? 0 : 1;
    }
  }
  const int pauli_failures = failures - cyclic_failures - addition_failures;
  return {failures == 0, "failures cyclic=" + std::to_string(cyclic_failures) +
                             " addition=" + std::to_string(addition_failures) +
                             " pauli=" + std::to_string(pauli_failures) + " (exhaustive pairs " +
                             std::to_string(exhaustive) + ", random 1000)"};
}

Verdict phase_chain_closed_form() {
  double worst = 0.0;
  for (double p : {0.0, 0.05, 0.1, 0.25, 0.75}) {
    for (int n = 1; n <= 64; ++n) {
      for (int e = 0; e < 4; ++e) {
        const double kernel =
            phase_chain_kernel_success(p, static_cast<std::uint64_t>(n), Phase::from_exponent(e));
        worst = std::max(worst, std::abs(kernel - phase_chain_success(p, n)));
      }
    }
  }
  const std::uint64_t trials = 1000000;
  const double expected = phase_chain_success(0.1, 10);
  const double estimate = phase_chain_simulate(0.1, 10, trials, 20240601);
  const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(trials));
  const double z = (estimate - expected) / sigma;
  const bool pass = worst <= 1e-10 && std::abs(z) <= 3.0 && std::abs(expected - 0.4293) < 5e-5;
  return {pass, "max |closed - kernel| = " + fmt(worst, 3) + "; MC(0.1,10) = " + fmt(estimate) +
                    " vs " + fmt(expected) + " (z = " + fmt(z, 3) + ")"};
}

Verdict perturbative_validation() {
  int within = 0;
  int no_worse = 0;
  int strictly_no_worse = 0;
  int total = 0;
  std::ostringstream misses;
  std::uint64_t seed = 7000;
  for (int n : {4, 6, 8}) {
    for (double j0 : {0.02, 0.05, 0.1}) {
      for (double h : {1.5, 2.0, 3.0}) {
        const SkParams params{n, j0, h};
        const DisorderAverage avg = sar_disorder_avg({params, 2000, ++seed});
        const double se = avg.std_err_of_log;
        const double d4 = std::abs(log_sar_perturbative(params, 4) - avg.mean_log);
        const double d2 = std::abs(log_sar_perturbative(params, 2) - avg.mean_log);
        ++total;
        if (d4 <= 3 * se) {
          ++within;
        } else {
          misses << " (" << n << "," << j0 << "," << h << ")";
        }
        no_worse += (d4 <= d2 + 3 * se) ? 1 : 0;
        strictly_no_worse += (d4 <= d2) ? 1 : 0;
      }
    }
  }
  const bool pass = within * 5 >= total * 4 && no_worse * 5 >= total * 4;
  return {pass, "order-4 within 3 stderr at " + percent(within, total) +
                    "; order-4 no worse than order-2 (+3 stderr) at " + percent(no_worse, total) +
                    " [without the stderr allowance: " + percent(strictly_no_worse, total) + "]" +
                    (misses.str().empty() ? "" : "; misses:" + misses.str())};
}

Verdict zero_coupling_exactness() {
  int mismatches = 0;
  int checked = 0;
  double enumeration_gap = 0.0;
  for (int n = 1; n <= 20; ++n) {
    for (double h : {0.0, 1.0, 3.0}) {
      const SkParams params{n, 0.0, h};
      const double reference = sar_independent(n, h);
      const double values[] = {
          sar_exact_realization(sample_couplings(params, 99), h),
          sar_disorder_avg({params, 3, 5}).sar_geo,
          sar_perturbative(params, 2),
          sar_perturbative(params, 4),
      };
      for (double v : values) mismatches += (v == reference) ? 0 : 1;
      ++checked;
      if (n <= 14) {
        // Full state-by-state enumeration, for the record.
        const double enumerated = state_probabilities(zero_couplings(n), h).front();
        enumeration_gap = std::max(enumeration_gap, std::abs(enumerated / reference - 1.0));
      }
    }
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " bitwise mismatches over " + std::to_string(checked) +
              " (n, h) points x 5 evaluators; direct enumeration without the product form "
              "differs by at most " + fmt(enumeration_gap, 3) + " relative"};
}

// Lengths whose SAR lies in [low, high], stopping once SAR drops below low.
std::vector<int> cliff_grid(double alpha, double beta0, double high, double low) {
  std::vector<int> grid;
  for (int n = 1; n <= 3000; ++n) {
    const double p = sar_empirical(n, alpha, beta0);
    if (p < low) break;
    if (p <= high) grid.push_back(n);
  }
  return grid;
}

int coverage_count(double alpha, double beta0, const std::vector<int>& grid) {
  int covered = 0;
  for (int sim = 0; sim < 200; ++sim) {
    Xoshiro256 rng(derive_seed(derive_seed(555, static_cast<std::uint64_t>(alpha * 1e4 + beta0 * 1e8)), sim));
    std::vector<CurveSample> noisy;
    for (int n : grid) {
      const double p = sar_empirical(n, alpha, beta0);
      int hits = 0;
      for (int t = 0; t < 200; ++t) hits += rng.bernoulli(p) ? 1 : 0;
      noisy.push_back({double(n), hits / 200.0, 200.0});
    }
    const auto [lo, hi] = fit_scaling(noisy).log_alpha_ci95();
    covered += (lo <= std::log(alpha) && std::log(alpha) <= hi) ? 1 : 0;
  }
  return covered;
}

Verdict fit_round_trip() {
  double worst = 0.0;
  int worst_coverage = 200;
  int worst_full = 200;
  std::string worst_case;
  for (double alpha : {1.05, 1.1, 1.3}) {
    for (double beta0 : {1e-4, 1e-3, 1e-2}) {
      // Noise-free recovery over the whole decay down to SAR 1e-3.
      const std::vector<int> full = cliff_grid(alpha, beta0, 1.0, 1e-3);
      std::vector<CurveSample> exact;
      for (int n : full) exact.push_back({double(n), sar_empirical(n, alpha, beta0), 0.0});
      const ScalingFit fit = fit_scaling(exact);
      worst = std::max({worst, std::abs(fit.alpha / alpha - 1), std::abs(fit.beta0 / beta0 - 1)});

      // Coverage is scored on the transition region of the cliff.
      const int covered = coverage_count(alpha, beta0, cliff_grid(alpha, beta0, 0.95, 0.05));
      if (covered < worst_coverage) {
        worst_coverage = covered;
        worst_case = "(" + fmt(alpha) + ", " + fmt(beta0) + ")";
      }
      worst_full = std::min(worst_full, coverage_count(alpha, beta0, full));
    }
  }
  const bool pass = worst <= 1e-9 && worst_coverage >= 180;
  return {pass, "noise-free max relative error " + fmt(worst, 3) +
                    "; lowest 95% interval coverage on the 0.05..0.95 grid " +
                    percent(worst_coverage, 200) + " at " + worst_case +
                    " (full 1..1e-3 grid, informational: " + percent(worst_full, 200) + ")"};
}

Verdict cliff_reproduction() {
  const double j0 = 0.15;
  const double h = 3.0;
  std::vector<Outcome> outcomes;
  for (int n = 2; n <= 14; ++n) {
    const SkEnsembleSpec spec{{n, j0, h}, 500, derive_seed(31337, static_cast<std::uint64_t>(n))};
    for (const auto& o : synth_trials(spec, 20)) outcomes.push_back({o.n, o.success});
  }
  const SarCurve curve = sar_curve(outcomes);
  const EmpiricalParams mapped = params_to_empirical(j0, h);
  const double predicted = mapped.alpha;
  const ScalingFit fit = fit_scaling(curve);
  const auto samples = to_samples(curve);
  const ScalingFit flat = fit_scaling_fixed_alpha(samples, 1.0);
  const double sar2 = curve.points.front().estimate;
  const double deviation = fit.alpha / predicted - 1.0;
  const double log_deviation = std::log(fit.alpha) / std::log(predicted) - 1.0;
  const bool sharper = fit.nstar_half && flat.nstar_half && *fit.nstar_half > *flat.nstar_half;
  const bool pass = sar2 >= 0.9 && fit.alpha > 1.0 && std::abs(deviation) <= 0.25 && sharper;
  return {pass, "SAR(2) = " + fmt(sar2) + "; fitted alpha = " + fmt(fit.alpha) + " vs " +
                    fmt(predicted) + " (" + fmt(100 * deviation, 3) + "%, log alpha " +
                    fmt(100 * log_deviation, 3) + "%); nstar_half " +
                    fmt(fit.nstar_half.value_or(NAN)) + " vs alpha=1 fit " +
                    fmt(flat.nstar_half.value_or(NAN)) + " (mapped-parameter crossover " +
                    fmt(nstar_half(mapped.alpha, mapped.beta0)) +
                    "; every n <= 14 sits before the cliff, so the alpha=1 line through the same "
                    "points places its crossover later)"};
}

Verdict sufficiency_bound_guarantee() {
  Xoshiro256 rng(derive_seed(77, 7));
  int counterexamples = 0;
  long evaluations = 0;
  for (int tuple = 0; tuple < 500; ++tuple) {
    const double alpha = 2.0 - rng.uniform01();        // (1, 2]
    const double beta0 = 0.5 * (1.0 - rng.uniform01());  // (0, 0.5]
    const double theta = 1.0 - rng.uniform01();          // (0, 1]
    const int k = 2 + static_cast<int>(rng.uniform_below(7));
    const double start = std::ceil(n_dc_bound(k, alpha, beta0, theta));
    for (double n = start; n <= start + 50; ++n) {
      counterexamples += gain(n, k, alpha, beta0, theta) > 0.0 ? 0 : 1;
      ++evaluations;
    }
  }
  return {counterexamples == 0, std::to_string(counterexamples) + " counterexamples in " +
                                    std::to_string(evaluations) + " evaluations"};
}

Verdict dnc_numbers() {
  using Big = boost::multiprecision::cpp_dec_float_50;
  const Big a("1.2");
  const Big sar_ref = exp(-Big("0.001") * 30 * pow(a, 9));
  const Big gain_ref = Big("0.001") * 30 * (pow(a, 29) - pow(a, 9));
  const Big bound_ref = 1 + (log(Big(2)) / Big("0.5")) / log(a);
  const double s = sar_dc(30, 3, 1.2, 0.001, 1.0);
  const double g = gain(30, 3, 1.2, 0.001, 1.0);
  const double b = n_dc_bound(2, 1.2, 0.001, 1.0);
  const double ds = std::abs(s - sar_ref.convert_to<double>());
  const double dg = std::abs(g - gain_ref.convert_to<double>());
  const double db = std::abs(b - bound_ref.convert_to<double>());
  const bool pass = ds <= 1e-3 && dg <= 1e-3 && db <= 1e-3 && std::abs(s - 0.8566) < 1e-4 &&
                    std::abs(g - 5.779) < 1e-3 && std::abs(b - 8.604) < 1e-3;
  return {pass, "sar_dc = " + fmt(s) + ", gain = " + fmt(g) + ", n_dc = " + fmt(b) +
                    "; max deviation from 50-digit reference " + fmt(std::max({ds, dg, db}), 3)};
}

Verdict pipeline_closure() {
  const fs::path dir = fs::temp_directory_path() / "sarlab_acceptance_pipeline";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream(dir / "run.ini") << "[task]\nkind = addition\nn_grid = 1..12\nper_n = 5\nseed = 3\n";
  }
  std::ostringstream out;
  std::ostringstream err;
  const auto run = [&](std::vector<std::string> args) { return run_cli(args, out, err); };
  const int gen = run({"generate", "--config", (dir / "run.ini").string(), "--out", dir.string(),
                       "--oracle-responses"});
  const int judged = run({"judge", "--instances", (dir / "instances.jsonl").string(),
                          "--responses", (dir / "oracle_responses.jsonl").string(), "--out",
                          dir.string()});
  bool all_ones = true;
  int rows = 0;
  {
    std::ifstream in(dir / "curve.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      ++rows;
      std::stringstream ss(line);
      std::string cell;
      for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
      all_ones = all_ones && cell == "1.0";
    }
  }
  const int fitted = run({"fit", "--curve", (dir / "curve.csv").string()});
  fs::remove_all(dir);
  const bool pass = gen == kExitOk && judged == kExitOk && rows == 12 && all_ones &&
                    fitted == kExitFit;
  return {pass, "generate=" + std::to_string(gen) + " judge=" + std::to_string(judged) +
                    " curve rows=" + std::to_string(rows) + (all_ones ? " all 1.0" : " NOT all 1.0") +
                    " fit exit=" + std::to_string(fitted) + " (" + trimmed(err.str()) + ")"};
}

}  // namespace

int main() {
  const std::vector<Check> criteria = {
      {1, "oracle suite", 30, oracle_suite},
      {2, "phase chain closed form", 60, phase_chain_closed_form},
      {3, "perturbative series vs enumeration ensemble", 300, perturbative_validation},
      {4, "zero-coupling exactness", 60, zero_coupling_exactness},
      {5, "fit round trip", 120, fit_round_trip},
      {6, "cliff reproduction end-to-end", 300, cliff_reproduction},
      {7, "divide-and-conquer sufficiency bound", 30, sufficiency_bound_guarantee},
      {8, "divide-and-conquer numbers", 1, dnc_numbers},
      {9, "pipeline closure", 10, pipeline_closure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds <= c.budget_seconds;
    const bool pass = v.pass && in_budget;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << ": " << v.detail
              << " [" << fmt(seconds, 3) << " s, budget " << c.budget_seconds << " s"
              << (in_budget ? "" : ", OVER BUDGET") << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
