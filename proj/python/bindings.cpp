#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "sarlab/cli.hpp"
#include "sarlab/dnc.hpp"
#include "sarlab/error.hpp"
#include "sarlab/pauli.hpp"
#include "sarlab/phase_chain.hpp"
#include "sarlab/scaling.hpp"
#include "sarlab/scoring.hpp"
#include "sarlab/sk_model.hpp"
#include "sarlab/tasks.hpp"

namespace py = pybind11;
using namespace sarlab;

namespace {

std::vector<CurveSample> make_samples(const std::vector<double>& n, const std::vector<double>& sar,
                                      const std::vector<double>& trials) {
  if (n.size() != sar.size() || (!trials.empty() && trials.size() != n.size())) {
    throw ValidationError("n, sar and trials must have equal lengths");
  }
  std::vector<CurveSample> samples;
  for (std::size_t i = 0; i < n.size(); ++i) {
    samples.push_back({n[i], sar[i], trials.empty() ? 0.0 : trials[i]});
  }
  return samples;
}

FitOptions make_options(const std::string& extremes, bool mle_refine) {
  FitOptions options;
  if (extremes == "clip") {
    options.extremes = ExtremePolicy::clip;
  } else if (extremes != "exclude") {
    throw ParameterError("extremes must be 'exclude' or 'clip'");
  }
  options.mle_refine = mle_refine;
  return options;
}

}  // namespace

PYBIND11_MODULE(_sarlab, m) {
  m.doc() = "Sequence accuracy analysis: tasks, scoring, scaling fits, spin-glass model, planning.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  // Tasks
  py::class_<TaskInstance>(m, "TaskInstance")
      .def_property_readonly("kind", [](const TaskInstance& t) { return std::string(to_string(t.kind)); })
      .def_readonly("n", &TaskInstance::n)
      .def_readonly("seed", &TaskInstance::seed)
      .def_readonly("input", &TaskInstance::input)
      .def_readonly("expected", &TaskInstance::expected)
      .def("__repr__", [](const TaskInstance& t) {
        return "<TaskInstance " + std::string(to_string(t.kind)) + " n=" + std::to_string(t.n) +
               " input='" + t.input + "'>";
      });

  m.def(
      "generate",
      [](const std::string& kind, int n, std::uint64_t seed, int alphabet_size) {
        TaskParams params;
        params.alphabet_size = alphabet_size;
        return generate(parse_task_kind(kind), n, seed, params);
      },
      py::arg("kind"), py::arg("n"), py::arg("seed"), py::arg("alphabet_size") = 0,
      "Deterministic task instance of the given kind and size.");
  m.def("solve", &solve, py::arg("instance"));
  m.def("cyclic_oracle", &cyclic_oracle, py::arg("input"), py::arg("alphabet_size"));
  m.def("addition_oracle", &addition_oracle, py::arg("a"), py::arg("b"));
  m.def(
      "pauli_multiply",
      [](const std::string& lhs, const std::string& rhs) {
        return mul_strings(PauliString::parse(lhs), PauliString::parse(rhs)).str();
      },
      py::arg("lhs"), py::arg("rhs"), "Product of two canonical Pauli strings such as '+1 XZ'.");

  // Scoring
  m.def("parse_response", [](const std::string& raw, const std::string& kind) {
    return parse_response(raw, parse_task_kind(kind));
  }, py::arg("raw"), py::arg("kind"));
  m.def(
      "judge",
      [](const TaskInstance& instance, const std::string& raw) {
        const TrialRecord r = judge(instance, "python", raw);
        py::dict out;
        out["parsed"] = r.parsed;
        out["strict_correct"] = r.strict_correct;
        out["relaxed_correct"] = r.relaxed_correct;
        return out;
      },
      py::arg("instance"), py::arg("response"));
  m.def("wilson_interval", [](std::int64_t successes, std::int64_t trials) {
    return wilson_interval(successes, trials);
  }, py::arg("successes"), py::arg("trials"));

  // Scaling law
  m.def("sar_empirical", &sar_empirical, py::arg("n"), py::arg("alpha"), py::arg("beta0"));
  m.def("nstar_closed", &nstar_closed, py::arg("alpha"), py::arg("beta0"));
  m.def("nstar_half", &nstar_half, py::arg("alpha"), py::arg("beta0"));

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("alpha", &ScalingFit::alpha)
      .def_readonly("beta0", &ScalingFit::beta0)
      .def_readonly("nstar_closed", &ScalingFit::nstar_closed)
      .def_readonly("nstar_half", &ScalingFit::nstar_half)
      .def_readonly("residual", &ScalingFit::residual)
      .def_readonly("points_used", &ScalingFit::points_used)
      .def_readonly("log_alpha_se", &ScalingFit::log_alpha_se)
      .def_readonly("log_beta0_se", &ScalingFit::log_beta0_se)
      .def("log_alpha_ci95", &ScalingFit::log_alpha_ci95)
      .def("__repr__", [](const ScalingFit& f) {
        std::ostringstream out;
        out << "<ScalingFit alpha=" << f.alpha << " beta0=" << f.beta0
            << " points_used=" << f.points_used << ">";
        return out.str();
      });

  m.def(
      "fit_scaling",
      [](const std::vector<double>& n, const std::vector<double>& sar,
         const std::vector<double>& trials, const std::string& extremes, bool mle_refine) {
        const auto samples = make_samples(n, sar, trials);
        return fit_scaling(samples, make_options(extremes, mle_refine));
      },
      py::arg("n"), py::arg("sar"), py::arg("trials") = std::vector<double>{},
      py::arg("extremes") = "exclude", py::arg("mle_refine") = false,
      "Fit SAR(n) = exp(-beta0 n alpha^(n-1)); trials enable inverse-variance weighting.");

  // Spin-glass model
  m.def(
      "sar_disorder_avg",
      [](int n, double j0, double h, int realizations, std::uint64_t seed, unsigned threads) {
        const DisorderAverage d = sar_disorder_avg({{n, j0, h}, realizations, seed}, threads);
        py::dict out;
        out["sar_geo"] = d.sar_geo;
        out["sar_arith"] = d.sar_arith;
        out["mean_log"] = d.mean_log;
        out["std_err_of_log"] = d.std_err_of_log;
        out["realizations"] = d.realizations;
        return out;
      },
      py::arg("n"), py::arg("j0"), py::arg("h"), py::arg("realizations"), py::arg("seed"),
      py::arg("threads") = 1u);
  m.def("sar_independent", &sar_independent, py::arg("n"), py::arg("h"));
  m.def("sar_perturbative", [](int n, double j0, double h, int order) {
    return sar_perturbative({n, j0, h}, order);
  }, py::arg("n"), py::arg("j0"), py::arg("h"), py::arg("order"));
  m.def("params_to_empirical", [](double j0, double h) {
    const EmpiricalParams p = params_to_empirical(j0, h);
    return std::make_pair(p.alpha, p.beta0);
  }, py::arg("j0"), py::arg("h"), "Returns (alpha, beta0).");
  m.def("empirical_to_params", [](double alpha, double beta0) {
    const FieldParams p = empirical_to_params(alpha, beta0);
    return std::make_pair(p.j0, p.h);
  }, py::arg("alpha"), py::arg("beta0"), "Returns (j0, h).");
  m.def(
      "synth_trials",
      [](int n, double j0, double h, int realizations, std::uint64_t seed, int trials) {
        std::int64_t successes = 0;
        std::int64_t total = 0;
        for (const auto& o : synth_trials({{n, j0, h}, realizations, seed}, trials)) {
          successes += o.success ? 1 : 0;
          ++total;
        }
        return std::make_pair(successes, total);
      },
      py::arg("n"), py::arg("j0"), py::arg("h"), py::arg("realizations"), py::arg("seed"),
      py::arg("trials_per_realization"), "Returns (successes, trials).");

  m.def("phase_chain_success", &phase_chain_success, py::arg("p_phi"), py::arg("n"));

  // Divide and conquer
  m.def("sar_dc", &sar_dc, py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("beta0"),
        py::arg("theta"));
  m.def("gain", &gain, py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("beta0"),
        py::arg("theta"));
  m.def("n_dc_bound", &n_dc_bound, py::arg("k"), py::arg("alpha"), py::arg("beta0"),
        py::arg("theta"));
  m.def("nstar_extended", &nstar_extended, py::arg("k"), py::arg("alpha"), py::arg("beta0"));

  // Command line entry point; returns (exit_code, stdout, stderr).
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
