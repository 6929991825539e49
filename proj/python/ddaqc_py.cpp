#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddaqc/config.hpp"

namespace py = pybind11;
using namespace ddaqc;

namespace {

// Configurations arrive as dicts and go through the same JSON parser as the CLI.
ExperimentConfig to_config(const py::dict& config) {
  const auto text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
  return parse_config(text).experiment;
}

py::dict record_dict(const RunRecord& r) {
  py::dict d;
  d["algorithm"] = r.algorithm;
  d["sequence"] = r.sequence;
  d["level_or_order"] = r.level_or_order;
  d["T_over_invgap"] = r.t_over_invgap;
  d["beta_over_gap"] = r.beta_over_gap;
  d["R"] = r.realizations;
  d["D_mean"] = r.d_mean;
  d["D_stderr"] = r.d_stderr;
  d["master_seed"] = r.master_seed;
  d["wall_time"] = r.wall_time;
  d["noise_strength"] = r.noise_strength;
  return d;
}

py::list record_list(const std::vector<RunRecord>& records) {
  py::list out;
  for (const auto& r : records) out.append(record_dict(r));
  return out;
}

CodeSpec code_for(int n_logical) { return CodeSpec(n_logical + 2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("autocorrelation", &autocorrelation, py::arg("tau"), py::arg("beta"), py::arg("amplitude") = 1.0);
  m.def("spectral_density", &spectral_density, py::arg("omega"), py::arg("beta"), py::arg("amplitude") = 1.0);

  m.def(
      "sample_noise",
      [](double beta, double duration, int n_qubits, std::uint64_t seed, std::uint64_t realization, double amplitude,
         double grid_step) {
        NoiseSpec spec;
        spec.beta = beta;
        spec.duration = duration;
        spec.n_qubits = n_qubits;
        spec.seed = seed;
        spec.amplitude = amplitude;
        spec.grid_step = grid_step > 0.0 ? grid_step : 0.05 / beta;
        const auto r = sample_realization(spec, realization);
        py::array_t<double> out({static_cast<py::ssize_t>(r.channel_count()), static_cast<py::ssize_t>(r.grid_size())});
        auto view = out.mutable_unchecked<2>();
        for (int c = 0; c < r.channel_count(); ++c) {
          const auto& v = r.channel(c);
          for (std::size_t k = 0; k < v.size(); ++k) view(c, static_cast<py::ssize_t>(k)) = v[k];
        }
        return py::make_tuple(r.grid_step(), out);
      },
      py::arg("beta"), py::arg("duration"), py::arg("n_qubits") = 4, py::arg("seed") = 1, py::arg("realization") = 0,
      py::arg("amplitude") = 1.0, py::arg("grid_step") = 0.0,
      "Returns (grid_step, array[channel, sample]); channels are ordered (qubit, axis).");

  m.def(
      "validate_noise",
      [](double beta, int realizations, std::uint64_t seed, double amplitude) {
        NoiseValidationOptions o;
        o.beta = beta;
        o.realizations = realizations;
        o.seed = seed;
        o.amplitude = amplitude;
        py::list out;
        for (const auto& c : ddaqc::validate_noise(o)) {
          py::dict d;
          d["name"] = c.name;
          d["measured"] = c.measured;
          d["expected"] = c.expected;
          d["tolerance"] = c.tolerance;
          d["passed"] = c.passed;
          out.append(d);
        }
        return out;
      },
      py::arg("beta") = 1.0, py::arg("realizations") = 500, py::arg("seed") = 1, py::arg("amplitude") = 1.0);

  m.def(
      "gap_scan",
      [](const std::string& algorithm, int n_logical, int grid_points) {
        const Algorithm a = parse_algorithm(algorithm);
        const auto model = a == Algorithm::Grover ? AdiabaticModel::grover(n_logical, {}, 1.0)
                                                  : AdiabaticModel::two_sat(n_logical, 1.0);
        const auto p = ddaqc::gap_scan(model, grid_points);
        return py::make_tuple(p.min_gap, p.argmin, p.samples);
      },
      py::arg("algorithm"), py::arg("n_logical") = 2, py::arg("grid_points") = 201,
      "Returns (min_gap, argmin_s, [(s, gap), ...]).");

  m.def("uhrig_times", &uhrig_times, py::arg("m"), py::arg("total_time"));

  py::class_<PulseSchedule>(m, "PulseSchedule")
      .def_property_readonly("label", &PulseSchedule::label)
      .def_readonly("total_time", &PulseSchedule::total_time)
      .def_readonly("boundaries", &PulseSchedule::boundaries)
      .def_property_readonly("segment_count", &PulseSchedule::segment_count)
      .def_property_readonly("shortest_interval", &PulseSchedule::shortest_interval)
      .def_property_readonly("events",
                             [](const PulseSchedule& s) {
                               std::vector<std::pair<double, std::string>> out;
                               for (const auto& e : s.events) out.emplace_back(e.time, e.pulse.str());
                               return out;
                             })
      .def_property_readonly("frame_correction", [](const PulseSchedule& s) { return s.frame_correction.str(); })
      .def("__repr__", [](const PulseSchedule& s) { return "<PulseSchedule " + s.label() + ">"; });

  m.def(
      "cdd_schedule", [](int level, double total_time, int n_logical) { return ddaqc::cdd_schedule(level, total_time, code_for(n_logical)); },
      py::arg("level"), py::arg("total_time"), py::arg("n_logical") = 2);
  m.def(
      "udd_schedule",
      [](int order, const std::string& axis, double total_time, int n_logical) {
        return ddaqc::udd_schedule(order, parse_axis(axis, "axis"), total_time, code_for(n_logical));
      },
      py::arg("order"), py::arg("axis"), py::arg("total_time"), py::arg("n_logical") = 2);
  m.def(
      "qdd_schedule",
      [](int m1, int m2, double total_time, int n_logical) { return ddaqc::qdd_schedule(m1, m2, total_time, code_for(n_logical)); },
      py::arg("m1"), py::arg("m2"), py::arg("total_time"), py::arg("n_logical") = 2);

  m.def(
      "distance_curve",
      [](const py::dict& config) {
        const auto c = to_config(config);
        std::vector<RunRecord> rec;
        {
          py::gil_scoped_release release;
          rec = ddaqc::distance_curve(c);
        }
        return record_list(rec);
      },
      py::arg("config"), "Runs ideal, faulty and protected rows; config keys follow the JSON config file.");
  m.def(
      "compare_cdd_qdd",
      [](const py::dict& config) {
        const auto c = to_config(config);
        std::vector<RunRecord> rec;
        {
          py::gil_scoped_release release;
          rec = ddaqc::compare_cdd_qdd(c);
        }
        return record_list(rec);
      },
      py::arg("config"));
  m.def(
      "sweep_beta_tau",
      [](const py::dict& config) {
        const auto c = to_config(config);
        BetaTauResult res;
        {
          py::gil_scoped_release release;
          res = ddaqc::sweep_beta_tau(c);
        }
        py::list summaries;
        for (const auto& s : res.summaries) {
          py::dict d;
          d["beta_over_gap"] = s.beta_over_gap;
          d["tau_opt"] = s.tau_opt;
          d["d_min"] = s.d_min;
          d["interior"] = s.interior;
          summaries.append(d);
        }
        return py::make_tuple(record_list(res.records), summaries);
      },
      py::arg("config"), "Returns (records, per-beta summaries).");
}
