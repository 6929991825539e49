#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ddaqc/config.hpp"

using namespace ddaqc;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;
constexpr int kStatistical = 3;

struct Overrides {
  std::string config_path;
  std::string algorithm;
  std::vector<double> t_grid;
  std::vector<double> beta_ratios;
  std::vector<double> tau_grid;
  std::vector<std::string> sequences;
  std::optional<int> tau_level;
  std::optional<int> realizations;
  std::optional<std::uint64_t> seed;
  std::optional<double> amplitude;
  std::optional<double> max_step;
  std::optional<int> min_steps;
  std::optional<int> workers;
  std::string output;
  bool no_ideal = false;
  bool no_faulty = false;
};

void add_experiment_flags(CLI::App* cmd, Overrides& o, bool with_tau) {
  cmd->add_option("-c,--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--algorithm", o.algorithm, "grover or 2sat");
  cmd->add_option("--t-grid", o.t_grid, "run times in units of 1/gap")->delimiter(',');
  cmd->add_option("--beta-ratio", o.beta_ratios, "cutoff over gap")->delimiter(',');
  cmd->add_option("--sequence", o.sequences, "CDD:L, UDD:M[:AXIS], QDD:M1[:M2]; repeatable");
  if (with_tau) {
    cmd->add_option("--tau-grid", o.tau_grid, "pulse intervals in units of 1/beta")->delimiter(',');
    cmd->add_option("--tau-level", o.tau_level, "CDD level of the tau sweep");
  }
  cmd->add_option("-R,--realizations", o.realizations, "noise realizations per point");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--amplitude", o.amplitude, "noise amplitude multiplier");
  cmd->add_option("--max-step", o.max_step, "largest integration substep");
  cmd->add_option("--min-steps", o.min_steps, "minimum substeps per pulse interval");
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  cmd->add_option("-o,--output", o.output, "CSV output path");
  cmd->add_flag("--no-ideal", o.no_ideal, "omit the ideal rows");
  cmd->add_flag("--no-faulty", o.no_faulty, "omit the unprotected rows");
}

RunConfig resolve(const Overrides& o) {
  RunConfig rc = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  ExperimentConfig& c = rc.experiment;
  if (!o.algorithm.empty()) c.algorithm = parse_algorithm(o.algorithm);
  if (!o.t_grid.empty()) c.t_grid = o.t_grid;
  if (!o.beta_ratios.empty()) c.beta_ratios = o.beta_ratios;
  if (!o.tau_grid.empty()) c.tau_grid = o.tau_grid;
  if (!o.sequences.empty()) {
    c.sequences.clear();
    for (const auto& s : o.sequences) c.sequences.push_back(parse_sequence(s));
  }
  if (o.tau_level) c.tau_level = *o.tau_level;
  if (o.realizations) c.realizations = *o.realizations;
  if (o.seed) c.master_seed = *o.seed;
  if (o.amplitude) c.noise_amplitude = *o.amplitude;
  if (o.max_step) c.max_step = *o.max_step;
  if (o.min_steps) c.min_steps_per_segment = *o.min_steps;
  if (o.workers) c.workers = *o.workers;
  if (o.no_ideal) c.include_ideal = false;
  if (o.no_faulty) c.include_faulty = false;
  if (!o.output.empty()) rc.output = o.output;
  if (rc.output.empty()) rc.output = "results.csv";
  c.validate();
  return rc;
}

void write_outputs(const RunConfig& rc, const std::string& command, const std::vector<RunRecord>& records,
                   double seconds) {
  std::ofstream csv(rc.output);
  if (!csv) throw InputError("output: cannot write '" + rc.output + "'");
  write_records_csv(csv, records);
  ManifestInfo info;
  info.command = command;
  info.wall_time = seconds;
  info.min_gap = config_min_gap(rc.experiment);
  info.records = records;
  std::ofstream manifest(rc.output + ".manifest.json");
  if (!manifest) throw InputError("output: cannot write manifest for '" + rc.output + "'");
  manifest << manifest_json(rc, info) << "\n";
  std::cerr << "wrote " << records.size() << " rows to " << rc.output << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamically decoupled adiabatic evolution on a stabilizer code"};
  app.require_subcommand(1);

  Overrides run_o, sweep_o, cmp_o;
  auto* run = app.add_subcommand("run", "distance vs run time for ideal, faulty and protected evolution");
  add_experiment_flags(run, run_o, false);
  auto* sweep = app.add_subcommand("sweep-beta-tau", "CDD distance vs pulse interval for several cutoffs");
  add_experiment_flags(sweep, sweep_o, true);
  auto* cmp = app.add_subcommand("compare", "CDD vs QDD at equal run times");
  add_experiment_flags(cmp, cmp_o, false);

  std::string gap_alg = "grover";
  int gap_n = 2;
  auto* gap = app.add_subcommand("gap", "minimum spectral gap of a model");
  gap->add_option("--algorithm", gap_alg, "grover or 2sat");
  gap->add_option("--n-logical", gap_n, "logical qubits");

  NoiseValidationOptions vn;
  auto* validate = app.add_subcommand("validate-noise", "statistical checks of the noise generator");
  validate->add_option("--beta", vn.beta, "spectral cutoff");
  validate->add_option("-R,--realizations", vn.realizations, "realizations (>= 2)");
  validate->add_option("--seed", vn.seed, "master seed");
  validate->add_option("--amplitude", vn.amplitude, "generated amplitude (references stay at 1)");
  validate->add_option("--band", vn.band, "adjacent periodogram bins averaged");

  std::string family = "CDD";
  int level = 1, m1 = 1, m2 = 1;
  double total_time = 1.0;
  std::string axis = "X", qdd_inner = "X", qdd_outer = "Z";
  int n_phys = 4;
  auto* dump = app.add_subcommand("schedule-dump", "print a pulse schedule");
  dump->add_option("--family", family, "CDD, UDD or QDD");
  dump->add_option("--level,--order", level, "CDD level or UDD order");
  dump->add_option("--m1", m1, "QDD inner order");
  dump->add_option("--m2", m2, "QDD outer order");
  dump->add_option("--axis", axis, "UDD pulse axis");
  dump->add_option("--qdd-inner", qdd_inner, "QDD inner axis");
  dump->add_option("--qdd-outer", qdd_outer, "QDD outer axis");
  dump->add_option("-T,--total-time", total_time, "sequence duration");
  dump->add_option("--n-physical", n_phys, "physical qubits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*run) {
      const RunConfig rc = resolve(run_o);
      write_outputs(rc, "run", distance_curve(rc.experiment), seconds_since(start));
    } else if (*cmp) {
      const RunConfig rc = resolve(cmp_o);
      write_outputs(rc, "compare", compare_cdd_qdd(rc.experiment), seconds_since(start));
    } else if (*sweep) {
      const RunConfig rc = resolve(sweep_o);
      const BetaTauResult res = sweep_beta_tau(rc.experiment);
      write_outputs(rc, "sweep-beta-tau", res.records, seconds_since(start));
      std::cout << "beta_over_gap,tau_opt,D_min,interior\n";
      for (const auto& s : res.summaries) {
        std::cout << s.beta_over_gap << ',' << s.tau_opt << ',' << s.d_min << ',' << (s.interior ? "yes" : "no") << "\n";
      }
    } else if (*gap) {
      const AdiabaticModel model = parse_algorithm(gap_alg) == Algorithm::Grover
                                       ? AdiabaticModel::grover(gap_n, {}, 1.0)
                                       : AdiabaticModel::two_sat(gap_n, 1.0);
      const GapProfile g = gap_scan(model, 201);
      std::cout << std::setprecision(12) << "min_gap " << g.min_gap << "\nargmin_s " << g.argmin << "\n";
    } else if (*validate) {
      if (vn.realizations < 2) {
        std::cerr << "validate-noise: --realizations must be at least 2\n" << validate->help();
        return kUsage;
      }
      bool ok = true;
      for (const auto& c : validate_noise(vn)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << c.measured
                  << " expected=" << c.expected << " tolerance=" << c.tolerance << "\n";
        ok = ok && c.passed;
      }
      return ok ? kOk : kStatistical;
    } else if (*dump) {
      const CodeSpec spec(n_phys);
      const SequenceFamily f = parse_family(family);
      PulseSchedule s;
      switch (f) {
        case SequenceFamily::CDD: s = cdd_schedule(level, total_time, spec); break;
        case SequenceFamily::UDD:
          s = udd_schedule(level, parse_axis(axis, "--axis"), total_time, spec);
          break;
        case SequenceFamily::QDD: {
          QddAxes axes{parse_axis(qdd_inner, "--qdd-inner"), parse_axis(qdd_outer, "--qdd-outer")};
          s = qdd_schedule(m1, m2, total_time, spec, axes);
          break;
        }
        case SequenceFamily::None: s = free_schedule(n_phys, total_time); break;
      }
      std::ostringstream text;
      write_schedule(text, s);
      std::istringstream back(text.str());
      std::ostringstream again;
      write_schedule(again, read_schedule(back));
      if (again.str() != text.str()) throw NumericalError("schedule-dump: export does not round-trip");
      std::cout << text.str();
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
