#include "ddaqc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace ddaqc {

PulseSchedule SequenceSpec::build(double total_time, const CodeSpec& spec, QddAxes axes) const {
  switch (family) {
    case SequenceFamily::CDD: return cdd_schedule(p1, total_time, spec);
    case SequenceFamily::UDD: return udd_schedule(p1, axis, total_time, spec);
    case SequenceFamily::QDD: return qdd_schedule(p1, p2, total_time, spec, axes);
    case SequenceFamily::None: return free_schedule(spec.n_physical, total_time);
  }
  throw InputError("SequenceSpec: unknown family");
}

std::size_t SequenceSpec::interval_count() const {
  switch (family) {
    case SequenceFamily::CDD: return std::size_t{1} << (2 * p1);
    case SequenceFamily::UDD: return static_cast<std::size_t>(p1 + 1);
    case SequenceFamily::QDD: return static_cast<std::size_t>((p1 + 1) * (p2 + 1));
    case SequenceFamily::None: return 1;
  }
  return 1;
}

namespace {

void require_increasing(const std::vector<double>& grid, const char* name) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || !std::isfinite(grid[k])) throw InputError(std::string(name) + ": values must be positive");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw InputError(std::string(name) + ": must be strictly increasing");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_logical < 1) throw InputError("n_logical: must be >= 1");
  (void)code();
  (void)model();
  if (realizations < 1) throw InputError("realizations: must be >= 1");
  require_increasing(t_grid, "t_grid");
  require_increasing(tau_grid, "tau_grid");
  for (double b : beta_ratios) {
    if (!(b > 0.0) || !std::isfinite(b)) throw InputError("beta_ratio: must be positive");
  }
  if (tau_level < 0) throw InputError("tau_level: must be >= 0");
  if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude)) throw InputError("noise_amplitude: must be >= 0");
  if (min_steps_per_segment < 1) throw InputError("min_steps_per_segment: must be >= 1");
  if (max_step < 0.0) throw InputError("max_step: must be >= 0");
  if (workers < 0) throw InputError("workers: must be >= 0");
  for (const auto& s : sequences) {
    if (s.p1 < 0 || s.p2 < 0) throw InputError("sequences: levels and orders must be >= 0");
    if (s.family == SequenceFamily::CDD && s.p1 > 7) throw InputError("sequences: CDD level above 7");
  }
}

AdiabaticModel ExperimentConfig::model(double total_time) const {
  return algorithm == Algorithm::Grover ? AdiabaticModel::grover(n_logical, marked, total_time)
                                        : AdiabaticModel::two_sat(n_logical, total_time);
}

double config_min_gap(const ExperimentConfig& config) { return minimum_gap(config.model()); }

double noise_strength_diagnostic(const NoiseRealization& realization, double total_time) {
  double worst = 0.0;
  const int qubits = realization.channel_count() / 3;
  for (std::size_t k = 0; k < realization.grid_size(); ++k) {
    double norm = 0.0;
    for (int q = 0; q < qubits; ++q) {
      const double x = realization.channel(3 * q)[k];
      const double y = realization.channel(3 * q + 1)[k];
      const double z = realization.channel(3 * q + 2)[k];
      norm += std::sqrt(x * x + y * y + z * z);
    }
    worst = std::max(worst, norm);
  }
  return worst * total_time;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  unsigned n_threads = workers > 0 ? static_cast<unsigned>(workers) : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (n_threads <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

enum class RowKind { Ideal, Faulty, Protected };

struct Row {
  RowKind kind;
  std::size_t schedule = 0;  // index into PreparedPoint::schedules
};

struct PreparedPoint {
  SweepPoint point;
  double total_time = 0.0;
  double beta = 0.0;
  std::unique_ptr<EncodedPath> path;
  StepPolicy policy;
  double noise_step = 0.0;
  std::vector<PulseSchedule> schedules;
  std::vector<Row> rows;
};

PreparedPoint prepare(const ExperimentConfig& config, const SweepPoint& point, double min_gap, const CodeSpec& code) {
  PreparedPoint p;
  p.point = point;
  p.total_time = point.t_over_invgap / min_gap;
  p.beta = point.beta_over_gap * min_gap;
  if (!(p.total_time > 0.0) || !(p.beta > 0.0)) throw InputError("sweep point: T and beta must be positive");
  p.path = std::make_unique<EncodedPath>(config.model(p.total_time), code);
  p.policy = default_step_policy(p.beta, hamiltonian_scale(*p.path), config.min_steps_per_segment);
  if (config.max_step > 0.0) p.policy.max_step = std::min(p.policy.max_step, config.max_step);

  double shortest = p.total_time;
  if (point.ideal) p.rows.push_back({RowKind::Ideal});
  if (point.faulty) p.rows.push_back({RowKind::Faulty});
  for (const auto& seq : point.sequences) {
    p.schedules.push_back(seq.build(p.total_time, code, config.qdd_axes));
    shortest = std::min(shortest, p.schedules.back().shortest_interval());
    p.rows.push_back({RowKind::Protected, p.schedules.size() - 1});
  }
  p.noise_step = std::min(0.05 / p.beta, shortest / 10.0);
  return p;
}

struct Task {
  std::size_t point;
  int realization;  // -1 for the noiseless ideal run
};

std::string with_context(const ExperimentConfig& config, const Task& task, const std::string& what) {
  std::ostringstream os;
  os << what << " [seed " << config.master_seed << ", realization " << task.realization << "]";
  return os.str();
}

}  // namespace

std::vector<RunRecord> evaluate_points(const ExperimentConfig& config, const std::vector<SweepPoint>& points) {
  config.validate();
  if (points.empty()) return {};
  const CodeSpec code = config.code();
  const double min_gap = config_min_gap(config);
  const auto r_count = static_cast<std::size_t>(config.realizations);

  std::vector<PreparedPoint> prepared;
  prepared.reserve(points.size());
  for (const auto& pt : points) prepared.push_back(prepare(config, pt, min_gap, code));

  std::vector<Task> tasks;
  for (std::size_t p = 0; p < prepared.size(); ++p) {
    if (prepared[p].point.ideal) tasks.push_back({p, -1});
    const bool noisy = prepared[p].point.faulty || !prepared[p].point.sequences.empty();
    if (noisy) {
      for (std::size_t r = 0; r < r_count; ++r) tasks.push_back({p, static_cast<int>(r)});
    }
  }

  // states[p][row][r]; ideal rows use slot 0.
  std::vector<std::vector<std::vector<StateVector>>> states(prepared.size());
  std::vector<std::vector<std::vector<double>>> seconds(prepared.size());
  std::vector<std::vector<double>> strength(prepared.size(), std::vector<double>(r_count, 0.0));
  for (std::size_t p = 0; p < prepared.size(); ++p) {
    states[p].assign(prepared[p].rows.size(), std::vector<StateVector>(r_count));
    seconds[p].assign(prepared[p].rows.size(), std::vector<double>(r_count, 0.0));
  }

  parallel_for(tasks.size(), config.workers, [&](std::size_t i) {
    const Task& task = tasks[i];
    const PreparedPoint& pp = prepared[task.point];
    try {
      if (task.realization < 0) {
        const auto start = std::chrono::steady_clock::now();
        states[task.point][0][0] = run_case(RunMode::Ideal, *pp.path, code, nullptr, pp.policy);
        seconds[task.point][0][0] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return;
      }
      const auto r = static_cast<std::size_t>(task.realization);
      NoiseSpec ns;
      ns.beta = pp.beta;
      ns.n_qubits = code.n_physical;
      ns.duration = pp.total_time;
      ns.grid_step = pp.noise_step;
      ns.seed = config.master_seed;
      ns.amplitude = config.noise_amplitude;
      const NoiseRealization noise = sample_realization(ns, r);
      strength[task.point][r] = noise_strength_diagnostic(noise, pp.total_time);
      for (std::size_t row = 0; row < pp.rows.size(); ++row) {
        const Row& rw = pp.rows[row];
        if (rw.kind == RowKind::Ideal) continue;
        const auto start = std::chrono::steady_clock::now();
        states[task.point][row][r] =
            rw.kind == RowKind::Faulty
                ? run_case(RunMode::Faulty, *pp.path, code, &noise, pp.policy)
                : run_case(RunMode::Protected, *pp.path, code, &noise, pp.policy, &pp.schedules[rw.schedule]);
        seconds[task.point][row][r] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
    } catch (const NumericalError& e) {
      throw NumericalError(with_context(config, task, e.what()));
    } catch (const InputError& e) {
      throw InputError(with_context(config, task, e.what()));
    }
  });

  const AdiabaticModel base = config.model();
  const StateVector target = target_state(base, code);
  const DensityMatrix target_rho = projector(target);
  std::vector<RunRecord> out;
  for (std::size_t p = 0; p < prepared.size(); ++p) {
    const PreparedPoint& pp = prepared[p];
    double mean_strength = 0.0;
    for (double s : strength[p]) mean_strength += s;
    mean_strength /= static_cast<double>(r_count);
    for (std::size_t row = 0; row < pp.rows.size(); ++row) {
      const Row& rw = pp.rows[row];
      RunRecord rec;
      rec.algorithm = to_string(config.algorithm);
      rec.t_over_invgap = pp.point.t_over_invgap;
      rec.beta_over_gap = pp.point.beta_over_gap;
      rec.master_seed = config.master_seed;
      if (rw.kind == RowKind::Ideal) {
        rec.sequence = "ideal";
        rec.level_or_order = "-";
        rec.realizations = 1;
        rec.d_mean = trace_distance(projector(states[p][row][0]), target_rho);
        rec.wall_time = seconds[p][row][0];
        out.push_back(rec);
        continue;
      }
      if (rw.kind == RowKind::Faulty) {
        rec.sequence = "faulty";
        rec.level_or_order = "-";
      } else {
        const PulseSchedule& s = pp.schedules[rw.schedule];
        rec.sequence = to_string(s.family);
        rec.level_or_order = s.parameter_label();
      }
      rec.realizations = config.realizations;
      rec.noise_strength = mean_strength;
      const auto dim = target.size();
      DensityMatrix rho = DensityMatrix::Zero(dim, dim);
      std::vector<double> per;
      per.reserve(r_count);
      for (std::size_t r = 0; r < r_count; ++r) {
        const DensityMatrix proj = projector(states[p][row][r]);
        rho += proj;
        per.push_back(trace_distance(proj, target_rho));
        rec.wall_time += seconds[p][row][r];
      }
      rho /= static_cast<double>(r_count);
      rec.d_mean = trace_distance(rho, target_rho);
      if (r_count > 1) {
        double mean = 0.0;
        for (double d : per) mean += d;
        mean /= static_cast<double>(r_count);
        double var = 0.0;
        for (double d : per) var += (d - mean) * (d - mean);
        var /= static_cast<double>(r_count - 1);
        rec.d_stderr = std::sqrt(var / static_cast<double>(r_count));
      }
      out.push_back(rec);
    }
  }
  return out;
}

DensityMatrix ensemble_density(const ExperimentConfig& config, double t_over_invgap, double beta_over_gap,
                               RunMode mode, const SequenceSpec* sequence) {
  config.validate();
  if (config.realizations < 1) throw InputError("ensemble_density: need R >= 1");
  if (mode == RunMode::Protected && sequence == nullptr) throw InputError("ensemble_density: protected mode needs a sequence");
  const CodeSpec code = config.code();
  const double min_gap = config_min_gap(config);
  SweepPoint pt{t_over_invgap, beta_over_gap, mode == RunMode::Ideal, mode == RunMode::Faulty, {}};
  if (mode == RunMode::Protected) pt.sequences.push_back(*sequence);
  const PreparedPoint pp = prepare(config, pt, min_gap, code);
  const auto dim = code.dimension();
  if (mode == RunMode::Ideal) return projector(run_case(RunMode::Ideal, *pp.path, code, nullptr, pp.policy));

  const auto r_count = static_cast<std::size_t>(config.realizations);
  std::vector<DensityMatrix> parts(r_count);
  parallel_for(r_count, config.workers, [&](std::size_t r) {
    NoiseSpec ns{pp.beta, code.n_physical, pp.total_time, pp.noise_step, config.master_seed, config.noise_amplitude};
    const NoiseRealization noise = sample_realization(ns, r);
    const StateVector psi = mode == RunMode::Faulty
                                ? run_case(RunMode::Faulty, *pp.path, code, &noise, pp.policy)
                                : run_case(RunMode::Protected, *pp.path, code, &noise, pp.policy, &pp.schedules.front());
    parts[r] = projector(psi);
  });
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for (const auto& part : parts) rho += part;
  return rho / static_cast<double>(r_count);
}

std::vector<RunRecord> distance_curve(const ExperimentConfig& config) {
  config.validate();
  std::vector<SweepPoint> points;
  for (double beta : config.beta_ratios) {
    for (double t : config.t_grid) {
      points.push_back({t, beta, config.include_ideal, config.include_faulty, config.sequences});
    }
  }
  return evaluate_points(config, points);
}

std::vector<RunRecord> compare_cdd_qdd(const ExperimentConfig& config) {
  config.validate();
  bool have_cdd = false;
  bool have_qdd = false;
  for (const auto& s : config.sequences) {
    have_cdd |= s.family == SequenceFamily::CDD;
    have_qdd |= s.family == SequenceFamily::QDD;
    if (s.family == SequenceFamily::CDD) {
      const bool matched = std::any_of(config.sequences.begin(), config.sequences.end(), [&](const SequenceSpec& q) {
        return q.family == SequenceFamily::QDD && q.interval_count() == s.interval_count();
      });
      if (!matched) {
        throw InputError("compare: CDD" + std::to_string(s.p1) + " has no QDD partner with " +
                         std::to_string(s.interval_count()) + " intervals");
      }
    }
  }
  if (!have_cdd || !have_qdd) throw InputError("compare: need at least one CDD and one QDD sequence");
  std::vector<SweepPoint> points;
  for (double beta : config.beta_ratios) {
    for (double t : config.t_grid) points.push_back({t, beta, false, false, config.sequences});
  }
  return evaluate_points(config, points);
}

BetaTauResult sweep_beta_tau(const ExperimentConfig& config) {
  config.validate();
  const double pulses = std::pow(4.0, config.tau_level);
  std::vector<SweepPoint> points;
  for (double beta : config.beta_ratios) {
    for (double tau : config.tau_grid) {
      points.push_back({pulses * tau / beta, beta, false, false, {SequenceSpec::cdd(config.tau_level)}});
    }
  }
  BetaTauResult result;
  result.records = evaluate_points(config, points);
  const std::size_t per_beta = config.tau_grid.size();
  for (std::size_t b = 0; b < config.beta_ratios.size() && per_beta > 0; ++b) {
    const auto first = result.records.begin() + static_cast<std::ptrdiff_t>(b * per_beta);
    const auto best = std::min_element(first, first + static_cast<std::ptrdiff_t>(per_beta),
                                       [](const RunRecord& a, const RunRecord& c) { return a.d_mean < c.d_mean; });
    const auto idx = static_cast<std::size_t>(best - first);
    result.summaries.push_back({config.beta_ratios[b], config.tau_grid[idx], best->d_mean,
                                per_beta >= 3 && idx > 0 && idx + 1 < per_beta});
  }
  return result;
}

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "algorithm,sequence,level_or_order,T_over_invgap,beta_over_gap,R,D_mean,D_stderr,master_seed\n";
  std::ostringstream line;
  for (const auto& r : records) {
    line.str("");
    line << std::setprecision(17) << r.algorithm << ',' << r.sequence << ',' << r.level_or_order << ','
         << r.t_over_invgap << ',' << r.beta_over_gap << ',' << r.realizations << ',' << r.d_mean << ','
         << r.d_stderr << ',' << r.master_seed << '\n';
    os << line.str();
  }
}

std::vector<RunRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("read_records_csv: empty input");
  std::vector<RunRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) throw InputError("read_records_csv: expected 9 columns in '" + line + "'");
    RunRecord r;
    r.algorithm = cells[0];
    r.sequence = cells[1];
    r.level_or_order = cells[2];
    r.t_over_invgap = std::stod(cells[3]);
    r.beta_over_gap = std::stod(cells[4]);
    r.realizations = std::stoi(cells[5]);
    r.d_mean = std::stod(cells[6]);
    r.d_stderr = std::stod(cells[7]);
    r.master_seed = std::stoull(cells[8]);
    out.push_back(r);
  }
  return out;
}

}  // namespace ddaqc
