#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddaqc/encoding.hpp"
#include "ddaqc/linalg.hpp"
#include "ddaqc/models.hpp"
#include "ddaqc/noise.hpp"
#include "ddaqc/propagation.hpp"
#include "ddaqc/sequences.hpp"

namespace ddaqc {

/// A protected sequence selected by family and parameters.
struct SequenceSpec {
  SequenceFamily family = SequenceFamily::CDD;
  int p1 = 0;
  int p2 = 0;
  Pauli axis = Pauli::X;  // UDD only

  static SequenceSpec cdd(int level) { return {SequenceFamily::CDD, level, 0, Pauli::X}; }
  static SequenceSpec qdd(int m1, int m2) { return {SequenceFamily::QDD, m1, m2, Pauli::X}; }
  static SequenceSpec udd(int m, Pauli axis) { return {SequenceFamily::UDD, m, 0, axis}; }

  PulseSchedule build(double total_time, const CodeSpec& spec, QddAxes axes = {}) const;
  /// Number of base intervals, 4^l or (M1+1)(M2+1) or M+1.
  std::size_t interval_count() const;
};

/// Sweep axes are dimensionless: run times in units of 1/Δ_min, cutoffs in
/// units of Δ_min, pulse intervals in units of 1/beta.
struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Grover;
  int n_logical = 2;
  std::vector<int> marked;  // Grover; empty selects all ones

  bool include_ideal = true;
  bool include_faulty = true;
  std::vector<SequenceSpec> sequences;

  std::vector<double> t_grid;                // T * Δ_min
  std::vector<double> beta_ratios{0.2};      // beta / Δ_min
  std::vector<double> tau_grid;              // tau * beta, sweep_beta_tau only
  int tau_level = 4;                         // CDD level for sweep_beta_tau

  int realizations = 30;
  std::uint64_t master_seed = 1;
  double noise_amplitude = 0.1;  // multiplier on the unit-normalized field

  int min_steps_per_segment = 10;
  double max_step = 0.0;  // 0 selects min(0.05 / beta, 0.02 / |H|)
  int workers = 0;        // 0 selects hardware concurrency
  QddAxes qdd_axes;

  void validate() const;
  AdiabaticModel model(double total_time = 1.0) const;
  CodeSpec code() const { return CodeSpec(n_logical + 2); }
};

/// One row of results.
struct RunRecord {
  std::string algorithm;
  std::string sequence;        // ideal, faulty, CDD, UDD, QDD
  std::string level_or_order;  // "-" for ideal and faulty
  double t_over_invgap = 0.0;
  double beta_over_gap = 0.0;
  int realizations = 0;
  double d_mean = 0.0;
  double d_stderr = 0.0;  // sample standard deviation / sqrt(R) of per-realization distances
  std::uint64_t master_seed = 0;
  double wall_time = 0.0;       // seconds, summed over this row's runs
  double noise_strength = 0.0;  // mean of max_t |H_err(t)| * T over realizations
};

/// One (T, beta) grid point and the sequences to evaluate there.
struct SweepPoint {
  double t_over_invgap = 0.0;
  double beta_over_gap = 0.0;
  bool ideal = false;
  bool faulty = false;
  std::vector<SequenceSpec> sequences;
};

/// Evaluates points in parallel. All noisy rows of one point share the same R
/// noise realizations (seed = master seed, index r = 0..R-1) on a grid with
/// step min(0.05 / beta, shortest interval of any sequence at that point / 10).
/// Output order: points in order, then ideal, faulty, sequences. Results do not
/// depend on the worker count.
std::vector<RunRecord> evaluate_points(const ExperimentConfig& config, const std::vector<SweepPoint>& points);

/// Ensemble-averaged final state for one sequence at one point.
DensityMatrix ensemble_density(const ExperimentConfig& config, double t_over_invgap, double beta_over_gap,
                               RunMode mode, const SequenceSpec* sequence = nullptr);

/// Ideal, faulty and each configured sequence over t_grid for every beta ratio.
std::vector<RunRecord> distance_curve(const ExperimentConfig& config);

/// Paired CDD/QDD rows over the beta_ratios x t_grid grid.
std::vector<RunRecord> compare_cdd_qdd(const ExperimentConfig& config);

struct BetaTauSummary {
  double beta_over_gap = 0.0;
  double tau_opt = 0.0;  // in units of 1/beta
  double d_min = 0.0;
  bool interior = false;  // minimum is not at either end of the tau grid
};

struct BetaTauResult {
  std::vector<RunRecord> records;
  std::vector<BetaTauSummary> summaries;
};

/// CDD_{tau_level} with T = 4^level tau for each beta ratio and tau in tau_grid.
BetaTauResult sweep_beta_tau(const ExperimentConfig& config);

/// max_t |H_err(t)| * T, with |.| the operator norm; exact for single-qubit
/// fields because the per-qubit terms commute: |H_err| = sum_j |eps_j|.
double noise_strength_diagnostic(const NoiseRealization& realization, double total_time);

/// Minimum gap of the configured model; the unit of all run-time axes.
double config_min_gap(const ExperimentConfig& config);

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(std::istream& is);

}  // namespace ddaqc
