#pragma once

#include <optional>
#include <vector>

#include "ddaqc/encoding.hpp"
#include "ddaqc/linalg.hpp"
#include "ddaqc/models.hpp"
#include "ddaqc/noise.hpp"
#include "ddaqc/sequences.hpp"

namespace ddaqc {

/// Midpoint-sampled piecewise-constant exponentials on a uniform substep grid.
struct StepPolicy {
  double max_step = 0.02;
  int min_steps_per_segment = 10;

  void validate() const;
  /// Substep count for a window of the given length.
  int steps_for(double window) const;
};

/// max_step = min(0.05 / beta, 0.02 / energy_scale); beta <= 0 means noiseless.
StepPolicy default_step_policy(double beta, double energy_scale, int min_steps_per_segment = 10);

/// Spectral-norm bound of the encoded adiabatic Hamiltonian over the whole path.
double hamiltonian_scale(const EncodedPath& path);

enum class RunMode { Ideal, Faulty, Protected };

/// H_0(t) = H̄_ad(t) + sum_{j, mu} eps^mu_j(t) sigma^mu_j evaluated on demand.
/// Holds references; the path and realization must outlive it.
class FaultyHamiltonian {
 public:
  FaultyHamiltonian(const EncodedPath& path, const CodeSpec& spec, const NoiseRealization* noise);

  void at(double t, Operator& out) const;
  Operator at(double t) const;
  /// Error part only.
  Operator error_at(double t) const;

  const EncodedPath& path() const { return path_; }
  const NoiseRealization* noise() const { return noise_; }

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };

  void add_error(double t, Operator& out) const;

  const EncodedPath& path_;
  const NoiseRealization* noise_;
  std::vector<std::vector<Entry>> channel_entries_;
  mutable std::vector<double> scratch_;
};

/// DD-free propagator U_0(t_later, t_earlier), time-ordered product of midpoint
/// exponentials. A null realization gives ideal evolution under H̄_ad.
Operator evolve_window(double t_later, double t_earlier, const FaultyHamiltonian& h, const StepPolicy& policy);

/// Advances psi from t_earlier to t_later in place.
void advance_state(StateVector& psi, double t_later, double t_earlier, const FaultyHamiltonian& h,
                   const StepPolicy& policy);

/// Final encoded state starting from the encoded uniform superposition.
/// Ideal forbids a realization; Faulty and Protected require one; Protected
/// requires a schedule.
StateVector run_case(RunMode mode, const AdiabaticModel& model, const CodeSpec& spec,
                     const NoiseRealization* realization, const StepPolicy& policy,
                     const PulseSchedule* schedule = nullptr);

/// Same as run_case but reusing a prebuilt path.
StateVector run_case(RunMode mode, const EncodedPath& path, const CodeSpec& spec, const NoiseRealization* realization,
                     const StepPolicy& policy, const PulseSchedule* schedule = nullptr);

/// Population outside the stabilizer codespace.
double leakage(const StateVector& psi, const CodeSpec& spec);

}  // namespace ddaqc
