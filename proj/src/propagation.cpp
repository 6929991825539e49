#include "ddaqc/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ddaqc {

void StepPolicy::validate() const {
  if (!(max_step > 0.0) || !std::isfinite(max_step)) throw InputError("step policy: max_step must be positive");
  if (min_steps_per_segment < 1) throw InputError("step policy: min_steps_per_segment must be >= 1");
}

int StepPolicy::steps_for(double window) const {
  const double raw = std::ceil(window / max_step - 1e-9);
  return std::max(min_steps_per_segment, static_cast<int>(std::max(raw, 1.0)));
}

StepPolicy default_step_policy(double beta, double energy_scale, int min_steps_per_segment) {
  StepPolicy p;
  p.max_step = 0.02 / std::max(energy_scale, 1e-12);
  if (beta > 0.0) p.max_step = std::min(p.max_step, 0.05 / beta);
  p.min_steps_per_segment = min_steps_per_segment;
  p.validate();
  return p;
}

double hamiltonian_scale(const EncodedPath& path) {
  // Affine in f in [0, 1], so the norm is bounded by the larger endpoint norm.
  auto spectral_norm = [](const Operator& h) {
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Operator>(h, Eigen::EigenvaluesOnly).eigenvalues();
    return ev.cwiseAbs().maxCoeff();
  };
  return std::max({spectral_norm(path.beginning()), spectral_norm(path.problem()), 1.0});
}

FaultyHamiltonian::FaultyHamiltonian(const EncodedPath& path, const CodeSpec& spec, const NoiseRealization* noise)
    : path_(path), noise_(noise) {
  if (noise_ == nullptr) return;
  const auto errors = single_qubit_errors(spec);
  if (noise_->channel_count() != static_cast<int>(errors.size())) {
    throw InputError("FaultyHamiltonian: realization has " + std::to_string(noise_->channel_count()) +
                     " channels, code needs " + std::to_string(errors.size()));
  }
  channel_entries_.resize(errors.size());
  for (std::size_t c = 0; c < errors.size(); ++c) {
    const Operator m = errors[c].matrix();
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      for (Eigen::Index row = 0; row < m.rows(); ++row) {
        if (m(row, col) != Complex(0.0, 0.0)) channel_entries_[c].push_back({row, col, m(row, col)});
      }
    }
  }
  scratch_.resize(errors.size());
}

void FaultyHamiltonian::add_error(double t, Operator& out) const {
  if (noise_ == nullptr) return;
  noise_->values_at(t, scratch_);
  for (std::size_t c = 0; c < channel_entries_.size(); ++c) {
    const double eps = scratch_[c];
    for (const auto& e : channel_entries_[c]) out(e.row, e.col) += eps * e.value;
  }
}

void FaultyHamiltonian::at(double t, Operator& out) const {
  path_.at(t, out);
  add_error(t, out);
}

Operator FaultyHamiltonian::at(double t) const {
  Operator out;
  at(t, out);
  return out;
}

Operator FaultyHamiltonian::error_at(double t) const {
  const auto dim = path_.beginning().rows();
  Operator out = Operator::Zero(dim, dim);
  add_error(t, out);
  return out;
}

Operator evolve_window(double t_later, double t_earlier, const FaultyHamiltonian& h, const StepPolicy& policy) {
  policy.validate();
  if (t_later < t_earlier) throw InputError("evolve_window: expected t_later >= t_earlier");
  const auto dim = h.path().beginning().rows();
  Operator u = Operator::Identity(dim, dim);
  const double window = t_later - t_earlier;
  if (window == 0.0) return u;
  const int steps = policy.steps_for(window);
  const double dt = window / steps;
  Operator hm;
  for (int k = 0; k < steps; ++k) {
    h.at(t_earlier + (k + 0.5) * dt, hm);
    u = unitary_exp(hm, dt) * u;
  }
  if (unitarity_defect(u) > 1e-8) throw NumericalError("evolve_window: propagator lost unitarity");
  return u;
}

void advance_state(StateVector& psi, double t_later, double t_earlier, const FaultyHamiltonian& h,
                   const StepPolicy& policy) {
  if (t_later < t_earlier) throw InputError("advance_state: expected t_later >= t_earlier");
  const double window = t_later - t_earlier;
  if (window == 0.0) return;
  const int steps = policy.steps_for(window);
  const double dt = window / steps;
  Operator hm;
  for (int k = 0; k < steps; ++k) {
    h.at(t_earlier + (k + 0.5) * dt, hm);
    psi = apply_unitary_exp(hm, dt, psi);
  }
}

StateVector run_case(RunMode mode, const EncodedPath& path, const CodeSpec& spec, const NoiseRealization* realization,
                     const StepPolicy& policy, const PulseSchedule* schedule) {
  policy.validate();
  if (mode == RunMode::Ideal && realization != nullptr) throw InputError("run_case: ideal mode takes no noise");
  if (mode != RunMode::Ideal && realization == nullptr) throw InputError("run_case: noisy modes need a realization");
  if (mode == RunMode::Protected && schedule == nullptr) throw InputError("run_case: protected mode needs a schedule");
  const double total = path.model().total_time;
  if (realization != nullptr && realization->duration() < total * (1.0 - 1e-12)) {
    throw InputError("run_case: noise realization is shorter than the run");
  }

  const FaultyHamiltonian h(path, spec, realization);
  StateVector psi = encoded_uniform_superposition(spec);
  if (mode != RunMode::Protected) {
    advance_state(psi, total, 0.0, h, policy);
  } else {
    if (std::abs(schedule->total_time - total) > 1e-12 * std::max(1.0, total)) {
      throw InputError("run_case: schedule duration differs from the model's total time");
    }
    std::size_t next_event = 0;
    const auto& b = schedule->boundaries;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      advance_state(psi, b[k + 1], b[k], h, policy);
      if (next_event < schedule->events.size() && schedule->events[next_event].after_segment == k) {
        psi = schedule->events[next_event].pulse.apply(psi);
        ++next_event;
      }
    }
    psi = schedule->frame_correction.apply(psi);
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw NumericalError("run_case: state norm drifted to " + std::to_string(norm));
  }
  return psi / norm;
}

StateVector run_case(RunMode mode, const AdiabaticModel& model, const CodeSpec& spec,
                     const NoiseRealization* realization, const StepPolicy& policy, const PulseSchedule* schedule) {
  const EncodedPath path(model, spec);
  return run_case(mode, path, spec, realization, policy, schedule);
}

double leakage(const StateVector& psi, const CodeSpec& spec) {
  const StateVector inside = codespace_projector(spec) * psi;
  return std::max(0.0, psi.squaredNorm() - inside.squaredNorm());
}

}  // namespace ddaqc
