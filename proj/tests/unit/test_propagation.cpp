#include "doctest.h"
#include "ddaqc/propagation.hpp"
#include "oracles.hpp"

using namespace ddaqc;

namespace {

NoiseRealization make_noise(double beta, double duration, double amplitude, std::uint64_t index = 0) {
  NoiseSpec spec;
  spec.beta = beta;
  spec.duration = duration;
  spec.grid_step = 0.05 / beta;
  spec.seed = 5;
  spec.amplitude = amplitude;
  return sample_realization(spec, index);
}

}  // namespace

TEST_CASE("step policy") {
  const auto p = default_step_policy(2.0, 4.0, 10);
  CHECK(p.max_step == doctest::Approx(0.005));
  CHECK(default_step_policy(0.1, 1.0).max_step == doctest::Approx(0.02));
  CHECK(p.steps_for(1e-6) == 10);
  CHECK(p.steps_for(1.0) == 200);
  StepPolicy bad;
  bad.max_step = 0.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("error Hamiltonian is the sum of channel fields times single-qubit Paulis") {
  const CodeSpec spec(4);
  const EncodedPath path(AdiabaticModel::grover(2, {}, 3.0), spec);
  const auto noise = make_noise(1.0, 3.0, 1.0);
  const FaultyHamiltonian h(path, spec, &noise);
  const auto errors = single_qubit_errors(spec);
  const double t = 1.37;
  Operator expected = Operator::Zero(16, 16);
  for (std::size_t c = 0; c < errors.size(); ++c)
    expected += noise.value_at(static_cast<int>(c), t) * oracle::pauli_kron(errors[c].label());
  CHECK(max_norm(h.error_at(t) - expected) < 1e-13);
  CHECK(max_norm(h.at(t) - path.at(t) - expected) < 1e-13);
}

TEST_CASE("ideal run equals the windowed propagator and stays in the codespace") {
  const CodeSpec spec(4);
  const auto model = AdiabaticModel::two_sat(2, 4.0);
  const EncodedPath path(model, spec);
  const StepPolicy policy = default_step_policy(0.0, hamiltonian_scale(path));
  const StateVector psi = run_case(RunMode::Ideal, model, spec, nullptr, policy);
  const FaultyHamiltonian h(path, spec, nullptr);
  const StateVector ref = evolve_window(4.0, 0.0, h, policy) * encoded_uniform_superposition(spec);
  CHECK((psi - ref).norm() < 1e-10);
  CHECK(leakage(psi, spec) < 1e-12);
}

TEST_CASE("midpoint stepping converges at second order") {
  const CodeSpec spec(4);
  const auto model = AdiabaticModel::grover(2, {}, 6.0);
  const auto noise = make_noise(0.5, 6.0, 0.3);
  auto run = [&](double step) {
    StepPolicy p;
    p.max_step = step;
    p.min_steps_per_segment = 1;
    return run_case(RunMode::Faulty, model, spec, &noise, p);
  };
  const StateVector fine = run(0.0025);
  const double e1 = (run(0.04) - fine).norm();
  const double e2 = (run(0.02) - fine).norm();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("pulses are invisible without noise") {
  const CodeSpec spec(4);
  for (auto model : {AdiabaticModel::grover(2, {}, 5.0), AdiabaticModel::two_sat(2, 5.0)}) {
    const EncodedPath path(model, spec);
    const auto silent = make_noise(1.0, 5.0, 0.0);
    StepPolicy policy;
    policy.max_step = 0.002;
    const StateVector ideal = run_case(RunMode::Ideal, path, spec, nullptr, policy);
    for (const auto& s : {cdd_schedule(2, 5.0, spec), udd_schedule(3, Pauli::Y, 5.0, spec), qdd_schedule(2, 3, 5.0, spec)}) {
      const StateVector protected_state = run_case(RunMode::Protected, path, spec, &silent, policy, &s);
      // Substep grids differ between the runs; the residual is discretization error.
      CHECK_MESSAGE(trace_distance(projector(ideal), projector(protected_state)) < 1e-5, s.label());
    }
  }
}

TEST_CASE("protected run equals the toggled product of noisy segments") {
  const CodeSpec spec(4);
  const auto model = AdiabaticModel::grover(2, {}, 2.0);
  const EncodedPath path(model, spec);
  const auto noise = make_noise(2.0, 2.0, 0.5);
  const StepPolicy policy = default_step_policy(2.0, hamiltonian_scale(path));
  const auto s = cdd_schedule(2, 2.0, spec);
  const FaultyHamiltonian h(path, spec, &noise);
  const Operator u = toggled_propagator(s, [&](double b, double a) { return evolve_window(b, a, h, policy); });
  const StateVector expected = u * encoded_uniform_superposition(spec);
  const StateVector got = run_case(RunMode::Protected, path, spec, &noise, policy, &s);
  CHECK((got - expected).norm() < 1e-10);
}

TEST_CASE("run_case argument checks") {
  const CodeSpec spec(4);
  const auto model = AdiabaticModel::grover(2, {}, 2.0);
  const auto noise = make_noise(1.0, 2.0, 1.0);
  const auto shortnoise = make_noise(1.0, 1.0, 1.0);
  const StepPolicy p;
  const auto s = cdd_schedule(1, 2.0, spec);
  const auto wrong_length = cdd_schedule(1, 3.0, spec);
  CHECK_THROWS_AS(run_case(RunMode::Ideal, model, spec, &noise, p), InputError);
  CHECK_THROWS_AS(run_case(RunMode::Faulty, model, spec, nullptr, p), InputError);
  CHECK_THROWS_AS(run_case(RunMode::Protected, model, spec, &noise, p), InputError);
  CHECK_THROWS_AS(run_case(RunMode::Faulty, model, spec, &shortnoise, p), InputError);
  CHECK_THROWS_AS(run_case(RunMode::Protected, model, spec, &noise, p, &wrong_length), InputError);
  CHECK_NOTHROW(run_case(RunMode::Protected, model, spec, &noise, p, &s));
}
