#include "doctest.h"
#include "ddaqc/pauli.hpp"
#include "oracles.hpp"

using namespace ddaqc;

TEST_CASE("unitary_exp agrees with a Taylor-series exponential") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator h = oracle::random_hermitian(8, rng);
    const double dt = 0.3 + 0.2 * trial;
    const Operator ref = oracle::expm(Complex(0.0, -dt) * h);
    CHECK(max_norm(unitary_exp(h, dt) - ref) < 1e-11);
    StateVector psi = StateVector::Random(8);
    psi.normalize();
    CHECK((apply_unitary_exp(h, dt, psi) - ref * psi).norm() < 1e-11);
  }
}

TEST_CASE("unitary_exp rejects non-Hermitian input") {
  Operator a = Operator::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(unitary_exp(a, 0.1), InputError);
}

TEST_CASE("trace distance reference values") {
  StateVector zero(2), one(2), plus(2);
  zero << 1, 0;
  one << 0, 1;
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  CHECK(trace_distance(projector(zero), projector(zero)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(trace_distance(projector(zero), projector(one)) == doctest::Approx(1.0));
  // Pure states: sqrt(1 - |<a|b>|^2).
  CHECK(trace_distance(projector(zero), projector(plus)) == doctest::Approx(std::sqrt(0.5)));
  const DensityMatrix mixed = Operator::Identity(2, 2) / 2.0;
  CHECK(trace_distance(mixed, projector(zero)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(trace_distance(mixed, Operator::Identity(4, 4)), InputError);
}

TEST_CASE("trace distance is a metric on random states") {
  std::mt19937_64 rng(3);
  auto random_rho = [&] {
    const Operator a = oracle::random_hermitian(4, rng);
    Operator rho = a * a.adjoint();
    return DensityMatrix(rho / rho.trace().real());
  };
  for (int k = 0; k < 20; ++k) {
    const auto a = random_rho(), b = random_rho(), c = random_rho();
    const double ab = trace_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-12);
  }
}

TEST_CASE("ground state and gap") {
  const Operator z = oracle::pauli_kron("Z");
  const auto gs = ground_state(z);
  CHECK(gs.energy == doctest::Approx(-1.0));
  REQUIRE(gs.states.size() == 1);
  CHECK(std::abs(gs.states[0](1)) == doctest::Approx(1.0));
  CHECK(spectral_gap(z).value() == doctest::Approx(2.0));
  CHECK_FALSE(spectral_gap(Operator::Identity(3, 3)).has_value());
  // Degenerate ground space: Z⊗I has two ground states.
  CHECK(ground_state(oracle::pauli_kron("ZI")).states.size() == 2);
}

TEST_CASE("Pauli string parsing and printing") {
  const auto p = PauliString::parse("-iXYZI");
  CHECK(p.size() == 4);
  CHECK(p.phase_power() == 3);
  CHECK(p.weight() == 3);
  CHECK(PauliString::parse(p.str()) == p);
  CHECK(PauliString::parse("+IIII").is_identity_up_to_phase());
  CHECK_THROWS_AS(PauliString::parse("XQ"), InputError);
}

TEST_CASE("Pauli matrices match Kronecker products") {
  for (const char* s : {"X", "Y", "Z", "XY", "YZ", "ZXYI", "IIYX"}) {
    CHECK(max_norm(PauliString::parse(s).matrix() - oracle::pauli_kron(s)) < 1e-15);
  }
}

TEST_CASE("Pauli algebra agrees with matrix algebra on random strings") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 3);
  auto random_string = [&](int n) {
    std::vector<Pauli> f;
    for (int q = 0; q < n; ++q) f.push_back(static_cast<Pauli>(pick(rng)));
    return PauliString(f, pick(rng));
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_string(4), b = random_string(4);
    const Operator ma = a.matrix(), mb = b.matrix();
    CHECK(max_norm((a * b).matrix() - ma * mb) < 1e-14);
    CHECK(max_norm(a.adjoint().matrix() - ma.adjoint()) < 1e-14);
    const bool commute = max_norm(ma * mb - mb * ma) < 1e-12;
    CHECK(a.commutes_with(b) == commute);
    StateVector psi = StateVector::Random(16);
    CHECK((a.apply(psi) - ma * psi).norm() < 1e-13);
  }
}

TEST_CASE("single-qubit constructor is 1-based from the most significant factor") {
  CHECK(PauliString::single(3, 1, Pauli::X).label() == "XII");
  CHECK(PauliString::single(3, 3, Pauli::Z).label() == "IIZ");
  CHECK_THROWS_AS(PauliString::single(3, 4, Pauli::Z), InputError);
}
