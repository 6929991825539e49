#include "doctest.h"
#include "ddaqc/noise.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

using namespace ddaqc;

TEST_CASE("autocorrelation and spectral density form a Fourier pair") {
  // S(w) = (1/sqrt(2 pi)) ∫ C(tau) e^{i w tau} d tau by trapezoidal quadrature.
  for (double beta : {0.5, 1.0, 3.0}) {
    for (double w : {0.0, 0.7 * beta, 2.0 * beta}) {
      const double h = 1e-3 / beta;
      double sum = 0.0;
      for (double tau = -12.0 / beta; tau <= 12.0 / beta; tau += h) sum += autocorrelation(tau, beta) * std::cos(w * tau);
      const double numeric = sum * h / std::sqrt(2 * std::numbers::pi);
      CHECK(numeric == doctest::Approx(spectral_density(w, beta)).epsilon(1e-6));
    }
  }
  CHECK(autocorrelation(0.0, 1.0) == doctest::Approx(1 / std::sqrt(2 * std::numbers::pi)));
  CHECK(autocorrelation(0.0, 2.0, 3.0) == doctest::Approx(9 * 4 / std::sqrt(2 * std::numbers::pi)));
}

TEST_CASE("seed derivation separates realizations and channels") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 50; ++r)
    for (std::uint64_t c = 0; c < 12; ++c) seen.insert(derive_seed(1, r, c));
  CHECK(seen.size() == 600);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("realizations are reproducible in isolation") {
  NoiseSpec spec;
  spec.beta = 1.0;
  spec.duration = 5.0;
  spec.grid_step = 0.05;
  spec.seed = 9;
  const auto a = sample_realization(spec, 4);
  const auto b = sample_realization(spec, 4);
  const auto c = sample_realization(spec, 5);
  CHECK(a.channel(3) == b.channel(3));
  CHECK(a.channel(3) != c.channel(3));
  CHECK(a.channel_count() == 12);
  CHECK(a.duration() == doctest::Approx(5.0));
}

TEST_CASE("interpolation and window checks") {
  NoiseSpec spec;
  spec.duration = 2.0;
  spec.grid_step = 0.05;
  const auto r = sample_realization(spec, 0);
  const double h = r.grid_step();
  const auto& ch = r.channel(2);
  CHECK(r.value_at(2, 3 * h) == doctest::Approx(ch[3]));
  CHECK(r.value_at(2, 3.25 * h) == doctest::Approx(0.75 * ch[3] + 0.25 * ch[4]));
  CHECK_THROWS_AS(r.value_at(2, 2.5), InputError);
  CHECK_THROWS_AS(r.value_at(2, -0.1), InputError);
  std::vector<double> all(12);
  r.values_at(0.5, all);
  CHECK(all[2] == doctest::Approx(r.value_at(2, 0.5)));
}

TEST_CASE("noise spec validation") {
  NoiseSpec spec;
  spec.beta = 2.0;
  spec.grid_step = 0.05;  // above 0.05 / beta
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec.grid_step = 0.02;
  CHECK_NOTHROW(spec.validate());
  spec.beta = -1.0;
  CHECK_THROWS_AS(spec.validate(), InputError);
}

TEST_CASE("amplitude scales the field linearly") {
  NoiseSpec spec;
  spec.duration = 3.0;
  spec.grid_step = 0.05;
  const auto a = sample_realization(spec, 1);
  spec.amplitude = 0.1;
  const auto b = sample_realization(spec, 1);
  for (std::size_t k = 0; k < a.grid_size(); k += 7) CHECK(b.channel(0)[k] == doctest::Approx(0.1 * a.channel(0)[k]));
}

TEST_CASE("periodogram integral recovers the variance") {
  NoiseSpec spec;
  spec.n_qubits = 1;
  spec.duration = 0.05 * 1024;
  spec.grid_step = 0.05;
  std::vector<NoiseRealization> rs;
  for (int r = 0; r < 100; ++r) rs.push_back(sample_realization(spec, static_cast<std::uint64_t>(r)));
  const auto psd = estimate_psd(rs, 0);
  CHECK(psd_integral(psd) == doctest::Approx(autocorrelation(0.0, 1.0)).epsilon(0.05));
  CHECK_THROWS_AS(estimate_psd({rs.front()}, 0), InputError);
  CHECK_THROWS_AS(psd_integral(estimate_psd(rs, 0, 2)), InputError);
}

TEST_CASE("reduced statistical validation passes and the doubled amplitude fails") {
  NoiseValidationOptions o;
  o.realizations = 150;
  o.psd_tolerance = 0.2;
  for (const auto& c : validate_noise(o)) CHECK_MESSAGE(c.passed, c.name << " measured " << c.measured);
  o.amplitude = 2.0;
  bool any_failed = false;
  for (const auto& c : validate_noise(o)) any_failed = any_failed || !c.passed;
  CHECK(any_failed);
  o.realizations = 1;
  CHECK_THROWS_AS(validate_noise(o), InputError);
}

TEST_CASE("realization dump format") {
  NoiseSpec spec;
  spec.n_qubits = 1;
  spec.duration = 0.1;
  spec.grid_step = 0.05;
  spec.seed = 3;
  std::ostringstream os;
  write_realization(os, sample_realization(spec, 2));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "# seed=3 realization=2");
  std::getline(is, line);
  CHECK(line == "t eps_1x eps_1y eps_1z");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
}
