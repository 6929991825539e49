#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <string>
#include <vector>

#include "ddaqc/linalg.hpp"

namespace ddaqc {

/// Parameters of the classical Gaussian bath. The field variance is
/// amplitude^2 * beta^2 / sqrt(2 pi).
struct NoiseSpec {
  double beta = 1.0;
  int n_qubits = 4;
  double duration = 1.0;
  double grid_step = 0.05;
  std::uint64_t seed = 0;
  double amplitude = 1.0;

  int channel_count() const { return 3 * n_qubits; }
  void validate() const;
};

/// Stationary autocorrelation <eps(t) eps(t + tau)> = amplitude^2 beta^2 / sqrt(2 pi) exp(-(beta tau)^2 / 2),
/// the inverse transform of S(omega) = beta / sqrt(2 pi) exp(-(omega / beta)^2 / 2)
/// under the symmetric 1/sqrt(2 pi) Fourier convention.
double autocorrelation(double tau, double beta, double amplitude = 1.0);

/// Gaussian spectral density in the same convention.
double spectral_density(double omega, double beta, double amplitude = 1.0);

/// Counter-based seed derivation (splitmix64 over the three words), so every
/// (master seed, realization, channel) triple owns an independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t channel);

/// One sampled trajectory eps^mu_j(t) per channel on a uniform grid over [0, T].
/// Channel index is 3 * (qubit - 1) + axis with axis x = 0, y = 1, z = 2.
class NoiseRealization {
 public:
  NoiseRealization(double grid_step, std::vector<std::vector<double>> channels, std::uint64_t seed,
                   std::uint64_t realization_index);

  double grid_step() const { return step_; }
  std::size_t grid_size() const { return channels_.empty() ? 0 : channels_.front().size(); }
  double duration() const { return step_ * static_cast<double>(grid_size() - 1); }
  int channel_count() const { return static_cast<int>(channels_.size()); }
  const std::vector<double>& channel(int c) const { return channels_.at(static_cast<std::size_t>(c)); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t realization_index() const { return index_; }

  /// Linear interpolation between neighbouring grid samples.
  double value_at(int channel, double t) const;
  /// All channels at time t; out must have channel_count() slots.
  void values_at(double t, std::vector<double>& out) const;

 private:
  double step_;
  std::vector<std::vector<double>> channels_;
  std::uint64_t seed_;
  std::uint64_t index_;
};

/// Circulant-embedding sampler. The covariance is embedded on a doubled,
/// reflected grid long enough for the Gaussian to decay; negative embedding
/// eigenvalues beyond 1e-10 of the largest trigger a larger embedding, then a
/// clip with a warning on stderr.
NoiseRealization sample_realization(const NoiseSpec& spec, std::uint64_t realization_index);

struct PsdPoint {
  double omega;
  double density;
};

/// Periodogram averaged over realizations in the 1/sqrt(2 pi) convention, on
/// non-negative frequencies. `band` adjacent bins are averaged together. Uses the
/// largest power-of-two prefix of each record.
std::vector<PsdPoint> estimate_psd(const std::vector<NoiseRealization>& realizations, int channel, int band = 1);

/// (1 / sqrt(2 pi)) * integral of an unbanded one-sided estimate mirrored to
/// negative frequencies; equals C(0) for a consistent estimate.
double psd_integral(const std::vector<PsdPoint>& psd);

/// Columnar text dump: a header, then `t ch0 ch1 ...` per grid point with
/// channels ordered qubit-major and x, y, z within a qubit.
void write_realization(std::ostream& os, const NoiseRealization& r);

struct NoiseCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // relative, or absolute when expected is 0
  bool passed = false;
};

struct NoiseValidationOptions {
  double beta = 1.0;
  int realizations = 500;
  std::uint64_t seed = 1;
  /// Scales the generated field; the reference curves keep amplitude 1.
  double amplitude = 1.0;
  double psd_tolerance = 0.10;
  double variance_tolerance = 0.05;
  int band = 2;
};

/// PSD for omega <= 2 beta, sample variance, mean and first/second-half
/// stationarity of one-qubit realizations on a 4096-step grid of step 0.05/beta.
std::vector<NoiseCheck> validate_noise(const NoiseValidationOptions& options);

}  // namespace ddaqc
