#include "ddaqc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/FFT>

#include "ddaqc/linalg.hpp"

namespace ddaqc {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;
// The embedding half-length covers at least this many correlation times.
constexpr double kDecayRange = 10.0;
constexpr double kNegativeTol = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InputError("noise: beta must be positive");
  if (n_qubits < 1) throw InputError("noise: need at least one qubit");
  if (!(duration > 0.0)) throw InputError("noise: duration must be positive");
  if (!(grid_step > 0.0)) throw InputError("noise: grid_step must be positive");
  if (grid_step > 0.05 / beta * (1.0 + 1e-12)) throw InputError("noise: grid_step must not exceed 0.05 / beta");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw InputError("noise: amplitude must be non-negative");
}

double autocorrelation(double tau, double beta, double amplitude) {
  if (!(beta > 0.0)) throw InputError("autocorrelation: beta must be positive");
  const double bt = beta * tau;
  return amplitude * amplitude * beta * beta / kSqrt2Pi * std::exp(-0.5 * bt * bt);
}

double spectral_density(double omega, double beta, double amplitude) {
  if (!(beta > 0.0)) throw InputError("spectral_density: beta must be positive");
  const double x = omega / beta;
  return amplitude * amplitude * beta / kSqrt2Pi * std::exp(-0.5 * x * x);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t channel) {
  return splitmix64(splitmix64(splitmix64(master) ^ realization) ^ channel);
}

NoiseRealization::NoiseRealization(double grid_step, std::vector<std::vector<double>> channels, std::uint64_t seed,
                                   std::uint64_t realization_index)
    : step_(grid_step), channels_(std::move(channels)), seed_(seed), index_(realization_index) {
  if (!(step_ > 0.0)) throw InputError("NoiseRealization: grid step must be positive");
  if (channels_.empty() || channels_.front().size() < 2) throw InputError("NoiseRealization: need >= 2 grid points");
  for (const auto& c : channels_) {
    if (c.size() != channels_.front().size()) throw InputError("NoiseRealization: ragged channels");
  }
}

double NoiseRealization::value_at(int channel, double t) const {
  const auto& v = channels_.at(static_cast<std::size_t>(channel));
  const double span = duration();
  const double slack = 1e-9 * std::max(1.0, span);
  if (t < -slack || t > span + slack) throw InputError("value_at: t outside the sampled window");
  const double x = std::clamp(t / step_, 0.0, static_cast<double>(v.size() - 1));
  const auto k = std::min(static_cast<std::size_t>(x), v.size() - 2);
  const double w = x - static_cast<double>(k);
  return (1.0 - w) * v[k] + w * v[k + 1];
}

void NoiseRealization::values_at(double t, std::vector<double>& out) const {
  const std::size_t n = grid_size();
  const double x = std::clamp(t / step_, 0.0, static_cast<double>(n - 1));
  const auto k = std::min(static_cast<std::size_t>(x), n - 2);
  const double w = x - static_cast<double>(k);
  out.resize(channels_.size());
  for (std::size_t c = 0; c < channels_.size(); ++c) out[c] = (1.0 - w) * channels_[c][k] + w * channels_[c][k + 1];
}

namespace {

struct Embedding {
  double beta = 0.0;
  double step = 0.0;
  double amplitude = 0.0;
  std::size_t grid = 0;
  std::vector<double> sqrt_weights;  // sqrt(max(lambda_k, 0) / m)
};

Embedding build_embedding(const NoiseSpec& spec, std::size_t grid, double step) {
  const auto decay_points = static_cast<std::size_t>(std::ceil(kDecayRange / (spec.beta * step)));
  std::size_t half = next_pow2(std::max(grid - 1, decay_points));
  Eigen::FFT<double> fft;
  std::vector<double> weights;
  for (int attempt = 0;; ++attempt) {
    const std::size_t m = 2 * half;
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t lag = std::min(k, m - k);
      row[k] = autocorrelation(static_cast<double>(lag) * step, spec.beta, spec.amplitude);
    }
    std::vector<std::complex<double>> eig;
    fft.fwd(eig, row);
    weights.resize(m);
    double max_w = 0.0;
    double min_w = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      weights[k] = eig[k].real();
      max_w = std::max(max_w, weights[k]);
      min_w = std::min(min_w, weights[k]);
    }
    if (min_w >= -kNegativeTol * max_w) break;
    if (attempt < 3) {
      half *= 2;
      continue;
    }
    std::cerr << "warning: circulant embedding has negative eigenvalue " << min_w << " (max " << max_w
              << "); clipping\n";
    break;
  }
  Embedding e{spec.beta, step, spec.amplitude, grid, {}};
  const double m = static_cast<double>(weights.size());
  e.sqrt_weights.reserve(weights.size());
  for (double w : weights) e.sqrt_weights.push_back(std::sqrt(std::max(w, 0.0) / m));
  return e;
}

// Ensembles reuse one spectrum; cached per thread.
const Embedding& embedding_for(const NoiseSpec& spec, std::size_t grid, double step) {
  thread_local Embedding cached;
  if (cached.grid != grid || cached.beta != spec.beta || cached.step != step || cached.amplitude != spec.amplitude) {
    cached = build_embedding(spec, grid, step);
  }
  return cached;
}

}  // namespace

NoiseRealization sample_realization(const NoiseSpec& spec, std::uint64_t realization_index) {
  spec.validate();
  const auto intervals = static_cast<std::size_t>(std::ceil(spec.duration / spec.grid_step - 1e-9));
  const std::size_t grid = std::max<std::size_t>(intervals, 1) + 1;
  const double step = spec.duration / static_cast<double>(grid - 1);
  const auto& sqrt_w = embedding_for(spec, grid, step).sqrt_weights;

  // Real and imaginary parts of one transform are independent draws: two channels per FFT.
  Eigen::FFT<double> fft;
  const std::size_t m = sqrt_w.size();
  std::vector<std::complex<double>> scaled(m);
  std::vector<std::complex<double>> out;
  const auto count = static_cast<std::size_t>(spec.channel_count());
  std::vector<std::vector<double>> channels(count);
  for (std::size_t c = 0; c < count; c += 2) {
    std::mt19937_64 rng(derive_seed(spec.seed, realization_index, static_cast<std::uint64_t>(c)));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      scaled[k] = sqrt_w[k] * std::complex<double>(re, im);
    }
    fft.fwd(out, scaled);
    auto& first = channels[c];
    first.resize(grid);
    for (std::size_t k = 0; k < grid; ++k) first[k] = out[k].real();
    if (c + 1 < count) {
      auto& second = channels[c + 1];
      second.resize(grid);
      for (std::size_t k = 0; k < grid; ++k) second[k] = out[k].imag();
    }
  }
  return NoiseRealization(step, std::move(channels), spec.seed, realization_index);
}

std::vector<PsdPoint> estimate_psd(const std::vector<NoiseRealization>& realizations, int channel, int band) {
  if (realizations.size() < 2) throw InputError("estimate_psd: need at least 2 realizations");
  if (band < 1) throw InputError("estimate_psd: band must be >= 1");
  const double step = realizations.front().grid_step();
  std::size_t n = 1;
  while (2 * n <= realizations.front().grid_size()) n *= 2;
  for (const auto& r : realizations) {
    if (r.grid_step() != step || r.grid_size() < n) throw InputError("estimate_psd: realizations differ in grid");
  }
  Eigen::FFT<double> fft;
  const std::size_t bins = n / 2 + 1;
  std::vector<double> power(bins, 0.0);
  std::vector<std::complex<double>> spectrum;
  std::vector<std::complex<double>> record(n);
  for (const auto& r : realizations) {
    const auto& v = r.channel(channel);
    for (std::size_t k = 0; k < n; ++k) record[k] = v[k];
    fft.fwd(spectrum, record);
    for (std::size_t m = 0; m < bins; ++m) power[m] += std::norm(spectrum[m]);
  }
  // E[(h / N) |sum x e^{-i w t}|^2] -> integral of C(tau) e^{i w tau}, i.e. sqrt(2 pi) S(w).
  const double scale = step / static_cast<double>(n) / kSqrt2Pi / static_cast<double>(realizations.size());
  const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
  std::vector<PsdPoint> out;
  const auto b = static_cast<std::size_t>(band);
  for (std::size_t start = 0; start + b <= bins; start += b) {
    double w = 0.0;
    double p = 0.0;
    for (std::size_t m = start; m < start + b; ++m) {
      w += static_cast<double>(m) * d_omega;
      p += power[m] * scale;
    }
    out.push_back({w / static_cast<double>(b), p / static_cast<double>(b)});
  }
  return out;
}

double psd_integral(const std::vector<PsdPoint>& psd) {
  if (psd.size() < 2) throw InputError("psd_integral: need at least 2 points");
  if (psd[0].omega != 0.0) throw InputError("psd_integral: expects an unbanded estimate starting at omega = 0");
  const double d_omega = psd[1].omega - psd[0].omega;
  double total = 0.0;
  for (std::size_t k = 0; k < psd.size(); ++k) {
    total += (k == 0 ? 1.0 : 2.0) * psd[k].density;
  }
  return total * d_omega / kSqrt2Pi;
}

void write_realization(std::ostream& os, const NoiseRealization& r) {
  static constexpr char kAxes[] = {'x', 'y', 'z'};
  os << "# seed=" << r.seed() << " realization=" << r.realization_index() << "\n";
  os << "t";
  for (int c = 0; c < r.channel_count(); ++c) os << " eps_" << (c / 3 + 1) << kAxes[c % 3];
  os << "\n" << std::setprecision(17);
  for (std::size_t k = 0; k < r.grid_size(); ++k) {
    os << static_cast<double>(k) * r.grid_step();
    for (int c = 0; c < r.channel_count(); ++c) os << ' ' << r.channel(c)[k];
    os << "\n";
  }
}

}  // namespace ddaqc

namespace ddaqc {

std::vector<NoiseCheck> validate_noise(const NoiseValidationOptions& o) {
  if (o.realizations < 2) throw InputError("validate_noise: need at least 2 realizations");
  if (!(o.beta > 0.0)) throw InputError("validate_noise: beta must be positive");
  NoiseSpec spec;
  spec.beta = o.beta;
  spec.n_qubits = 1;
  spec.grid_step = 0.05 / o.beta;
  spec.duration = 4096.0 * spec.grid_step;
  spec.seed = o.seed;
  spec.amplitude = o.amplitude;

  std::vector<NoiseRealization> rs;
  rs.reserve(static_cast<std::size_t>(o.realizations));
  for (int r = 0; r < o.realizations; ++r) rs.push_back(sample_realization(spec, static_cast<std::uint64_t>(r)));

  std::vector<NoiseCheck> checks;
  auto relative = [](const std::string& name, double measured, double expected, double tol) {
    return NoiseCheck{name, measured, expected, tol, std::abs(measured - expected) <= tol * std::abs(expected)};
  };

  // Channel-averaged unbanded periodogram, then banded against the exact curve.
  std::vector<PsdPoint> psd = estimate_psd(rs, 0, 1);
  for (int c = 1; c < spec.channel_count(); ++c) {
    const auto more = estimate_psd(rs, c, 1);
    for (std::size_t k = 0; k < psd.size(); ++k) psd[k].density += more[k].density;
  }
  for (auto& p : psd) p.density /= spec.channel_count();
  const auto band = static_cast<std::size_t>(std::max(1, o.band));
  double worst = 0.0;
  double worst_omega = 0.0;
  for (std::size_t start = 0; start + band <= psd.size(); start += band) {
    double est = 0.0;
    double ref = 0.0;
    for (std::size_t m = start; m < start + band; ++m) {
      est += psd[m].density;
      ref += spectral_density(psd[m].omega, o.beta);
    }
    if (psd[start].omega > 2.0 * o.beta) break;
    const double err = std::abs(est - ref) / ref;
    if (err > worst) {
      worst = err;
      worst_omega = psd[start].omega;
    }
  }
  checks.push_back({"psd_max_rel_error(omega<=2beta, worst at " + std::to_string(worst_omega) + ")", worst, 0.0,
                    o.psd_tolerance, worst <= o.psd_tolerance});

  const double c0 = autocorrelation(0.0, o.beta);
  double sum = 0.0;
  double sq = 0.0;
  double sq_first = 0.0;
  double sq_second = 0.0;
  std::size_t count = 0;
  const std::size_t half = rs.front().grid_size() / 2;
  for (const auto& r : rs) {
    for (int c = 0; c < r.channel_count(); ++c) {
      const auto& v = r.channel(c);
      for (std::size_t k = 0; k < v.size(); ++k) {
        sum += v[k];
        sq += v[k] * v[k];
        (k < half ? sq_first : sq_second) += v[k] * v[k];
        ++count;
      }
    }
  }
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  checks.push_back(relative("variance", var, c0, o.variance_tolerance));
  const double mean_tol = 0.05 * std::sqrt(c0);
  checks.push_back({"mean", mean, 0.0, mean_tol, std::abs(mean) <= mean_tol});
  const double per_half = static_cast<double>(rs.size() * 3);
  const double v1 = sq_first / (per_half * static_cast<double>(half));
  const double v2 = sq_second / (per_half * static_cast<double>(rs.front().grid_size() - half));
  checks.push_back(relative("stationarity(second/first half variance)", v2 / v1, 1.0, o.variance_tolerance));
  return checks;
}

}  // namespace ddaqc
