#include "ddaqc/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ddaqc {

std::string to_string(Algorithm a) { return a == Algorithm::Grover ? "grover" : "2sat"; }

Algorithm parse_algorithm(const std::string& name) {
  if (name == "grover" || name == "Grover") return Algorithm::Grover;
  if (name == "2sat" || name == "2SAT" || name == "twosat") return Algorithm::TwoSat;
  throw InputError("unknown algorithm '" + name + "' (expected grover or 2sat)");
}

double grover_schedule(double t, double total_time, double n_states) {
  if (!(total_time > 0.0)) throw InputError("grover_schedule: total time must be positive");
  if (t < 0.0 || t > total_time) throw InputError("grover_schedule: t outside [0, T]");
  if (n_states < 2.0) throw InputError("grover_schedule: N must be >= 2");
  const double angle = (1.0 - 2.0 * t / total_time) * std::acos(1.0 / std::sqrt(n_states));
  return 0.5 - std::tan(angle) / (2.0 * std::sqrt(n_states - 1.0));
}

std::vector<LogicalPauliTerm> grover_logical_hamiltonian(double f, int n_logical, const std::vector<int>& marked) {
  if (n_logical < 1) throw InputError("grover_logical_hamiltonian: need at least one logical qubit");
  if (static_cast<int>(marked.size()) != n_logical) {
    throw InputError("grover_logical_hamiltonian: marked state length must equal n_logical");
  }
  const int n_states = 1 << n_logical;
  const double inv_n = 1.0 / n_states;
  std::vector<LogicalPauliTerm> terms;
  terms.push_back({1.0 - inv_n, PauliString::identity(n_logical)});
  // |u><u| = prod (I + X_j)/2 and |m><m| = prod (I + (-1)^{m_j} Z_j)/2.
  for (int subset = 1; subset < n_states; ++subset) {
    std::vector<Pauli> xs(static_cast<std::size_t>(n_logical), Pauli::I);
    std::vector<Pauli> zs(static_cast<std::size_t>(n_logical), Pauli::I);
    int parity = 0;
    for (int j = 0; j < n_logical; ++j) {
      if ((subset >> (n_logical - 1 - j)) & 1) {
        xs[static_cast<std::size_t>(j)] = Pauli::X;
        zs[static_cast<std::size_t>(j)] = Pauli::Z;
        parity ^= marked[static_cast<std::size_t>(j)] & 1;
      }
    }
    terms.push_back({-(1.0 - f) * inv_n, PauliString(xs)});
    terms.push_back({-f * inv_n * (parity ? -1.0 : 1.0), PauliString(zs)});
  }
  return combine_terms(terms);
}

std::vector<LogicalPauliTerm> twosat_logical_hamiltonian(double s, int n_logical) {
  if (n_logical < 2) throw InputError("twosat_logical_hamiltonian: ring needs at least two qubits");
  std::vector<LogicalPauliTerm> terms;
  for (int j = 1; j <= n_logical; ++j) {
    terms.push_back({1.0 - s, PauliString::identity(n_logical)});
    terms.push_back({-(1.0 - s), PauliString::single(n_logical, j, Pauli::X)});
  }
  for (int j = 1; j <= n_logical; ++j) {
    const int next = j % n_logical + 1;
    terms.push_back({0.5 * s, PauliString::identity(n_logical)});
    terms.push_back({-0.5 * s, PauliString::single(n_logical, j, Pauli::Z) * PauliString::single(n_logical, next, Pauli::Z)});
  }
  return combine_terms(terms);
}

AdiabaticModel AdiabaticModel::grover(int n_logical, std::vector<int> marked, double total_time) {
  if (marked.empty()) marked.assign(static_cast<std::size_t>(n_logical), 1);
  if (static_cast<int>(marked.size()) != n_logical) throw InputError("Grover model: marked state length mismatch");
  for (int b : marked) {
    if (b != 0 && b != 1) throw InputError("Grover model: marked bits must be 0 or 1");
  }
  if (!(total_time > 0.0)) throw InputError("Grover model: total time must be positive");
  return AdiabaticModel{Algorithm::Grover, n_logical, std::move(marked), total_time};
}

AdiabaticModel AdiabaticModel::two_sat(int n_logical, double total_time) {
  if (n_logical < 2) throw InputError("2-SAT model: ring needs at least two qubits");
  if (!(total_time > 0.0)) throw InputError("2-SAT model: total time must be positive");
  return AdiabaticModel{Algorithm::TwoSat, n_logical, {}, total_time};
}

AdiabaticModel AdiabaticModel::with_total_time(double t) const {
  if (!(t > 0.0)) throw InputError("total time must be positive");
  AdiabaticModel copy = *this;
  copy.total_time = t;
  return copy;
}

double AdiabaticModel::schedule_at(double s) const {
  if (s < 0.0 || s > 1.0) throw InputError("schedule: s outside [0, 1]");
  if (kind == Algorithm::TwoSat) return s;
  return grover_schedule(s, 1.0, static_cast<double>(1 << n_logical));
}

double AdiabaticModel::schedule(double t) const {
  if (t < 0.0 || t > total_time) throw InputError("schedule: t outside [0, T]");
  return schedule_at(t / total_time);
}

std::vector<LogicalPauliTerm> AdiabaticModel::logical_terms_at(double s) const {
  const double f = schedule_at(s);
  return kind == Algorithm::Grover ? grover_logical_hamiltonian(f, n_logical, marked)
                                   : twosat_logical_hamiltonian(f, n_logical);
}

namespace {

Operator logical_matrix(const std::vector<LogicalPauliTerm>& terms, int n_logical) {
  const Eigen::Index dim = Eigen::Index{1} << n_logical;
  Operator h = Operator::Zero(dim, dim);
  for (const auto& t : terms) h += t.coefficient * t.logical_string.matrix();
  return h;
}

}  // namespace

Operator AdiabaticModel::logical_matrix_at(double s) const { return logical_matrix(logical_terms_at(s), n_logical); }

std::vector<LogicalPauliTerm> AdiabaticModel::beginning_terms() const {
  return kind == Algorithm::Grover ? grover_logical_hamiltonian(0.0, n_logical, marked)
                                   : twosat_logical_hamiltonian(0.0, n_logical);
}

std::vector<LogicalPauliTerm> AdiabaticModel::problem_terms() const {
  return kind == Algorithm::Grover ? grover_logical_hamiltonian(1.0, n_logical, marked)
                                   : twosat_logical_hamiltonian(1.0, n_logical);
}

Operator AdiabaticModel::dynamical_sector() const {
  const Eigen::Index dim = Eigen::Index{1} << n_logical;
  if (kind == Algorithm::Grover) return Operator::Identity(dim, dim);
  const Operator parity = PauliString::uniform(n_logical, Pauli::X).matrix();
  Eigen::SelfAdjointEigenSolver<Operator> eig(parity);
  const Eigen::Index half = dim / 2;
  // Eigenvalues are sorted ascending: -1 block first, then +1.
  return eig.eigenvectors().rightCols(half);
}

Operator encoded_hamiltonian_at(const AdiabaticModel& model, double t, const CodeSpec& spec) {
  if (model.n_logical != spec.n_logical()) throw InputError("encoded_hamiltonian_at: model/code size mismatch");
  return encode_hamiltonian(model.logical_terms_at(t / model.total_time), spec);
}

EncodedPath::EncodedPath(const AdiabaticModel& model, const CodeSpec& spec)
    : model_(model),
      begin_(encode_hamiltonian(model.beginning_terms(), spec)),
      end_(encode_hamiltonian(model.problem_terms(), spec)) {
  if (model.n_logical != spec.n_logical()) throw InputError("EncodedPath: model/code size mismatch");
}

Operator EncodedPath::at(double t) const {
  Operator out;
  at(t, out);
  return out;
}

void EncodedPath::at(double t, Operator& out) const {
  const double f = model_.schedule(std::clamp(t, 0.0, model_.total_time));
  out = (1.0 - f) * begin_ + f * end_;
}

namespace {

double sector_gap(const AdiabaticModel& model, const Operator& sector, double s) {
  const Operator h = sector.adjoint() * model.logical_matrix_at(s) * sector;
  const Operator sym = 0.5 * (h + h.adjoint());
  const auto gap = spectral_gap(sym);
  if (!gap) throw NumericalError("gap_scan: fully degenerate spectrum at s = " + std::to_string(s));
  return *gap;
}

}  // namespace

GapProfile gap_scan(const AdiabaticModel& model, int grid_points) {
  if (grid_points < 3) throw InputError("gap_scan: need at least 3 grid points");
  const Operator sector = model.dynamical_sector();
  GapProfile out;
  out.samples.reserve(static_cast<std::size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k) {
    const double s = static_cast<double>(k) / (grid_points - 1);
    out.samples.emplace_back(s, sector_gap(model, sector, s));
  }
  const auto best = std::min_element(out.samples.begin(), out.samples.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  out.argmin = best->first;
  out.min_gap = best->second;
  const auto idx = static_cast<std::size_t>(best - out.samples.begin());
  if (idx == 0 || idx + 1 == out.samples.size()) return out;

  // Successive parabolic interpolation, keeping the lowest three points.
  std::array<std::pair<double, double>, 3> pts{out.samples[idx - 1], out.samples[idx], out.samples[idx + 1]};
  for (int iter = 0; iter < 40; ++iter) {
    std::sort(pts.begin(), pts.end());
    const auto [a, fa] = pts[0];
    const auto [b, fb] = pts[1];
    const auto [c, fc] = pts[2];
    const double num = (b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa);
    const double den = (b - a) * (fb - fc) - (b - c) * (fb - fa);
    if (std::abs(den) < 1e-300) break;
    const double x = std::clamp(b - 0.5 * num / den, a, c);
    if (std::abs(x - b) < 1e-13) break;
    const double fx = sector_gap(model, sector, x);
    // Replace the worst of the three with the new point.
    auto worst = std::max_element(pts.begin(), pts.end(), [](const auto& p, const auto& q) { return p.second < q.second; });
    if (fx >= worst->second) break;
    *worst = {x, fx};
  }
  const auto refined = std::min_element(pts.begin(), pts.end(), [](const auto& p, const auto& q) { return p.second < q.second; });
  if (refined->second < out.min_gap) {
    out.min_gap = refined->second;
    out.argmin = refined->first;
  }
  return out;
}

double minimum_gap(const AdiabaticModel& model) { return gap_scan(model, 201).min_gap; }

StateVector target_state(const AdiabaticModel& model, const CodeSpec& spec) {
  if (model.n_logical != spec.n_logical()) throw InputError("target_state: model/code size mismatch");
  if (model.kind == Algorithm::Grover) return codeword(model.marked, spec);
  const auto k = static_cast<std::size_t>(model.n_logical);
  StateVector cat = codeword(std::vector<int>(k, 0), spec) + codeword(std::vector<int>(k, 1), spec);
  return cat / cat.norm();
}

}  // namespace ddaqc
