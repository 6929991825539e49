#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ddaqc/encoding.hpp"
#include "ddaqc/linalg.hpp"

namespace ddaqc {

enum class Algorithm { Grover, TwoSat };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Optimized Grover interpolation
///   f(t) = 1/2 - tan[(1 - 2t/T) arccos(1/sqrt(N))] / (2 sqrt(N - 1)).
double grover_schedule(double t, double total_time, double n_states);

/// [1 - f](I - |u><u|) + f (I - |m><m|) expanded over X-type and Z-type monomials.
std::vector<LogicalPauliTerm> grover_logical_hamiltonian(double f, int n_logical, const std::vector<int>& marked);

/// (1 - s) sum_j (I - X_j) + s sum_j (I - Z_j Z_{j+1}) / 2 on a periodic ring.
/// Like terms are merged, so a two-site ring carries the bond (1,2) with weight s.
std::vector<LogicalPauliTerm> twosat_logical_hamiltonian(double s, int n_logical);

struct AdiabaticModel {
  Algorithm kind = Algorithm::Grover;
  int n_logical = 2;
  /// Marked bit string; Grover only.
  std::vector<int> marked;
  double total_time = 1.0;

  static AdiabaticModel grover(int n_logical, std::vector<int> marked, double total_time);
  static AdiabaticModel two_sat(int n_logical, double total_time);

  AdiabaticModel with_total_time(double total_time) const;

  /// Interpolation value f at dimensionless time s = t/T.
  double schedule_at(double s) const;
  double schedule(double t) const;

  std::vector<LogicalPauliTerm> logical_terms_at(double s) const;
  Operator logical_matrix_at(double s) const;
  /// Beginning (f = 0) and problem (f = 1) logical terms.
  std::vector<LogicalPauliTerm> beginning_terms() const;
  std::vector<LogicalPauliTerm> problem_terms() const;

  /// Orthonormal columns spanning the symmetry sector that contains the initial
  /// state: the +1 eigenspace of prod_j X_j for 2-SAT, the full space for Grover.
  Operator dynamical_sector() const;
};

Operator encoded_hamiltonian_at(const AdiabaticModel& model, double t, const CodeSpec& spec);

/// Both models are affine in f, so H̄(t) = (1 - f) H̄_B + f H̄_P exactly; the two
/// endpoint matrices are materialized once.
class EncodedPath {
 public:
  EncodedPath(const AdiabaticModel& model, const CodeSpec& spec);

  Operator at(double t) const;
  /// Writes H̄(t) into out without allocating.
  void at(double t, Operator& out) const;

  const AdiabaticModel& model() const { return model_; }
  const Operator& beginning() const { return begin_; }
  const Operator& problem() const { return end_; }

 private:
  AdiabaticModel model_;
  Operator begin_;
  Operator end_;
};

struct GapProfile {
  std::vector<std::pair<double, double>> samples;  // (s, gap)
  double min_gap = 0.0;
  double argmin = 0.0;
};

/// Gap of the logical Hamiltonian inside dynamical_sector() on a uniform grid of
/// s in [0, 1], with successive three-point parabolic refinement around the
/// coarse minimum.
GapProfile gap_scan(const AdiabaticModel& model, int grid_points);

/// Minimum gap from a dense scan; the unit of time for run-time axes is 1/Δ_min.
double minimum_gap(const AdiabaticModel& model);

/// Grover: codeword(marked). 2-SAT: (codeword(0...0) + codeword(1...1)) / sqrt(2).
StateVector target_state(const AdiabaticModel& model, const CodeSpec& spec);

}  // namespace ddaqc
