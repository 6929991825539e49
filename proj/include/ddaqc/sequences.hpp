#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddaqc/encoding.hpp"
#include "ddaqc/linalg.hpp"
#include "ddaqc/pauli.hpp"

namespace ddaqc {

enum class SequenceFamily { None, CDD, UDD, QDD };

std::string to_string(SequenceFamily f);
SequenceFamily parse_family(const std::string& name);

/// Which stabilizer generator drives the inner and outer UDD layers of QDD.
struct QddAxes {
  Pauli inner = Pauli::X;
  Pauli outer = Pauli::Z;
};

struct PulseEvent {
  double time = 0.0;
  PauliString pulse;
  /// The pulse acts after base segment `after_segment` (0-based) and before the next.
  std::size_t after_segment = 0;
};

/// A flattened zero-width pulse sequence over [0, T]. Base segments are the free
/// evolution windows between boundaries; pulses that coalesce to the identity
/// are elided and their phase is folded into the frame correction.
struct PulseSchedule {
  SequenceFamily family = SequenceFamily::None;
  /// CDD level l, UDD order M, or QDD M1 (inner).
  int param1 = 0;
  /// QDD M2 (outer); unused otherwise.
  int param2 = 0;
  double total_time = 1.0;
  /// Base segment boundaries, 0 = b_0 < b_1 < ... < b_S = T.
  std::vector<double> boundaries;
  std::vector<PulseEvent> events;
  /// Operator applied at T so that events plus correction reproduce the
  /// sequence's full product.
  PauliString frame_correction;
  int expected_order = 0;

  std::size_t segment_count() const { return boundaries.empty() ? 0 : boundaries.size() - 1; }
  double shortest_interval() const;
  /// e.g. "CDD4", "QDD15", "UDD2", "none".
  std::string label() const;
  /// Level or order column value: "4", "15", "3:7".
  std::string parameter_label() const;
};

/// Interior Uhrig times T sin^2(k pi / (2M + 2)), k = 1..M.
std::vector<double> uhrig_times(int m, double total_time);

/// Empty schedule over [0, T] on n physical qubits.
PulseSchedule free_schedule(int n_physical, double total_time);

/// Concatenated symmetrization over {I, X, Y, Z} in that order:
///   U^(l+1) = prod_k g_k U^(l)_k g_k^dagger, later segments to the left.
PulseSchedule cdd_schedule(int level, double total_time, const CodeSpec& spec);

/// Omega^{M+1} prod_{k=1}^{M+1} Omega U_0(delta_k, delta_{k-1}).
PulseSchedule udd_schedule(int order, Pauli axis, double total_time, const CodeSpec& spec);

/// Outer UDD(M2) on axes.outer whose every interval carries an inner UDD(M1)
/// on axes.inner rescaled to that interval.
PulseSchedule qdd_schedule(int m1, int m2, double total_time, const CodeSpec& spec, QddAxes axes = {});

using SegmentEvolver = std::function<Operator(double t_later, double t_earlier)>;

/// frame_correction * U_S * P_{S-1} * ... * P_1 * U_1 with U_k = evolver(b_k, b_{k-1}).
/// Throws NumericalError if a segment deviates from unitarity by more than 1e-8.
Operator toggled_propagator(const PulseSchedule& schedule, const SegmentEvolver& evolver);

/// Plain-text listing: header fields, boundaries, one `event` line per pulse and
/// the frame correction. Doubles are written with round-trip precision.
void write_schedule(std::ostream& os, const PulseSchedule& schedule);
PulseSchedule read_schedule(std::istream& is);

}  // namespace ddaqc
