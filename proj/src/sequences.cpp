#include "ddaqc/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ddaqc {

std::string to_string(SequenceFamily f) {
  switch (f) {
    case SequenceFamily::None: return "none";
    case SequenceFamily::CDD: return "CDD";
    case SequenceFamily::UDD: return "UDD";
    case SequenceFamily::QDD: return "QDD";
  }
  return "none";
}

SequenceFamily parse_family(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "NONE") return SequenceFamily::None;
  if (up == "CDD") return SequenceFamily::CDD;
  if (up == "UDD") return SequenceFamily::UDD;
  if (up == "QDD") return SequenceFamily::QDD;
  throw InputError("unknown sequence family '" + name + "' (expected CDD, UDD, QDD or none)");
}

double PulseSchedule::shortest_interval() const {
  double best = total_time;
  for (std::size_t k = 1; k < boundaries.size(); ++k) best = std::min(best, boundaries[k] - boundaries[k - 1]);
  return best;
}

std::string PulseSchedule::label() const {
  if (family == SequenceFamily::None) return "none";
  return to_string(family) + parameter_label();
}

std::string PulseSchedule::parameter_label() const {
  if (family == SequenceFamily::QDD && param1 != param2) return std::to_string(param1) + ":" + std::to_string(param2);
  return std::to_string(param1);
}

std::vector<double> uhrig_times(int m, double total_time) {
  if (m < 1) throw InputError("uhrig_times: order must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    const double s = std::sin(k * std::numbers::pi / (2.0 * m + 2.0));
    out.push_back(total_time * s * s);
  }
  return out;
}

namespace {

// A sequence on [0, 1]: ops[0] acts before the first segment, ops[k] after
// segment k - 1, ops.back() after the last one.
struct FlatSequence {
  std::vector<double> boundaries;
  std::vector<PauliString> ops;
};

FlatSequence free_flat(int n) { return {{0.0, 1.0}, {PauliString::identity(n), PauliString::identity(n)}}; }

// Substitutes `inner` (rescaled) into every segment of `outer`. At a junction the
// time-ordered product is inner_next.ops.front() * outer.ops[k] * inner_prev.ops.back().
FlatSequence nest(const FlatSequence& outer, const FlatSequence& inner) {
  FlatSequence out;
  const std::size_t outer_segments = outer.boundaries.size() - 1;
  out.boundaries.push_back(outer.boundaries.front());
  out.ops.push_back(inner.ops.front() * outer.ops.front());
  for (std::size_t k = 0; k < outer_segments; ++k) {
    const double a = outer.boundaries[k];
    const double span = outer.boundaries[k + 1] - a;
    for (std::size_t j = 1; j < inner.boundaries.size(); ++j) {
      out.boundaries.push_back(j + 1 == inner.boundaries.size() ? outer.boundaries[k + 1] : a + span * inner.boundaries[j]);
      if (j + 1 < inner.boundaries.size()) out.ops.push_back(inner.ops[j]);
    }
    if (k + 1 < outer_segments) {
      out.ops.push_back(inner.ops.front() * outer.ops[k + 1] * inner.ops.back());
    } else {
      out.ops.push_back(outer.ops.back() * inner.ops.back());
    }
  }
  return out;
}

// One symmetrization layer: prod_k g_k [segment k] g_k^dagger.
FlatSequence symmetrizer(const std::array<PauliString, 4>& group) {
  const std::size_t g = group.size();
  FlatSequence out;
  for (std::size_t k = 0; k <= g; ++k) out.boundaries.push_back(static_cast<double>(k) / static_cast<double>(g));
  out.ops.push_back(group.front().adjoint());
  for (std::size_t k = 1; k < g; ++k) out.ops.push_back(group[k].adjoint() * group[k - 1]);
  out.ops.push_back(group.back());
  return out;
}

FlatSequence udd_flat(int order, const PauliString& omega) {
  const int n = omega.size();
  FlatSequence out;
  out.boundaries.push_back(0.0);
  out.ops.push_back(PauliString::identity(n));
  if (order >= 1) {
    for (double t : uhrig_times(order, 1.0)) {
      out.boundaries.push_back(t);
      out.ops.push_back(omega);
    }
  }
  out.boundaries.push_back(1.0);
  // Omega^{M+1} * Omega after the last segment.
  PauliString tail = omega;
  for (int k = 0; k < order + 1; ++k) tail = omega * tail;
  out.ops.push_back(tail);
  return out;
}

PulseSchedule finalize(const FlatSequence& flat, double total_time, SequenceFamily family, int p1, int p2, int order) {
  if (!(total_time > 0.0)) throw InputError("pulse schedule: total time must be positive");
  PulseSchedule s;
  s.family = family;
  s.param1 = p1;
  s.param2 = p2;
  s.total_time = total_time;
  s.expected_order = order;
  s.boundaries.reserve(flat.boundaries.size());
  for (double b : flat.boundaries) s.boundaries.push_back(b * total_time);
  s.boundaries.back() = total_time;

  const PauliString& head = flat.ops.front();
  if (!head.is_identity_up_to_phase()) throw NumericalError("pulse schedule: non-trivial pulse at t = 0");
  int folded_phase = head.phase_power();
  for (std::size_t k = 1; k + 1 < flat.ops.size(); ++k) {
    const PauliString& op = flat.ops[k];
    if (op.is_identity_up_to_phase()) {
      folded_phase += op.phase_power();
      continue;
    }
    s.events.push_back({s.boundaries[k], op, k - 1});
  }
  const PauliString& tail = flat.ops.back();
  s.frame_correction = tail.with_phase(tail.phase_power() + folded_phase);
  return s;
}

}  // namespace

PulseSchedule free_schedule(int n_physical, double total_time) {
  return finalize(free_flat(n_physical), total_time, SequenceFamily::None, 0, 0, 0);
}

PulseSchedule cdd_schedule(int level, double total_time, const CodeSpec& spec) {
  if (level < 0) throw InputError("cdd_schedule: level must be >= 0");
  if (level > 7) throw InputError("cdd_schedule: level above 7 is not supported");
  const FlatSequence layer = symmetrizer(stabilizer_elements(spec));
  FlatSequence flat = free_flat(spec.n_physical);
  for (int l = 0; l < level; ++l) flat = nest(layer, flat);
  return finalize(flat, total_time, SequenceFamily::CDD, level, 0, level);
}

PulseSchedule udd_schedule(int order, Pauli axis, double total_time, const CodeSpec& spec) {
  if (order < 0) throw InputError("udd_schedule: order must be >= 0");
  if (axis == Pauli::I) throw InputError("udd_schedule: pulse axis must be X, Y or Z");
  const PauliString omega = PauliString::uniform(spec.n_physical, axis);
  return finalize(udd_flat(order, omega), total_time, SequenceFamily::UDD, order, 0, order);
}

PulseSchedule qdd_schedule(int m1, int m2, double total_time, const CodeSpec& spec, QddAxes axes) {
  if (m1 < 0 || m2 < 0) throw InputError("qdd_schedule: orders must be >= 0");
  if (axes.inner == axes.outer || axes.inner == Pauli::I || axes.outer == Pauli::I) {
    throw InputError("qdd_schedule: inner and outer axes must be distinct non-identity Paulis");
  }
  const FlatSequence inner = udd_flat(m1, PauliString::uniform(spec.n_physical, axes.inner));
  const FlatSequence outer = udd_flat(m2, PauliString::uniform(spec.n_physical, axes.outer));
  return finalize(nest(outer, inner), total_time, SequenceFamily::QDD, m1, m2, std::min(m1, m2));
}

Operator toggled_propagator(const PulseSchedule& schedule, const SegmentEvolver& evolver) {
  if (schedule.boundaries.size() < 2) throw InputError("toggled_propagator: schedule has no segments");
  std::size_t next_event = 0;
  Operator u;
  for (std::size_t k = 0; k + 1 < schedule.boundaries.size(); ++k) {
    const Operator seg = evolver(schedule.boundaries[k + 1], schedule.boundaries[k]);
    if (unitarity_defect(seg) > 1e-8) {
      throw NumericalError("toggled_propagator: segment " + std::to_string(k) + " is not unitary");
    }
    u = (k == 0) ? seg : Operator(seg * u);
    if (next_event < schedule.events.size() && schedule.events[next_event].after_segment == k) {
      u = schedule.events[next_event].pulse.matrix() * u;
      ++next_event;
    }
  }
  return schedule.frame_correction.matrix() * u;
}

void write_schedule(std::ostream& os, const PulseSchedule& s) {
  os << "# ddaqc pulse schedule\n";
  os << std::setprecision(17);
  os << "family " << to_string(s.family) << "\n";
  os << "params " << s.param1 << ' ' << s.param2 << "\n";
  os << "total_time " << s.total_time << "\n";
  os << "expected_order " << s.expected_order << "\n";
  os << "segments " << s.segment_count() << "\n";
  os << "boundaries";
  for (double b : s.boundaries) os << ' ' << b;
  os << "\n";
  for (const auto& e : s.events) os << "event " << e.after_segment << ' ' << e.time << ' ' << e.pulse.str() << "\n";
  os << "frame " << s.frame_correction.str() << "\n";
}

PulseSchedule read_schedule(std::istream& is) {
  PulseSchedule s;
  std::string line;
  std::size_t segments = 0;
  bool have_frame = false;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "family") {
      std::string f;
      ls >> f;
      s.family = parse_family(f);
    } else if (key == "params") {
      ls >> s.param1 >> s.param2;
    } else if (key == "total_time") {
      ls >> s.total_time;
    } else if (key == "expected_order") {
      ls >> s.expected_order;
    } else if (key == "segments") {
      ls >> segments;
    } else if (key == "boundaries") {
      double b = 0.0;
      while (ls >> b) s.boundaries.push_back(b);
    } else if (key == "event") {
      PulseEvent e;
      std::string pulse;
      ls >> e.after_segment >> e.time >> pulse;
      e.pulse = PauliString::parse(pulse);
      s.events.push_back(std::move(e));
    } else if (key == "frame") {
      std::string pulse;
      ls >> pulse;
      s.frame_correction = PauliString::parse(pulse);
      have_frame = true;
    } else {
      throw InputError("read_schedule: unknown field '" + key + "'");
    }
    if (ls.fail() && !ls.eof()) throw InputError("read_schedule: malformed line '" + line + "'");
  }
  if (!have_frame || s.boundaries.size() != segments + 1) throw InputError("read_schedule: incomplete schedule");
  return s;
}

}  // namespace ddaqc
