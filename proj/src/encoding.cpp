#include "ddaqc/encoding.hpp"

#include <cmath>
#include <map>
#include <string>

namespace ddaqc {

CodeSpec::CodeSpec(int n_phys) : n_physical(n_phys) {
  if (n_phys < 4 || n_phys % 2 != 0) {
    throw InputError("CodeSpec: n_physical must be even and >= 4, got " + std::to_string(n_phys));
  }
  if (n_phys > 8) throw InputError("CodeSpec: dense simulation supports at most 8 physical qubits");
}

std::array<PauliString, 4> stabilizer_elements(const CodeSpec& spec) {
  const int n = spec.n_physical;
  const PauliString x = PauliString::uniform(n, Pauli::X);
  const PauliString z = PauliString::uniform(n, Pauli::Z);
  return {PauliString::identity(n), x, x * z, z};
}

PauliString logical_x(int j, const CodeSpec& spec) {
  if (j < 1 || j > spec.n_logical()) throw InputError("logical_x: index out of range");
  const int n = spec.n_physical;
  return PauliString::single(n, 1, Pauli::X) * PauliString::single(n, j + 1, Pauli::X);
}

PauliString logical_z(int j, const CodeSpec& spec) {
  if (j < 1 || j > spec.n_logical()) throw InputError("logical_z: index out of range");
  const int n = spec.n_physical;
  return PauliString::single(n, j + 1, Pauli::Z) * PauliString::single(n, n, Pauli::Z);
}

PauliString encode_pauli_monomial(const PauliString& logical, const CodeSpec& spec) {
  if (logical.size() != spec.n_logical()) {
    throw InputError("encode_pauli_monomial: expected " + std::to_string(spec.n_logical()) + " logical factors");
  }
  PauliString out = PauliString::identity(spec.n_physical).with_phase(logical.phase_power());
  for (int j = 1; j <= spec.n_logical(); ++j) {
    switch (logical[j - 1]) {
      case Pauli::I: break;
      case Pauli::X: out *= logical_x(j, spec); break;
      case Pauli::Z: out *= logical_z(j, spec); break;
      case Pauli::Y: {
        const PauliString xz = logical_x(j, spec) * logical_z(j, spec);
        out *= xz.with_phase(xz.phase_power() + 1);
        break;
      }
    }
  }
  return out;
}

Operator encode_hamiltonian(const std::vector<LogicalPauliTerm>& terms, const CodeSpec& spec) {
  const auto dim = spec.dimension();
  Operator h = Operator::Zero(dim, dim);
  for (const auto& term : terms) {
    if (!std::isfinite(term.coefficient)) throw InputError("encode_hamiltonian: non-finite coefficient");
    const PauliString enc = encode_pauli_monomial(term.logical_string, spec);
    if (enc.phase_power() % 2 != 0) {
      throw InputError("encode_hamiltonian: term " + term.logical_string.str() + " has a non-real phase");
    }
    h += term.coefficient * enc.matrix();
  }
  return h;
}

Operator codespace_projector(const CodeSpec& spec) {
  const auto dim = spec.dimension();
  const auto id = Operator::Identity(dim, dim);
  const auto stab = stabilizer_elements(spec);
  return 0.25 * (id + stab[1].matrix()) * (id + stab[3].matrix());
}

namespace {

StateVector project_codeword(const std::vector<int>& bits, const CodeSpec& spec) {
  const auto dim = spec.dimension();
  const auto id = Operator::Identity(dim, dim);
  Operator proj = codespace_projector(spec);
  for (int j = 1; j <= spec.n_logical(); ++j) {
    const double sign = bits[static_cast<std::size_t>(j - 1)] ? -1.0 : 1.0;
    proj = proj * (0.5 * (id + sign * logical_z(j, spec).matrix()));
  }
  for (Eigen::Index seed = 0; seed < dim; ++seed) {
    StateVector v = proj.col(seed);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw NumericalError("codeword: projector annihilates every basis seed");
}

}  // namespace

StateVector codeword(const std::vector<int>& logical_bits, const CodeSpec& spec) {
  if (static_cast<int>(logical_bits.size()) != spec.n_logical()) {
    throw InputError("codeword: expected " + std::to_string(spec.n_logical()) + " logical bits");
  }
  for (int b : logical_bits) {
    if (b != 0 && b != 1) throw InputError("codeword: bits must be 0 or 1");
  }
  StateVector v = project_codeword(logical_bits, spec);
  // Fix the free phase against X̄^b applied to the all-zero codeword.
  StateVector ref = project_codeword(std::vector<int>(logical_bits.size(), 0), spec);
  for (int j = 1; j <= spec.n_logical(); ++j) {
    if (logical_bits[static_cast<std::size_t>(j - 1)]) ref = logical_x(j, spec).apply(ref);
  }
  const Complex overlap = ref.dot(v);
  if (std::abs(overlap) > 1e-12) v *= std::conj(overlap) / std::abs(overlap);
  return v;
}

StateVector encoded_uniform_superposition(const CodeSpec& spec) {
  const int k = spec.n_logical();
  StateVector sum = StateVector::Zero(spec.dimension());
  for (int word = 0; word < (1 << k); ++word) {
    std::vector<int> bits(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) bits[static_cast<std::size_t>(j)] = (word >> (k - 1 - j)) & 1;
    sum += codeword(bits, spec);
  }
  return sum / sum.norm();
}

std::vector<PauliString> single_qubit_errors(const CodeSpec& spec) {
  std::vector<PauliString> out;
  for (int q = 1; q <= spec.n_physical; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) out.push_back(PauliString::single(spec.n_physical, q, p));
  }
  return out;
}

std::vector<LogicalPauliTerm> combine_terms(const std::vector<LogicalPauliTerm>& terms) {
  std::map<std::string, LogicalPauliTerm> acc;
  std::vector<std::string> order;
  for (const auto& t : terms) {
    // Fold real phases into the coefficient so +P and -P merge.
    double c = t.coefficient;
    const int ph = t.logical_string.phase_power();
    if (ph == 2) c = -c;
    const PauliString key_string = t.logical_string.with_phase(ph % 2);
    const std::string key = key_string.str();
    auto [it, inserted] = acc.try_emplace(key, LogicalPauliTerm{0.0, key_string});
    if (inserted) order.push_back(key);
    it->second.coefficient += c;
  }
  std::vector<LogicalPauliTerm> out;
  for (const auto& key : order) {
    if (acc[key].coefficient != 0.0) out.push_back(acc[key]);
  }
  return out;
}

}  // namespace ddaqc
