#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ddaqc/linalg.hpp"

namespace ddaqc {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_label(Pauli p);

/// Tensor product of single-qubit Paulis times a unit phase i^k, k in {0,1,2,3}.
/// Factor 0 is qubit 1, the most significant bit of the computational basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> factors, int phase_power = 0);

  static PauliString identity(int n);
  /// Single-qubit Pauli p on qubit `qubit` (1-based) of an n-qubit register.
  static PauliString single(int n, int qubit, Pauli p);
  /// The same Pauli on every qubit.
  static PauliString uniform(int n, Pauli p);
  /// Parses e.g. "XXII", "+XZ", "-iYY", "iZ".
  static PauliString parse(std::string_view text);

  int size() const { return static_cast<int>(factors_.size()); }
  Pauli operator[](int qubit_index) const { return factors_.at(static_cast<std::size_t>(qubit_index)); }
  const std::vector<Pauli>& factors() const { return factors_; }

  /// Phase as a power of i.
  int phase_power() const { return phase_; }
  Complex phase() const;

  int weight() const;
  bool is_identity_up_to_phase() const { return weight() == 0; }
  bool commutes_with(const PauliString& other) const;

  /// Product with the composed phase.
  PauliString operator*(const PauliString& rhs) const;
  PauliString& operator*=(const PauliString& rhs) { return *this = *this * rhs; }

  /// Hermitian conjugate (inverts the phase; the tensor part is self-inverse).
  PauliString adjoint() const;
  PauliString with_phase(int phase_power) const;

  bool operator==(const PauliString& other) const = default;

  /// Label with sign prefix, e.g. "+XXII" or "-iZIZI".
  std::string str() const;
  /// Tensor part only, e.g. "XXII".
  std::string label() const;

  Operator matrix() const;
  /// P|psi> without forming the matrix.
  StateVector apply(const StateVector& psi) const;

 private:
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  std::vector<Pauli> factors_;
  int phase_ = 0;
};

/// Dense matrix of p on n qubits; rejects length mismatches.
Operator pauli_string_matrix(const PauliString& p, int n);

}  // namespace ddaqc
