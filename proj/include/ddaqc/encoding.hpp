#pragma once

#include <array>
#include <vector>

#include "ddaqc/linalg.hpp"
#include "ddaqc/pauli.hpp"

namespace ddaqc {

/// The [[n, n-2, 2]] error-detecting code with stabilizer {I, X^n, Y^n, Z^n}.
struct CodeSpec {
  int n_physical = 4;

  explicit CodeSpec(int n_phys = 4);
  int n_logical() const { return n_physical - 2; }
  Eigen::Index dimension() const { return Eigen::Index{1} << n_physical; }
};

struct LogicalPauliTerm {
  double coefficient = 0.0;
  PauliString logical_string;
};

/// {I, X, Y, Z} with X and Z the all-qubit products and Y = X·Z, which is
/// (-1)^{n/2} times the product of per-qubit sigma^y.
std::array<PauliString, 4> stabilizer_elements(const CodeSpec& spec);

/// X_1 X_{j+1}; j is 1-based over the logical qubits.
PauliString logical_x(int j, const CodeSpec& spec);
/// Z_{j+1} Z_n.
PauliString logical_z(int j, const CodeSpec& spec);

/// Maps a logical Pauli monomial to its physical representative, Y -> i X̄ Z̄.
PauliString encode_pauli_monomial(const PauliString& logical, const CodeSpec& spec);

/// Sum of coefficient * encoded monomial. Terms whose encoded phase is not real
/// would make the operator non-Hermitian and are rejected.
Operator encode_hamiltonian(const std::vector<LogicalPauliTerm>& terms, const CodeSpec& spec);

/// Codespace vector with logical Z̄_j eigenvalues (-1)^{bit_j}. Phases are aligned
/// so that codeword(b) = X̄^b codeword(0...0).
StateVector codeword(const std::vector<int>& logical_bits, const CodeSpec& spec);

/// Equal superposition of all 2^{n_logical} codewords.
StateVector encoded_uniform_superposition(const CodeSpec& spec);

/// Projector onto the joint +1 eigenspace of X^n and Z^n.
Operator codespace_projector(const CodeSpec& spec);

/// Every physical single-qubit error sigma^mu_j, qubit-major, axis order x, y, z.
std::vector<PauliString> single_qubit_errors(const CodeSpec& spec);

/// Sums like terms in place and drops exact zeros.
std::vector<LogicalPauliTerm> combine_terms(const std::vector<LogicalPauliTerm>& terms);

}  // namespace ddaqc
