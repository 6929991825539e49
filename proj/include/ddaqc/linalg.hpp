#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ddaqc {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

/// Malformed or out-of-range caller input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical invariant (unitarity, normalization) was violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDegeneracyTol = 1e-9;
inline constexpr double kHermitianTol = 1e-12;

double max_norm(const Operator& a);
bool is_hermitian(const Operator& a, double tol = kHermitianTol);

/// Max-norm of U^dagger U - I.
double unitarity_defect(const Operator& u);

/// exp(-i H dt) through the Hermitian eigendecomposition of H.
Operator unitary_exp(const Operator& h, double dt);

/// Applies exp(-i H dt) to a state without forming the full propagator.
StateVector apply_unitary_exp(const Operator& h, double dt, const StateVector& psi);

struct GroundState {
  double energy = 0.0;
  /// Orthonormal basis of the ground eigenspace.
  std::vector<StateVector> states;
};

GroundState ground_state(const Operator& h, double degeneracy_tol = kDegeneracyTol);

/// Distance from the lowest eigenvalue to the next distinct one. Empty when the
/// spectrum is fully degenerate.
std::optional<double> spectral_gap(const Operator& h, double degeneracy_tol = kDegeneracyTol);

/// D = (1/2) sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix projector(const StateVector& psi);

/// Checks Hermiticity, unit trace and positivity within tol.
bool is_density_matrix(const DensityMatrix& rho, double tol = 1e-10);

}  // namespace ddaqc
