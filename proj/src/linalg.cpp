#include "ddaqc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ddaqc {

namespace {

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InputError(std::string(what) + ": expected a non-empty square matrix");
  }
}

void require_hermitian(const Operator& h, const char* what) {
  require_square(h, what);
  // Scale the tolerance with the matrix magnitude so large Hamiltonians built
  // by summation are not rejected for round-off.
  const double tol = kHermitianTol * std::max(1.0, max_norm(h));
  if (!is_hermitian(h, tol)) {
    throw InputError(std::string(what) + ": operator is not Hermitian");
  }
}

}  // namespace

double max_norm(const Operator& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_norm(a - a.adjoint()) <= tol;
}

double unitarity_defect(const Operator& u) {
  const auto n = u.rows();
  return max_norm(u.adjoint() * u - Operator::Identity(n, n));
}

Operator unitary_exp(const Operator& h, double dt) {
  require_hermitian(h, "unitary_exp");
  Eigen::SelfAdjointEigenSolver<Operator> eig(h);
  const Eigen::VectorXcd phases =
      (eig.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

StateVector apply_unitary_exp(const Operator& h, double dt, const StateVector& psi) {
  Eigen::SelfAdjointEigenSolver<Operator> eig(h);
  const auto& v = eig.eigenvectors();
  StateVector coeffs = v.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::polar(1.0, -dt * eig.eigenvalues()[k]);
  }
  return v * coeffs;
}

GroundState ground_state(const Operator& h, double degeneracy_tol) {
  require_hermitian(h, "ground_state");
  Eigen::SelfAdjointEigenSolver<Operator> eig(h);
  GroundState out;
  out.energy = eig.eigenvalues()[0];
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    if (eig.eigenvalues()[k] - out.energy > degeneracy_tol) break;
    out.states.emplace_back(eig.eigenvectors().col(k));
  }
  return out;
}

std::optional<double> spectral_gap(const Operator& h, double degeneracy_tol) {
  require_hermitian(h, "spectral_gap");
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Operator>(h, Eigen::EigenvaluesOnly).eigenvalues();
  for (Eigen::Index k = 1; k < ev.size(); ++k) {
    if (ev[k] - ev[0] > degeneracy_tol) return ev[k] - ev[0];
  }
  return std::nullopt;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("trace_distance: dimension mismatch");
  }
  require_square(a, "trace_distance");
  const DensityMatrix diff = a - b;
  // Hermitize to shed round-off asymmetry before the eigensolve.
  const DensityMatrix sym = 0.5 * (diff + diff.adjoint());
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<DensityMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
  return std::clamp(0.5 * ev.cwiseAbs().sum(), 0.0, 1.0);
}

DensityMatrix projector(const StateVector& psi) { return psi * psi.adjoint(); }

bool is_density_matrix(const DensityMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  const DensityMatrix sym = 0.5 * (rho + rho.adjoint());
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<DensityMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
  return ev.minCoeff() >= -tol;
}

}  // namespace ddaqc
