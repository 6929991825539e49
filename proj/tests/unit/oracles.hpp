#pragma once

// Reference constructions used only by tests. They deliberately avoid the
// library's own code paths (bit masks, eigendecompositions).

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddaqc/linalg.hpp"
#include "ddaqc/sequences.hpp"

namespace oracle {

using ddaqc::Complex;
using ddaqc::Operator;

inline Operator pauli2(char c) {
  Operator m(2, 2);
  const Complex i(0.0, 1.0);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// Leftmost label is qubit 1, the most significant tensor factor.
inline Operator pauli_kron(const std::string& labels) {
  Operator out = Operator::Identity(1, 1);
  for (char c : labels) out = kron(out, pauli2(c));
  return out;
}

// Scaling and squaring with a truncated Taylor series.
inline Operator expm(const Operator& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.25) {
    scaled /= 2.0;
    ++squarings;
  }
  const Operator b = a / std::pow(2.0, squarings);
  Operator term = Operator::Identity(a.rows(), a.cols());
  Operator sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline Operator random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Operator a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

inline Operator random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  const Operator h = random_hermitian(dim, rng);
  return expm(Complex(0.0, -1.0) * h);
}

// Operator-norm distance of u to the nearest global phase times identity,
// phase fixed by the trace.
inline double distance_to_identity(const Operator& u) {
  const Complex tr = u.trace();
  const Complex phase = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1.0, 0.0);
  const Operator d = u - phase * Operator::Identity(u.rows(), u.cols());
  return Eigen::JacobiSVD<Operator>(d).singularValues()(0);
}

// Literal CDD recursion: U_{l} on blocks [offset, offset + 4^l) of base-segment
// stubs, U_{l+1} = g_3 U_l g_3^† · g_2 U_l g_2^† · g_1 U_l g_1^† · g_0 U_l g_0^†.
inline Operator cdd_literal(int level, const std::vector<Operator>& stubs, std::size_t offset,
                            const std::array<Operator, 4>& group) {
  if (level == 0) return stubs[offset];
  const std::size_t block = std::size_t{1} << (2 * (level - 1));
  Operator u = Operator::Identity(stubs.front().rows(), stubs.front().cols());
  for (std::size_t j = 0; j < 4; ++j) {
    u = group[j] * cdd_literal(level - 1, stubs, offset + j * block, group) * group[j].adjoint() * u;
  }
  return u;
}

// Evolver that returns stubs[k] for the base segment starting at b[k].
inline ddaqc::SegmentEvolver stub_evolver(const ddaqc::PulseSchedule& s, const std::vector<Operator>& stubs) {
  return [&s, &stubs](double /*t_later*/, double t_earlier) {
    for (std::size_t k = 0; k + 1 < s.boundaries.size(); ++k) {
      if (s.boundaries[k] == t_earlier) return stubs[k];
    }
    throw std::logic_error("stub_evolver: unknown segment");
  };
}

}  // namespace oracle
