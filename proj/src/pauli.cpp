#include "ddaqc/pauli.hpp"

#include <array>
#include <bit>

namespace ddaqc {

namespace {

// sigma_a sigma_b = i^{kPhase[a][b]} sigma_{kProduct[a][b]}.
constexpr std::array<std::array<Pauli, 4>, 4> kProduct{{
    {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z},
    {Pauli::X, Pauli::I, Pauli::Z, Pauli::Y},
    {Pauli::Y, Pauli::Z, Pauli::I, Pauli::X},
    {Pauli::Z, Pauli::Y, Pauli::X, Pauli::I},
}};
constexpr std::array<std::array<int, 4>, 4> kPhase{{
    {0, 0, 0, 0},
    {0, 0, 1, 3},  // XY = iZ, XZ = -iY
    {0, 3, 0, 1},  // YX = -iZ, YZ = iX
    {0, 1, 3, 0},  // ZX = iY, ZY = -iX
}};

constexpr std::array<Complex, 4> kUnits{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};

int mod4(int k) { return ((k % 4) + 4) % 4; }

}  // namespace

char pauli_label(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(std::vector<Pauli> factors, int phase_power)
    : factors_(std::move(factors)), phase_(mod4(phase_power)) {
  if (factors_.size() > 62) throw InputError("PauliString: too many qubits");
}

PauliString PauliString::identity(int n) { return uniform(n, Pauli::I); }

PauliString PauliString::single(int n, int qubit, Pauli p) {
  if (qubit < 1 || qubit > n) throw InputError("PauliString::single: qubit index out of range");
  std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
  f[static_cast<std::size_t>(qubit - 1)] = p;
  return PauliString(std::move(f));
}

PauliString PauliString::uniform(int n, Pauli p) {
  if (n < 0) throw InputError("PauliString: negative qubit count");
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n), p));
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::vector<Pauli> f;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': case '_': f.push_back(Pauli::I); break;
      case 'X': f.push_back(Pauli::X); break;
      case 'Y': f.push_back(Pauli::Y); break;
      case 'Z': f.push_back(Pauli::Z); break;
      default: throw InputError("PauliString::parse: bad character in '" + std::string(text) + "'");
    }
  }
  return PauliString(std::move(f), phase);
}

Complex PauliString::phase() const { return kUnits[static_cast<std::size_t>(phase_)]; }

int PauliString::weight() const {
  int w = 0;
  for (auto p : factors_) w += p != Pauli::I;
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (size() != other.size()) throw InputError("PauliString: length mismatch");
  int anti = 0;
  for (int q = 0; q < size(); ++q) {
    const auto a = factors_[static_cast<std::size_t>(q)];
    const auto b = other.factors_[static_cast<std::size_t>(q)];
    anti += (a != Pauli::I && b != Pauli::I && a != b);
  }
  return anti % 2 == 0;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (size() != rhs.size()) throw InputError("PauliString: length mismatch in product");
  std::vector<Pauli> f(factors_.size());
  int phase = phase_ + rhs.phase_;
  for (std::size_t q = 0; q < f.size(); ++q) {
    const auto a = static_cast<std::size_t>(factors_[q]);
    const auto b = static_cast<std::size_t>(rhs.factors_[q]);
    f[q] = kProduct[a][b];
    phase += kPhase[a][b];
  }
  return PauliString(std::move(f), phase);
}

PauliString PauliString::adjoint() const { return PauliString(factors_, -phase_); }

PauliString PauliString::with_phase(int phase_power) const { return PauliString(factors_, phase_power); }

std::string PauliString::label() const {
  std::string s;
  s.reserve(factors_.size());
  for (auto p : factors_) s.push_back(pauli_label(p));
  return s;
}

std::string PauliString::str() const {
  static constexpr std::array<const char*, 4> kPrefix{"+", "+i", "-", "-i"};
  return kPrefix[static_cast<std::size_t>(phase_)] + label();
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const int n = size();
  for (int q = 0; q < n; ++q) {
    const auto p = factors_[static_cast<std::size_t>(q)];
    if (p == Pauli::X || p == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const int n = size();
  for (int q = 0; q < n; ++q) {
    const auto p = factors_[static_cast<std::size_t>(q)];
    if (p == Pauli::Z || p == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

// Y = i X Z, so P|b> = phase * i^{#Y} * (-1)^{popcount(b & zmask)} |b xor xmask>.
Operator PauliString::matrix() const {
  const std::uint64_t dim = std::uint64_t{1} << size();
  const auto xm = x_mask();
  const auto zm = z_mask();
  int ny = 0;
  for (auto p : factors_) ny += p == Pauli::Y;
  const Complex base = kUnits[static_cast<std::size_t>(mod4(phase_ + ny))];
  Operator m = Operator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zm) % 2) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) = sign * base;
  }
  return m;
}

StateVector PauliString::apply(const StateVector& psi) const {
  const std::uint64_t dim = std::uint64_t{1} << size();
  if (static_cast<std::uint64_t>(psi.size()) != dim) throw InputError("PauliString::apply: dimension mismatch");
  const auto xm = x_mask();
  const auto zm = z_mask();
  int ny = 0;
  for (auto p : factors_) ny += p == Pauli::Y;
  const Complex base = kUnits[static_cast<std::size_t>(mod4(phase_ + ny))];
  StateVector out(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zm) % 2) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(b ^ xm)] = sign * base * psi[static_cast<Eigen::Index>(b)];
  }
  return out;
}

Operator pauli_string_matrix(const PauliString& p, int n) {
  if (p.size() != n) {
    throw InputError("pauli_string_matrix: string has " + std::to_string(p.size()) + " factors, expected " +
                     std::to_string(n));
  }
  return p.matrix();
}

}  // namespace ddaqc
