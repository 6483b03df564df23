// Copyright 2026 The entmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entmap/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "entmap/errors.hpp"

namespace entmap {
namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

void require_finite(const HamiltonianParams& h, double t) {
  if (!h.is_finite()) throw DomainError("Hamiltonian coefficients must be finite");
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
}

void require_normalized(const Amplitudes& psi, double tol) {
  const double n2 = psi.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol)
    throw DomainError("state is not normalized (|psi|^2 = " + std::to_string(n2) + ")");
}

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

bool HamiltonianParams::is_finite() const {
  return std::isfinite(c1) && std::isfinite(c2) && std::isfinite(c3);
}

PureState PureState::from_amplitudes(const Amplitudes& amps, double tol) {
  require_normalized(amps, tol);
  return PureState(amps);
}

PureState PureState::normalized(const Amplitudes& amps) {
  const double n = amps.norm();
  if (!std::isfinite(n) || n == 0.0) throw DomainError("cannot normalize a zero or non-finite vector");
  return PureState(amps / n);
}

PureState PureState::basis(int index) {
  if (index < 0 || index > 3) throw DomainError("basis index must be in [0, 3]");
  Amplitudes a = Amplitudes::Zero();
  a[index] = 1.0;
  return PureState(a);
}

TwoQubitUnitary TwoQubitUnitary::from_matrix(const Matrix4& m, double tol) {
  if (!m.allFinite()) throw DomainError("unitary has non-finite entries");
  const double dev = max_abs(m.adjoint() * m - Matrix4::Identity());
  if (dev > tol) throw DomainError("matrix is not unitary (max |U^dag U - I| = " + std::to_string(dev) + ")");
  return TwoQubitUnitary(m);
}

TwoQubitUnitary TwoQubitUnitary::identity() { return TwoQubitUnitary(Matrix4::Identity()); }

PureState TwoQubitUnitary::apply(const PureState& psi) const {
  return PureState::normalized(m_ * psi.amplitudes());
}

const std::array<Amplitudes, 4>& bell_states() {
  static const std::array<Amplitudes, 4> states = [] {
    const double r = std::numbers::sqrt2 / 2.0;
    std::array<Amplitudes, 4> s;
    s[0] << r, 0, 0, r;   // Phi+
    s[1] << r, 0, 0, -r;  // Phi-
    s[2] << 0, r, r, 0;   // Psi+
    s[3] << 0, r, -r, 0;  // Psi-
    return s;
  }();
  return states;
}

double BellSpectrum::trace() const {
  return eigenvalues[0] + eigenvalues[1] + eigenvalues[2] + eigenvalues[3];
}

BellSpectrum bell_spectrum(const HamiltonianParams& h) {
  // XX, YY, ZZ eigenvalues on (Phi+, Phi-, Psi+, Psi-) are
  // (+,-,+,-), (-,+,+,-), (+,+,-,-).
  return BellSpectrum{{h.c1 - h.c2 + h.c3, -h.c1 + h.c2 + h.c3, h.c1 + h.c2 - h.c3,
                       -h.c1 - h.c2 - h.c3}};
}

Matrix4 hamiltonian_matrix(const HamiltonianParams& h) {
  return h.c1 * kron(pauli_x(), pauli_x()) + h.c2 * kron(pauli_y(), pauli_y()) +
         h.c3 * kron(pauli_z(), pauli_z());
}

PureState evolve(const HamiltonianParams& h, const PureState& psi0, double t) {
  require_finite(h, t);
  const auto& bell = bell_states();
  const BellSpectrum spec = bell_spectrum(h);
  Amplitudes out = Amplitudes::Zero();
  for (int k = 0; k < 4; ++k) {
    // Bell vectors are real, so <B_k|psi> = B_k^T psi.
    const Complex overlap = bell[k].dot(psi0.amplitudes());
    out += std::polar(1.0, -spec.eigenvalues[k] * t) * overlap * bell[k];
  }
  return PureState::from_amplitudes(out);
}

TwoQubitUnitary propagator(const HamiltonianParams& h, double t) {
  require_finite(h, t);
  const auto& bell = bell_states();
  const BellSpectrum spec = bell_spectrum(h);
  Matrix4 u = Matrix4::Zero();
  for (int k = 0; k < 4; ++k)
    u += std::polar(1.0, -spec.eigenvalues[k] * t) * (bell[k] * bell[k].transpose());
  return TwoQubitUnitary::from_matrix(u);
}

Matrix4 series_expm(const Matrix4& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix4 scaled = a / std::ldexp(1.0, squarings);

  Matrix4 result = Matrix4::Identity();
  Matrix4 term = Matrix4::Identity();
  for (int k = 1; k < 64; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    const Matrix4 next = term * scaled / static_cast<double>(k + 1);
    if (max_abs(next) < 1e-16) {
      result += next;
      break;
    }
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

PureState oracle_evolve(const HamiltonianParams& h, const PureState& psi0, double t) {
  require_finite(h, t);
  const Matrix4 u = series_expm(Complex(0.0, -t) * hamiltonian_matrix(h));
  return PureState::from_amplitudes(u * psi0.amplitudes(), 1e-9);
}

double concurrence_sq_exact(const Amplitudes& psi) {
  require_normalized(psi, 1e-9);
  static const Matrix4 yy = kron(pauli_y(), pauli_y());
  // <psi*| YY |psi> = psi^T YY psi (no conjugation).
  const Complex overlap = psi.transpose() * yy * psi;
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double concurrence_sq_exact(const PureState& psi) { return concurrence_sq_exact(psi.amplitudes()); }

double negativity_sq(const Amplitudes& psi) {
  require_normalized(psi, 1e-9);
  const Matrix4 rho = psi * psi.adjoint();
  // Partial transpose on qubit 2: swap the qubit-2 indices of each entry.
  Matrix4 pt;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) pt(2 * i1 + i2, 2 * j1 + j2) = rho(2 * i1 + j2, 2 * j1 + i2);
  const Eigen::SelfAdjointEigenSolver<Matrix4> solver(pt, Eigen::EigenvaluesOnly);
  double negative = 0.0;
  for (int k = 0; k < 4; ++k) negative += std::min(solver.eigenvalues()[k], 0.0);
  return negative * negative;
}

double negativity_sq(const PureState& psi) { return negativity_sq(psi.amplitudes()); }

std::string_view to_string(InputState s) {
  switch (s) {
    case InputState::kPsi1: return "psi1";
    case InputState::kPsi2: return "psi2";
    case InputState::kPsi3: return "psi3";
    case InputState::kPsi4: return "psi4";
  }
  return "?";
}

InputState parse_input_state(std::string_view name) {
  for (InputState s : kAllInputs)
    if (to_string(s) == name) return s;
  throw DomainError("unknown input state '" + std::string(name) + "' (expected psi1..psi4)");
}

double combination(InputState s, const HamiltonianParams& h) {
  switch (s) {
    case InputState::kPsi1: return h.c1 - h.c2;
    case InputState::kPsi2: return h.c1 + h.c2;
    case InputState::kPsi3: return h.c2 - h.c3;
    case InputState::kPsi4: return h.c2 + h.c3;
  }
  return 0.0;
}

double table1_prediction(InputState s, const HamiltonianParams& h, double t) {
  const double v = std::sin(2.0 * combination(s, h) * t);
  return v * v;
}

double eta_expansion(const HamiltonianParams& h, double eta, double t) {
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("eta must lie in [0, 1)");
  const double main = std::sin(2.0 * (h.c1 - h.c2) * t);
  const double sidebands = std::cos(4.0 * (h.c1 - h.c3) * t) - std::cos(4.0 * (h.c2 - h.c3) * t) +
                           std::cos(4.0 * (h.c1 + h.c3) * t) - std::cos(4.0 * (h.c2 + h.c3) * t);
  return main * main * (1.0 - 2.0 * eta) + 0.5 * eta * sidebands;
}

}  // namespace entmap
