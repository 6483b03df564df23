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

// Exact two-qubit dynamics for H = c1 XX + c2 YY + c3 ZZ (hbar = 1).
//
// Basis ordering throughout is |00>, |01>, |10>, |11> with qubit 1 the
// left (most significant) factor. All functions are pure.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace entmap {

using Complex = std::complex<double>;
using Amplitudes = Eigen::Vector4cd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-12;

struct HamiltonianParams {
  double c1 = 0.0;  // XX coupling, rad/time
  double c2 = 0.0;  // YY coupling
  double c3 = 0.0;  // ZZ coupling

  static HamiltonianParams ising(double j) { return {0.0, 0.0, j}; }
  static HamiltonianParams isotropic(double d) { return {d, d, d}; }

  bool is_finite() const;
  HamiltonianParams operator-() const { return {-c1, -c2, -c3}; }
  friend bool operator==(const HamiltonianParams&, const HamiltonianParams&) = default;
};

// Normalized four-component state vector.
class PureState {
 public:
  // Throws DomainError if |norm^2 - 1| > tol.
  static PureState from_amplitudes(const Amplitudes& amps, double tol = kNormTolerance);
  // Rescales to unit norm; throws DomainError on a zero or non-finite vector.
  static PureState normalized(const Amplitudes& amps);
  static PureState basis(int index);

  const Amplitudes& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_[i]; }

 private:
  explicit PureState(const Amplitudes& amps) : amps_(amps) {}
  Amplitudes amps_;
};

class TwoQubitUnitary {
 public:
  // Throws DomainError if U^dagger U differs from I by more than tol in any entry.
  static TwoQubitUnitary from_matrix(const Matrix4& m, double tol = kUnitaryTolerance);
  static TwoQubitUnitary identity();

  const Matrix4& matrix() const { return m_; }
  TwoQubitUnitary adjoint() const { return TwoQubitUnitary(m_.adjoint()); }
  PureState apply(const PureState& psi) const;

  friend TwoQubitUnitary operator*(const TwoQubitUnitary& a, const TwoQubitUnitary& b) {
    return TwoQubitUnitary(a.m_ * b.m_);
  }

 private:
  explicit TwoQubitUnitary(const Matrix4& m) : m_(m) {}
  Matrix4 m_;
};

// Bell states in the fixed order Phi+, Phi-, Psi+, Psi-.
enum class BellState { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

const std::array<Amplitudes, 4>& bell_states();

// Eigenvalues of H on the Bell states, in BellState order:
// (c1 - c2 + c3, -c1 + c2 + c3, c1 + c2 - c3, -c1 - c2 - c3).
struct BellSpectrum {
  std::array<double, 4> eigenvalues{};

  double operator[](BellState b) const { return eigenvalues[static_cast<int>(b)]; }
  double trace() const;
};

BellSpectrum bell_spectrum(const HamiltonianParams& h);

// Explicit 4x4 matrix built from Kronecker products of Pauli matrices.
Matrix4 hamiltonian_matrix(const HamiltonianParams& h);

// exp(-iHt) psi0 via phase rotation in the Bell basis. Negative t evolves
// backwards. Throws DomainError for non-finite t or h.
PureState evolve(const HamiltonianParams& h, const PureState& psi0, double t);

TwoQubitUnitary propagator(const HamiltonianParams& h, double t);

// Matrix exponential by scaling and squaring of the truncated power series.
// The series is cut once the next term's max-norm drops below 1e-16.
Matrix4 series_expm(const Matrix4& a);

// Independent reference for evolve(): series_expm(-iHt) on the explicit
// Pauli-product matrix. Used only to cross-check the closed form.
PureState oracle_evolve(const HamiltonianParams& h, const PureState& psi0, double t);

// |<psi*| YY |psi>|^2, clamped to [0, 1].
double concurrence_sq_exact(const PureState& psi);
// Validating overload: throws DomainError if |norm^2 - 1| > 1e-9.
double concurrence_sq_exact(const Amplitudes& psi);

// Square of the negativity, from the spectrum of the partial transpose.
double negativity_sq(const PureState& psi);
double negativity_sq(const Amplitudes& psi);

// The four protocol input states.
enum class InputState { kPsi1 = 0, kPsi2 = 1, kPsi3 = 2, kPsi4 = 3 };

inline constexpr std::array<InputState, 4> kAllInputs = {
    InputState::kPsi1, InputState::kPsi2, InputState::kPsi3, InputState::kPsi4};

std::string_view to_string(InputState s);
// Accepts "psi1".."psi4"; throws DomainError otherwise.
InputState parse_input_state(std::string_view name);
inline int index_of(InputState s) { return static_cast<int>(s); }

// Linear combination whose oscillation each input state isolates:
// c1 - c2, c1 + c2, c2 - c3, c2 + c3 for psi1..psi4.
double combination(InputState s, const HamiltonianParams& h);

// Closed-form squared concurrence sin^2(2 w t), w = combination(s, h).
double table1_prediction(InputState s, const HamiltonianParams& h, double t);

// First-order expansion in the preparation error eta of the psi1 squared
// concurrence. Throws DomainError unless 0 <= eta < 1.
double eta_expansion(const HamiltonianParams& h, double eta, double t);

}  // namespace entmap
