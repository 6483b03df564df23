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

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <vector>

#include "entmap/errors.hpp"
#include "entmap/gateerr.hpp"
#include "entmap/spectral.hpp"
#include "support.hpp"

namespace entmap {
namespace {

using testing::Gen;
constexpr double kPi = std::numbers::pi;

double closed_ising(double eps) { return std::pow(std::sin(kPi * eps / 4), 2); }

// Smallest Ne whose error reaches the target, by linear scan.
std::uint64_t brute_force_ne(double p_target, std::size_t nt, Gate gate) {
  for (std::uint64_t ne = 1;; ++ne)
    if (gate_perr(gate, 4.0 / (static_cast<double>(nt) * std::sqrt(static_cast<double>(ne)))) <= p_target) return ne;
}

TEST(EffectiveError, PerfectGateAndGlobalPhase) {
  Gen g(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = TwoQubitUnitary::from_matrix(g.unitary4(), 1e-10);
    EXPECT_NEAR(effective_error(u, u), 0.0, 1e-14);
    const auto phased = TwoQubitUnitary::from_matrix(std::polar(1.0, g.uniform(-kPi, kPi)) * u.matrix(), 1e-10);
    EXPECT_NEAR(effective_error(phased, u), 0.0, 1e-14);
  }
}

TEST(EffectiveError, ConjugationInvariance) {
  Gen g(72);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix4 a = g.unitary4(), b = g.unitary4(), v = g.unitary4();
    const auto ua = TwoQubitUnitary::from_matrix(a, 1e-10), ub = TwoQubitUnitary::from_matrix(b, 1e-10);
    const auto va = TwoQubitUnitary::from_matrix(v * a * v.adjoint(), 1e-10);
    const auto vb = TwoQubitUnitary::from_matrix(v * b * v.adjoint(), 1e-10);
    const double p = effective_error(ua, ub);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    EXPECT_NEAR(effective_error(va, vb), p, 1e-12);
  }
}

TEST(EffectiveError, IsingPulseAgainstIndependentExpm) {
  const double j = 0.8, eps = 0.01;
  Matrix4 zz = Matrix4::Zero();
  zz.diagonal() << 1, -1, -1, 1;
  const Complex i{0, 1};
  const Matrix4 u = Matrix4((-i * j * kPi / (4 * j)) * zz).exp();
  const Matrix4 u_im = Matrix4((-i * j * kPi * (1 + eps) / (4 * j)) * zz).exp();
  const double p = effective_error(TwoQubitUnitary::from_matrix(u_im, 1e-12), TwoQubitUnitary::from_matrix(u, 1e-12));
  EXPECT_NEAR(p, 6.1685e-5, 5e-9);
  EXPECT_NEAR(p, closed_ising(eps), 1e-12);
}

TEST(ClosedForms, MatchTraceFormula) {
  for (double eps : {1e-3, 1e-2, 1e-1, 0.25, -0.05}) {
    for (double j : {0.3, 1.0, 2.7}) {
      const auto [u, u_im] = ising_pulse_pair(j, eps);
      EXPECT_NEAR(effective_error(u_im, u), ising_cnot_perr(eps), 1e-12);
      const auto [v, v_im] = sqrtswap_pulse_pair(j, eps);
      EXPECT_NEAR(effective_error(v_im, v), heisenberg_sqrtswap_perr(eps), 1e-12);
    }
    EXPECT_NEAR(ising_cnot_perr(eps), closed_ising(eps), 1e-16);
    EXPECT_NEAR(heisenberg_sqrtswap_perr(eps), 0.75 * closed_ising(eps), 1e-16);
    EXPECT_LE(heisenberg_sqrtswap_perr(eps), ising_cnot_perr(eps));
  }
}

TEST(ClosedForms, Examples) {
  EXPECT_EQ(ising_cnot_perr(0.0), 0.0);
  EXPECT_EQ(heisenberg_sqrtswap_perr(0.0), 0.0);
  EXPECT_NEAR(ising_cnot_perr(0.012732), 1e-4, 1e-6);
  EXPECT_NEAR(heisenberg_sqrtswap_perr(0.01), 4.6264e-5, 5e-9);
  EXPECT_THROW(gate_perr(Gate::kCustom, 0.1), DomainError);
}

TEST(ClosedForms, IdealPulsesMakeTheGates) {
  // Ising quarter-period pulse is diag(e^{-i pi/4}, e^{i pi/4}, e^{i pi/4}, e^{-i pi/4}).
  const auto [u, unused] = ising_pulse_pair(1.3, 0.0);
  const Complex i{0, 1};
  EXPECT_NEAR(std::abs(u.matrix()(0, 0) - std::exp(-i * kPi / 4.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(u.matrix()(1, 1) - std::exp(i * kPi / 4.0)), 0.0, 1e-13);
  // Two sqrt-SWAP pulses make a SWAP up to global phase.
  const auto [v, unused2] = sqrtswap_pulse_pair(0.9, 0.0);
  const Matrix4 sw = (v * v).matrix();
  Matrix4 swap = Matrix4::Zero();
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  EXPECT_NEAR(std::abs((swap.adjoint() * sw).trace()) / 4.0, 1.0, 1e-12);
}

TEST(BudgetCurve, Examples) {
  const std::vector<std::uint64_t> ten{10};
  const auto r = budget_curve(200, ten);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].epsilon, 6.3246e-3, 1e-7);
  EXPECT_EQ(r[0].budget->n, 420u);

  const std::vector<std::uint64_t> big{4990};
  const auto t = budget_curve(10, big);
  EXPECT_EQ(t[0].budget->n, 10000u);
  const double eps = 4.0 / (10.0 * std::sqrt(4990.0));
  EXPECT_NEAR(t[0].epsilon, eps, 1e-15);
  EXPECT_NEAR(t[0].epsilon, 5.66252e-3, 1e-8);
  EXPECT_NEAR(t[0].p_eff, 1.98e-5, 5e-8);
  EXPECT_LT(t[0].p_eff, 1e-4);
}

TEST(BudgetCurve, EpsilonAxisIsTheFractionalUncertainty) {
  std::vector<std::uint64_t> nes;
  for (std::uint64_t ne = 1; ne < 200000; ne = ne * 3 + 1) nes.push_back(ne);
  for (std::size_t nt : {10u, 100u}) {
    const auto curve = budget_curve(nt, nes, Gate::kHeisenbergSqrtSwap);
    for (std::size_t k = 0; k < curve.size(); ++k) {
      EXPECT_EQ(curve[k].epsilon, fractional_uncertainty(nt, static_cast<double>(nes[k])));
      EXPECT_EQ(curve[k].budget->n, 2 * nt + 2 * nes[k]);
    }
  }
}

TEST(BudgetCurve, MonotoneInNeAndNt) {
  std::vector<std::uint64_t> nes;
  for (std::uint64_t ne = 1; ne <= 100000; ne *= 2) nes.push_back(ne);
  for (Gate gate : {Gate::kIsingCnot, Gate::kHeisenbergSqrtSwap}) {
    const auto a = budget_curve(10, nes, gate);
    const auto b = budget_curve(100, nes, gate);
    for (std::size_t k = 0; k < nes.size(); ++k) {
      if (k > 0) {
        EXPECT_LE(a[k].p_eff, a[k - 1].p_eff);
        EXPECT_LE(b[k].p_eff, b[k - 1].p_eff);
      }
      EXPECT_LE(b[k].p_eff, a[k].p_eff);
      EXPECT_GE(a[k].p_eff, 0.0);
      EXPECT_LE(a[k].p_eff, closed_ising(a[k].epsilon));
    }
  }
}

TEST(BudgetCurve, Validation) {
  const std::vector<std::uint64_t> zero{0}, one{1};
  EXPECT_THROW(budget_curve(10, zero), DomainError);
  EXPECT_THROW(budget_curve(3, one), DomainError);
  EXPECT_THROW(budget_curve(10, one, Gate::kCustom), DomainError);
}

TEST(Threshold, PaperBudgetIsMinimalScan) {
  const auto b = measurements_for_threshold(1e-4, 10, Gate::kIsingCnot);
  EXPECT_EQ(b.ne, brute_force_ne(1e-4, 10, Gate::kIsingCnot));
  EXPECT_EQ(b.ne, 987u);
  EXPECT_EQ(b.n, 1994u);
  EXPECT_LE(ising_cnot_perr(fractional_uncertainty(10, 987)), 1e-4);
  EXPECT_GT(ising_cnot_perr(fractional_uncertainty(10, 986)), 1e-4);
  EXPECT_LT(b.n, 10000u);
}

TEST(Threshold, MatchesBruteForceScan) {
  for (Gate gate : {Gate::kIsingCnot, Gate::kHeisenbergSqrtSwap})
    for (std::size_t nt : {4u, 10u, 37u, 100u})
      for (double p : {1e-2, 3e-3, 1e-3, 1e-4, 2.5e-5}) {
        const auto b = measurements_for_threshold(p, nt, gate);
        EXPECT_EQ(b.ne, brute_force_ne(p, nt, gate)) << nt << " " << p;
        EXPECT_EQ(b.n, 2 * nt + 2 * b.ne);
      }
}

TEST(Threshold, Limits) {
  EXPECT_EQ(measurements_for_threshold(1.0, 10).ne, 1u);
  EXPECT_THROW(measurements_for_threshold(0.0, 10), DomainError);
  EXPECT_THROW(measurements_for_threshold(1.5, 10), DomainError);
  EXPECT_EQ(parse_gate("ising"), Gate::kIsingCnot);
  EXPECT_EQ(parse_gate("heisenberg"), Gate::kHeisenbergSqrtSwap);
}

}  // namespace
}  // namespace entmap
