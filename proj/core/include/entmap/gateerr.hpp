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

// Gate-error budget: effective error probability of a miscalibrated pulse
// and the measurement budget needed to reach a target error rate.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "entmap/qcore.hpp"

namespace entmap {

enum class Gate { kIsingCnot, kHeisenbergSqrtSwap, kCustom };

std::string_view to_string(Gate g);
Gate parse_gate(std::string_view name);  // "ising" | "heisenberg"

struct Budget {
  std::size_t nt = 0;
  std::uint64_t ne = 0;
  std::uint64_t n = 0;  // 2 nt + 2 ne
};

struct GateErrorReport {
  double epsilon = 0.0;
  double p_eff = 0.0;
  Gate gate = Gate::kCustom;
  std::optional<Budget> budget;
};

// p_eff = 1 - |Tr(U_im U^dagger) / 4|^2, clamped to [0, 1]. Both arguments
// are re-checked for unitarity to 1e-9.
double effective_error(const TwoQubitUnitary& u_im, const TwoQubitUnitary& u);

// sin^2(pi eps / 4): Ising pulse of length pi (1 + eps) / (4 J).
double ising_cnot_perr(double epsilon);
// (3/4) sin^2(pi eps / 4): isotropic pulse of length pi (1 + eps) / (8 d).
double heisenberg_sqrtswap_perr(double epsilon);
double gate_perr(Gate g, double epsilon);

// Ideal and miscalibrated propagators {U, U_im} for the two native gates.
std::pair<TwoQubitUnitary, TwoQubitUnitary> ising_pulse_pair(double j, double epsilon);
std::pair<TwoQubitUnitary, TwoQubitUnitary> sqrtswap_pulse_pair(double d, double epsilon);

// eps = 4 / (nt sqrt(Ne)) and N = 2 nt + 2 Ne for every Ne. Throws
// DomainError for nt < 4, a zero Ne, or a gate without a closed form.
std::vector<GateErrorReport> budget_curve(std::size_t nt, std::span<const std::uint64_t> ne_values,
                                          Gate gate = Gate::kIsingCnot);

// Smallest Ne with gate_perr(eps(nt, Ne)) <= p_target, 0 < p_target <= 1.
Budget measurements_for_threshold(double p_target, std::size_t nt, Gate gate = Gate::kIsingCnot);

}  // namespace entmap
