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

#include "entmap/gateerr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entmap/errors.hpp"
#include "entmap/spectral.hpp"

namespace entmap {

std::string_view to_string(Gate g) {
  switch (g) {
    case Gate::kIsingCnot: return "ising";
    case Gate::kHeisenbergSqrtSwap: return "heisenberg";
    case Gate::kCustom: return "custom";
  }
  return "?";
}

Gate parse_gate(std::string_view name) {
  if (name == "ising" || name == "ising_cnot") return Gate::kIsingCnot;
  if (name == "heisenberg" || name == "heisenberg_sqrtswap") return Gate::kHeisenbergSqrtSwap;
  throw DomainError("unknown gate '" + std::string(name) + "' (expected ising|heisenberg)");
}

double effective_error(const TwoQubitUnitary& u_im, const TwoQubitUnitary& u) {
  TwoQubitUnitary::from_matrix(u_im.matrix(), 1e-9);
  TwoQubitUnitary::from_matrix(u.matrix(), 1e-9);
  const Complex tr = (u_im.matrix() * u.matrix().adjoint()).trace();
  return std::clamp(1.0 - std::norm(tr / 4.0), 0.0, 1.0);
}

double ising_cnot_perr(double epsilon) {
  const double s = std::sin(std::numbers::pi * epsilon / 4.0);
  return s * s;
}

double heisenberg_sqrtswap_perr(double epsilon) { return 0.75 * ising_cnot_perr(epsilon); }

double gate_perr(Gate g, double epsilon) {
  switch (g) {
    case Gate::kIsingCnot: return ising_cnot_perr(epsilon);
    case Gate::kHeisenbergSqrtSwap: return heisenberg_sqrtswap_perr(epsilon);
    case Gate::kCustom: break;
  }
  throw DomainError("custom gates have no closed-form error probability");
}

std::pair<TwoQubitUnitary, TwoQubitUnitary> ising_pulse_pair(double j, double epsilon) {
  const HamiltonianParams h = HamiltonianParams::ising(j);
  const double t_gate = std::numbers::pi / (4.0 * j);
  return {propagator(h, t_gate), propagator(h, t_gate * (1.0 + epsilon))};
}

std::pair<TwoQubitUnitary, TwoQubitUnitary> sqrtswap_pulse_pair(double d, double epsilon) {
  const HamiltonianParams h = HamiltonianParams::isotropic(d);
  const double t_gate = std::numbers::pi / (8.0 * d);
  return {propagator(h, t_gate), propagator(h, t_gate * (1.0 + epsilon))};
}

std::vector<GateErrorReport> budget_curve(std::size_t nt, std::span<const std::uint64_t> ne_values,
                                          Gate gate) {
  if (nt < 4) throw DomainError("budget curve needs nt >= 4");
  std::vector<GateErrorReport> out;
  out.reserve(ne_values.size());
  for (std::uint64_t ne : ne_values) {
    if (ne == 0) throw DomainError("Ne must be >= 1");
    GateErrorReport r;
    r.gate = gate;
    r.epsilon = fractional_uncertainty(nt, static_cast<double>(ne));
    r.p_eff = gate_perr(gate, r.epsilon);
    r.budget = Budget{nt, ne, 2 * nt + 2 * ne};
    out.push_back(r);
  }
  return out;
}

Budget measurements_for_threshold(double p_target, std::size_t nt, Gate gate) {
  if (!(p_target > 0.0 && p_target <= 1.0)) throw DomainError("p_target must lie in (0, 1]");
  if (nt < 4) throw DomainError("threshold solve needs nt >= 4");
  auto meets = [&](std::uint64_t ne) {
    return gate_perr(gate, fractional_uncertainty(nt, static_cast<double>(ne))) <= p_target;
  };
  // Closed-form estimate, then walk to the exact integer boundary; p_eff is
  // monotone in Ne for eps <= 1.
  const double scale = gate == Gate::kHeisenbergSqrtSwap ? 0.75 : 1.0;
  std::uint64_t ne = 1;
  if (p_target < scale) {
    const double eps = 4.0 / std::numbers::pi * std::asin(std::sqrt(p_target / scale));
    const double root = 4.0 / (static_cast<double>(nt) * eps);
    ne = static_cast<std::uint64_t>(std::max(1.0, std::floor(root * root)));
  }
  while (ne > 1 && meets(ne - 1)) --ne;
  while (!meets(ne)) ++ne;
  return {nt, ne, 2 * nt + 2 * ne};
}

}  // namespace entmap
