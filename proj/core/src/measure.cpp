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

#include "entmap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entmap/errors.hpp"

namespace entmap {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hadamard on the qubits whose axis is X.
Amplitudes rotate_to_z(const Amplitudes& psi, BasisPair basis) {
  const double r = std::numbers::sqrt2 / 2.0;
  Amplitudes out = psi;
  if (basis.first == Axis::kX) {
    const Amplitudes in = out;
    for (int b = 0; b < 2; ++b) {
      out[b] = r * (in[b] + in[2 + b]);
      out[2 + b] = r * (in[b] - in[2 + b]);
    }
  }
  if (basis.second == Axis::kX) {
    const Amplitudes in = out;
    for (int a = 0; a < 2; ++a) {
      out[2 * a] = r * (in[2 * a] + in[2 * a + 1]);
      out[2 * a + 1] = r * (in[2 * a] - in[2 * a + 1]);
    }
  }
  return out;
}

}  // namespace

std::string BasisPair::name() const {
  std::string s;
  s += first == Axis::kX ? 'X' : 'Z';
  s += second == Axis::kX ? 'X' : 'Z';
  return s;
}

ProbTable ProbTable::from_array(const std::array<double, 4>& p, double tol) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -tol && v <= 1.0 + tol)) throw DomainError("probability outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) throw DomainError("probability table does not sum to 1");
  std::array<double, 4> clamped = p;
  for (double& v : clamped) v = std::clamp(v, 0.0, 1.0);
  return ProbTable(clamped);
}

PureState prepare_input(const PrepSpec& spec) {
  if (!(spec.eta >= 0.0 && spec.eta < 1.0)) throw DomainError("eta must lie in [0, 1)");
  const int a = 0;
  const int b = (spec.input == InputState::kPsi2 || spec.input == InputState::kPsi4) ? 1 : 0;
  Amplitudes seed = Amplitudes::Zero();
  seed[2 * a + b] = 1.0;
  seed[2 * a + (1 - b)] = std::sqrt(spec.eta);
  seed /= std::sqrt(1.0 + spec.eta);
  if (spec.input == InputState::kPsi3 || spec.input == InputState::kPsi4)
    seed = rotate_to_z(seed, {Axis::kX, Axis::kX});  // H (x) H
  return PureState::normalized(seed);
}

ProbTable outcome_probs(const Amplitudes& psi, BasisPair basis) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) throw DomainError("state is not normalized");
  const Amplitudes r = rotate_to_z(psi, basis);
  std::array<double, 4> p{};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += (p[i] = std::norm(r[i]));
  for (double& v : p) v /= sum;
  return ProbTable::from_array(p);
}

ProbTable outcome_probs(const PureState& psi, BasisPair basis) {
  return outcome_probs(psi.amplitudes(), basis);
}

std::uint64_t stream_seed(std::uint64_t master, InputState input, std::uint64_t time_index,
                          int channel) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(index_of(input)));
  h = splitmix64(h ^ time_index);
  return splitmix64(h ^ static_cast<std::uint64_t>(channel));
}

OutcomeCounts sample_counts(const ProbTable& p, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw DomainError("shots must be >= 1");
  OutcomeCounts out;
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (int i = 0; i < 3 && remaining > 0; ++i) {
    const double q = mass > 0.0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 0.0;
    std::uint64_t k = 0;
    if (q >= 1.0) {
      k = remaining;
    } else if (q > 0.0) {
      std::binomial_distribution<std::uint64_t> draw(remaining, q);
      k = draw(rng);
    }
    out.counts[i] = k;
    remaining -= k;
    mass -= p[i];
  }
  out.counts[3] = remaining;
  return out;
}

OutcomeCounts sample_counts(const ProbTable& p, std::uint64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  return sample_counts(p, shots, rng);
}

ProbTable empirical_probs(const OutcomeCounts& counts) {
  const std::uint64_t n = counts.shots();
  if (n == 0) throw DomainError("empirical probabilities need at least one shot");
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = static_cast<double>(counts.counts[i]) / static_cast<double>(n);
  return ProbTable::from_array(p, 1e-12);
}

}  // namespace entmap
