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

// Measurement side of the protocol: input preparation, outcome
// probabilities for a pair of single-qubit bases, and seeded shot sampling.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "entmap/qcore.hpp"

namespace entmap {

enum class Axis { kX, kZ };

struct BasisPair {
  Axis first = Axis::kZ;   // qubit 1
  Axis second = Axis::kZ;  // qubit 2

  static constexpr BasisPair zz() { return {Axis::kZ, Axis::kZ}; }
  static constexpr BasisPair xz() { return {Axis::kX, Axis::kZ}; }
  std::string name() const;
  friend bool operator==(const BasisPair&, const BasisPair&) = default;
};

// Outcome (lambda1, lambda2) in {+,-}^2, stored as index 2*[lambda1 == -] + [lambda2 == -]:
// ++ -> 0, +- -> 1, -+ -> 2, -- -> 3. For the Z axis '+' is |0>.
class ProbTable {
 public:
  ProbTable() = default;
  // Throws DomainError if any entry is outside [0, 1] or the sum is off by > tol.
  static ProbTable from_array(const std::array<double, 4>& p, double tol = kNormTolerance);

  double pp() const { return p_[0]; }
  double pm() const { return p_[1]; }
  double mp() const { return p_[2]; }
  double mm() const { return p_[3]; }
  double operator[](int i) const { return p_[i]; }
  const std::array<double, 4>& values() const { return p_; }

 private:
  explicit ProbTable(const std::array<double, 4>& p) : p_(p) {}
  std::array<double, 4> p_{1.0, 0.0, 0.0, 0.0};
};

struct OutcomeCounts {
  std::array<std::uint64_t, 4> counts{};

  std::uint64_t shots() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

struct PrepSpec {
  InputState input = InputState::kPsi1;
  double eta = 0.0;  // contamination probability, 0 <= eta < 1
};

// psi1 = |00>, psi2 = |01>, psi3 = H(x)H |00>, psi4 = H(x)H |01>.
// With eta > 0 the computational seed |a b> becomes
// (|a b> + sqrt(eta) |a, 1-b>) / sqrt(1 + eta) before the Hadamards.
PureState prepare_input(const PrepSpec& spec);

ProbTable outcome_probs(const PureState& psi, BasisPair basis);
ProbTable outcome_probs(const Amplitudes& psi, BasisPair basis);  // validates norm to 1e-9

using Rng = std::mt19937_64;

// Seed for the stream of one (input, time point, channel) cell of an experiment.
std::uint64_t stream_seed(std::uint64_t master, InputState input, std::uint64_t time_index,
                          int channel);

// Multinomial draw of `shots` outcomes. Throws DomainError for shots == 0.
OutcomeCounts sample_counts(const ProbTable& p, std::uint64_t shots, Rng& rng);
OutcomeCounts sample_counts(const ProbTable& p, std::uint64_t shots, std::uint64_t seed);

ProbTable empirical_probs(const OutcomeCounts& counts);

}  // namespace entmap
