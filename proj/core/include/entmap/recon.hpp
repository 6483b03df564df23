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

// Inversion of the four measured combination frequencies into Heisenberg
// coefficients, and the end-to-end characterisation pipeline.

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "entmap/experiment.hpp"
#include "entmap/qcore.hpp"

namespace entmap {

// w = (|c1 - c2|, |c1 + c2|, |c2 - c3|, |c2 + c3|) with absolute 1-sigma
// uncertainties in the same units.
struct FrequencyQuad {
  std::array<double, 4> w{};
  std::array<double, 4> sigma{};

  static FrequencyQuad from_hamiltonian(const HamiltonianParams& h);
};

inline constexpr const char* kSignConvention = "c2>=0";

struct ReconstructionResult {
  HamiltonianParams c_hat;
  std::array<double, 3> sigma{};  // absolute, rad/time
  std::string convention = kSignConvention;
  double residual = 0.0;          // ||A c - s w||, rad/time
  int candidates_considered = 0;  // distinct sign assignments tried
  std::array<int, 4> signs{};     // chosen s_k, w_k -> s_k w_k
  bool ambiguous = false;         // another solution fits equally well
};

// Canonical global sign: c2 > 0, or c2 == 0 and c3 > 0, or c2 == c3 == 0 and c1 >= 0.
HamiltonianParams canonical_sign(const HamiltonianParams& h);

// Least-squares solve over every sign assignment s in {+-1}^4 (zero
// frequencies contribute one sign). Keeps the minimum-residual solution in
// the c2 >= 0 convention and propagates sigma linearly. Throws
// InconsistentFrequencies when the best residual exceeds
// 3 * ||sigma|| (plus a 1e-9 relative floor).
ReconstructionResult invert_frequencies(const FrequencyQuad& q);

// Three-state solve with known signs: arguments are s1 w1 = c1 - c2,
// s2 w2 = c1 + c2, s3 w3 = c2 - c3.
HamiltonianParams invert_three_state(double s1w1, double s2w2, double s3w3);

struct Characterization {
  std::array<InputAnalysis, 4> runs;
  FrequencyQuad quad;
  ReconstructionResult result;
};

// Prepare, evolve, sample, estimate C^2, transform, refine, and invert for
// all four inputs. Each input uses its own RNG streams derived from seed, so
// the outcome is deterministic per seed regardless of execution order.
Characterization characterize(const HamiltonianParams& h_true,
                              const std::array<SamplingPlan, 4>& plans, std::uint64_t seed,
                              Mode mode = Mode::kSampled, double eta = 0.0,
                              const AnalysisOptions& options = {});

}  // namespace entmap
