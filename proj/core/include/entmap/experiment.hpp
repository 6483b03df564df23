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

// Single-input experiment: simulate a concurrence series for one protocol
// input state and reduce it to a frequency estimate.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "entmap/concest.hpp"
#include "entmap/qcore.hpp"
#include "entmap/spectral.hpp"

namespace entmap {

enum class Mode { kNoiseless, kSampled };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

// Prepare (with contamination eta), evolve to every plan time, and either
// evaluate the exact outcome tables (noiseless) or draw plan.shots_at(i)
// shots per point from the stream stream_seed(seed, s, i, channel).
ConcurrenceSeries simulate_series(const HamiltonianParams& h, InputState s,
                                  const SamplingPlan& plan, double eta, Mode mode,
                                  std::uint64_t seed);

// Exact C^2 of the prepared state (contamination eta) along the plan grid,
// the quantity the eta expansion describes. Shot counts are recorded as 0.
ConcurrenceSeries exact_concurrence_series(const HamiltonianParams& h, InputState s,
                                           const SamplingPlan& plan, double eta);

struct AnalysisOptions {
  Window window = Window::kNone;
  DetectionOptions detection;
};

struct InputAnalysis {
  InputState input = InputState::kPsi1;
  SamplingPlan plan;
  ConcurrenceSeries series{1.0, {}};
  Spectrum spectrum;
  std::optional<Peak> peak;      // empty: no oscillation detected
  FrequencyEstimate estimate;    // meaningful only when !degenerate
  bool degenerate = false;       // combination snapped to 0
  double omega = 0.0;            // |combination| estimate, rad/time
  double sigma = 0.0;            // absolute uncertainty of omega
};

// DFT, peak detection, and refinement. A missing peak or a refined
// C^2 frequency below one bin snaps the combination to 0 with a one-bin
// uncertainty (resolution / 4 in combination units).
InputAnalysis analyze_series(InputState s, const SamplingPlan& plan, ConcurrenceSeries series,
                             const AnalysisOptions& options = {});

}  // namespace entmap
