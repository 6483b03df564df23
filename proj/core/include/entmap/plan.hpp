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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace entmap {

enum class Strategy { kUniform, kEndpoint };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

// Time grid and shot allocation for one input state. Time point i (0-based)
// sits at t = (i + 1) * dt, so the observation time t_ob is the last sample.
//
// Uniform: ne_per_point shots at every point.
// Endpoint: 2 shots at every point and ne_endpoint extra shots at each of the
// final two points, so the budget is exactly 2 * nt + 2 * ne_endpoint.
struct SamplingPlan {
  std::size_t nt = 0;
  double dt = 0.0;
  std::uint64_t ne_per_point = 1;
  Strategy strategy = Strategy::kUniform;
  std::uint64_t ne_endpoint = 0;
  // Endpoint only: prior |combination| estimate that selects the fringe the
  // endpoint fit is confined to. 0 leaves the choice to the DFT peak.
  double omega_prior = 0.0;

  // Throws DomainError on nt < 4, dt <= 0, a zero shot count, or a bad prior.
  void validate() const;

  double time(std::size_t i) const { return static_cast<double>(i + 1) * dt; }
  double t_ob() const { return static_cast<double>(nt) * dt; }
  std::uint64_t shots_at(std::size_t i) const;
  std::uint64_t total_shots() const;
  // Ne entering the fractional-uncertainty law.
  std::uint64_t effective_ne() const;
  // Angular frequency spacing of the DFT over this grid.
  double resolution() const;
};

}  // namespace entmap
