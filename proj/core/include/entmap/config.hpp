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

// Experiment configuration: a single JSON document, validated with
// line-precise error messages.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entmap/experiment.hpp"
#include "entmap/plan.hpp"
#include "entmap/qcore.hpp"
#include "entmap/spectral.hpp"

namespace entmap {

// Sampling request for one input state. dt wins over omega_guess; with
// neither, the runner derives omega_guess from a coarse pre-pass.
struct PlanSpec {
  std::size_t nt = 200;
  std::uint64_t ne = 10;
  Strategy strategy = Strategy::kUniform;
  std::optional<double> dt;
  std::optional<double> omega_guess;
};

// Default window covers several periods of slow combinations; Nyquist
// admits 4 |c_i +- c_j| up to ~31 rad/time.
struct PrepassSpec {
  std::size_t nt = 128;
  double dt = 0.1;
  std::uint64_t ne = 100;
};

struct RobustnessSpec {
  std::vector<double> eta_values{0.0, 0.01, 0.02, 0.05};
  std::size_t nt = 2048;
  std::uint64_t ne = 1000;
  std::optional<double> dt;
  std::size_t expansion_points = 200;
};

struct ExperimentConfig {
  HamiltonianParams hamiltonian;
  std::array<PlanSpec, 4> plans;
  PrepassSpec prepass;
  RobustnessSpec robustness;
  double eta = 0.0;
  std::uint64_t seed = 0;
  Mode mode = Mode::kSampled;
  Window window = Window::kNone;
  std::string output = "out";
};

// Throws ConfigError with "<source>:<line>: <json pointer>: <problem>".
ExperimentConfig parse_config(std::string_view text, std::string_view source = "config");
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON (sorted keys) of the effective configuration.
std::string config_to_json(const ExperimentConfig& config);
// 16 hex digits of FNV-1a 64 over config_to_json.
std::string config_hash(const ExperimentConfig& config);
std::string fnv1a_hex(std::string_view bytes);

// Line of each JSON value, keyed by JSON pointer ("" is the root).
std::vector<std::pair<std::string, int>> json_pointer_lines(std::string_view text);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<Mode> mode;
  std::optional<std::string> output;
};

// Seed precedence: --seed flag, then ENTMAP_SEED (env_seed), then the file.
void apply_overrides(ExperimentConfig& config, const Overrides& flags,
                     const char* env_seed);

}  // namespace entmap
