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

// Experiment orchestration behind the entmap command line: every command
// writes plot-ready CSV (17 significant digits, "# config_hash=" first
// line) and JSON artifacts into the output directory.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "entmap/config.hpp"
#include "entmap/gateerr.hpp"
#include "entmap/recon.hpp"

namespace entmap {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitInconsistent = 3,
  kExitIo = 4,
};

struct RunArtifacts {
  std::vector<std::filesystem::path> files;
  int exit_code = kExitOk;
  std::string message;  // one-line human summary
};

// Concrete plans for all four inputs: explicit dt, else plan_observation on
// omega_guess, else a coarse pre-pass on the simulated system. Inputs whose
// combination cannot be resolved borrow the smallest dt of the others.
std::array<SamplingPlan, 4> resolve_plans(const ExperimentConfig& config);

// series_<input>.csv: t,c2_estimate,shots_zz,shots_xz
RunArtifacts cmd_simulate(const ExperimentConfig& config);

// spectrum_<input>.csv: omega,magnitude, plus peaks.json. Reads the series
// files written by cmd_simulate from `series_dir` (default: config output)
// and rejects files whose config hash differs from this config's.
RunArtifacts cmd_spectrum(const ExperimentConfig& config,
                          const std::optional<std::filesystem::path>& series_dir = std::nullopt);

// Spectrum of explicit series files; their hashes must agree with each other.
RunArtifacts cmd_spectrum_files(const std::vector<std::filesystem::path>& series_files,
                                const std::filesystem::path& out_dir);

// summary.json; exit code kExitInconsistent on an inconsistent frequency set.
RunArtifacts cmd_characterize(const ExperimentConfig& config);

struct GateErrorOptions {
  std::vector<std::size_t> nts{10, 100};
  std::vector<std::uint64_t> ne_values;
  Gate gate = Gate::kIsingCnot;
  std::optional<double> p_target;
  std::filesystem::path output = "out";
};

// Parses "LO:HI[:COUNT]" (log-spaced, deduplicated) or "a,b,c". Throws
// ConfigError on an empty or malformed range.
std::vector<std::uint64_t> parse_ne_range(const std::string& text);

// gate_error_nt<nt>.csv: N,epsilon,p_eff and, with p_target, threshold.json.
RunArtifacts cmd_gate_error(const GateErrorOptions& options);

struct RobustnessRow {
  double eta = 0.0;
  double main_peak_omega = 0.0;     // refined C^2 peak position, rad/time
  double main_peak_shift_bins = 0.0;
  double main_peak_amp = 0.0;       // relative to the eta = 0 main amplitude
  std::array<double, 5> spurious{}; // relative amplitudes (joint tone fit), order of kSidebandNames
};

inline constexpr std::array<const char*, 5> kSidebandNames = {"c1+c2", "c2-c3", "c2+c3", "c1-c3",
                                                              "c1+c3"};

// Angular frequencies 4|w| of the five non-psi1 combinations, kSidebandNames order.
std::array<double, 5> sideband_frequencies(const HamiltonianParams& h);

// Plan used for the robustness sweep: every combination below Nyquist.
SamplingPlan robustness_plan(const ExperimentConfig& config);

// psi1 runs for every eta: exact C^2 in noiseless mode, sampled estimates otherwise.
std::vector<RobustnessRow> robustness_sweep(const ExperimentConfig& config);

// robustness.csv and eta_expansion.csv.
RunArtifacts cmd_robustness(const ExperimentConfig& config);

// Plain 17-significant-digit rendering used in every CSV.
std::string format_double(double v);

// Reads a series CSV back: returns the config hash and the series.
std::pair<std::string, ConcurrenceSeries> read_series_csv(const std::filesystem::path& path);

}  // namespace entmap
