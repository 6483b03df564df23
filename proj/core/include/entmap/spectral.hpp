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

// Frequency extraction from a concurrence series: Nyquist-safe sampling
// plans, a real-input DFT, peak picking, and least-squares refinement.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "entmap/concest.hpp"
#include "entmap/plan.hpp"

namespace entmap {

// Ratio between the Nyquist frequency and the fastest expected component.
inline constexpr double kNyquistMargin = 1.25;

// Largest dt that keeps the 4 * omega_guess component of C^2 below
// Nyquist / kNyquistMargin. Throws DomainError unless omega_guess > 0.
double max_time_step(double omega_guess);

// Endpoint plans: the largest dt <= max_time_step(omega_guess) that puts
// C^2 at t_ob = nt dt on mid-slope (4 omega t_ob = pi/2 mod pi), where the
// endpoint shots are most sensitive to the frequency.
double endpoint_time_step(double omega_guess, std::size_t nt);

// Uniform: dt = max_time_step(omega_guess). Endpoint: dt =
// endpoint_time_step, `ne` is the endpoint count, interior points get 2
// shots, and omega_guess becomes the plan's omega_prior.
SamplingPlan plan_observation(double omega_guess, std::size_t nt, std::uint64_t ne,
                              Strategy strategy);

// Lower bound on the fractional frequency uncertainty, 4 / (nt sqrt(ne)).
double fractional_uncertainty(std::size_t nt, double ne);

enum class Window { kNone, kHann };

struct Spectrum {
  std::vector<double> omega;      // bin centres, rad/time; omega[k] = k * resolution
  std::vector<double> magnitude;  // |X_k| of the mean-subtracted series
  double resolution = 0.0;        // 2 pi / (nt dt)
  std::size_t samples = 0;

  std::size_t size() const { return omega.size(); }
};

// One-sided magnitude spectrum (floor(n/2) + 1 bins) of the mean-subtracted
// series. Throws DomainError for fewer than 4 points.
Spectrum dft(const ConcurrenceSeries& series, Window window = Window::kNone);

struct Peak {
  std::size_t bin = 0;
  double omega = 0.0;
  double magnitude = 0.0;
};

// Largest bin above the DC bin and its neighbour; ties go to the lower bin.
// Empty when every candidate bin is exactly zero.
std::optional<Peak> find_peak(const Spectrum& spectrum);

struct DetectionOptions {
  // Peak must exceed this multiple of the median candidate magnitude.
  double min_peak_to_median = 5.0;
  // Peak must correspond to a cosine amplitude (2 |X| / n) at least this large.
  double min_amplitude = 1e-6;
};

// find_peak plus a noise-floor test; empty means "no oscillation detected".
std::optional<Peak> detect_oscillation(const Spectrum& spectrum, const DetectionOptions& options = {});

struct FrequencyEstimate {
  double omega_hat = 0.0;        // parameter combination |c_i +- c_j|, rad/time
  double delta_f_over_f = 0.0;   // fractional uncertainty attached to omega_hat
  double raw_peak_omega = 0.0;   // DFT peak the fit started from
  double amplitude = 0.0;        // fitted a in a sin^2(2 omega t) + b
  double offset = 0.0;           // fitted b
  bool converged = false;        // false: coarse fallback with one-bin uncertainty
  int iterations = 0;
};

// Uniform plans: weighted least-squares fit of a sin^2(v t) + b started at
// v = coarse / 2. Endpoint plans: the amplitude is fixed by the estimator's
// finite-shot mean k_i sin^2(v t_i), k_i = 1 - 1/n_i, and v is confined to
// a window around 2 * omega_prior of half-width pi / (4 t_ob), a quarter
// fringe, which excludes the mirror solution of a mid-slope endpoint.
// Without a prior the window is the full fringe around coarse / 2. Weights are the per-point shot counts (1 for exact
// series). Reports omega_hat = v / 2. On non-convergence falls back to
// coarse / 4 with a one-bin uncertainty, or with a prior to the minimum on
// the window edge with the window half-width, and sets converged = false.
FrequencyEstimate refine_frequency(const ConcurrenceSeries& series, double coarse,
                                   const SamplingPlan& plan);

// Amplitude of the cosine component at angular frequency omega,
// (2 / n) |sum_i (y_i - mean) exp(-i omega t_i)|.
double tone_amplitude(const ConcurrenceSeries& series, double omega);

// Joint least-squares fit of an offset plus one cosine per listed angular
// frequency; returns each tone's amplitude. Unlike tone_amplitude this does
// not leak a strong tone into its neighbours. Zero frequencies report 0.
std::vector<double> fit_tone_amplitudes(const ConcurrenceSeries& series, std::span<const double> omegas);

}  // namespace entmap
