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

#include "entmap/experiment.hpp"

#include <algorithm>

#include "entmap/errors.hpp"
#include "entmap/measure.hpp"

namespace entmap {

std::string_view to_string(Mode m) { return m == Mode::kNoiseless ? "noiseless" : "sampled"; }

Mode parse_mode(std::string_view name) {
  if (name == "noiseless") return Mode::kNoiseless;
  if (name == "sampled") return Mode::kSampled;
  throw DomainError("unknown mode '" + std::string(name) + "' (expected noiseless|sampled)");
}

ConcurrenceSeries simulate_series(const HamiltonianParams& h, InputState s,
                                  const SamplingPlan& plan, double eta, Mode mode,
                                  std::uint64_t seed) {
  plan.validate();
  const PureState psi0 = prepare_input({s, eta});
  const BasisPair channel = required_channel(s);
  const int channel_index = channel == BasisPair::zz() ? 0 : 1;

  if (mode == Mode::kNoiseless) {
    std::vector<PointTables> tables(plan.nt);
    for (std::size_t i = 0; i < plan.nt; ++i) {
      const ProbTable p = outcome_probs(evolve(h, psi0, plan.time(i)), channel);
      (channel_index == 0 ? tables[i].zz : tables[i].xz) = p;
    }
    return build_series(plan, s, std::span<const PointTables>(tables));
  }

  std::vector<PointCounts> counts(plan.nt);
  for (std::size_t i = 0; i < plan.nt; ++i) {
    const ProbTable p = outcome_probs(evolve(h, psi0, plan.time(i)), channel);
    const OutcomeCounts c = sample_counts(p, plan.shots_at(i), stream_seed(seed, s, i, channel_index));
    (channel_index == 0 ? counts[i].zz : counts[i].xz) = c;
  }
  return build_series(plan, s, std::span<const PointCounts>(counts));
}

ConcurrenceSeries exact_concurrence_series(const HamiltonianParams& h, InputState s,
                                           const SamplingPlan& plan, double eta) {
  plan.validate();
  const PureState psi0 = prepare_input({s, eta});
  std::vector<ConcurrencePoint> points(plan.nt);
  for (std::size_t i = 0; i < plan.nt; ++i) {
    points[i].time = plan.time(i);
    points[i].c2_estimate = std::clamp(concurrence_sq_exact(evolve(h, psi0, plan.time(i))), 0.0, 1.0);
  }
  return ConcurrenceSeries(plan.dt, std::move(points));
}

InputAnalysis analyze_series(InputState s, const SamplingPlan& plan, ConcurrenceSeries series,
                             const AnalysisOptions& options) {
  InputAnalysis out;
  out.input = s;
  out.plan = plan;
  out.spectrum = dft(series, options.window);
  out.peak = detect_oscillation(out.spectrum, options.detection);
  out.series = std::move(series);

  const double bin = out.spectrum.resolution;
  // An endpoint prior outranks the detector, which has few bins to work with.
  const bool prior = plan.strategy == Strategy::kEndpoint && plan.omega_prior > 0.0;
  if (prior && !out.peak) out.peak = find_peak(out.spectrum);
  bool oscillating = out.peak.has_value() || prior;
  if (oscillating) {
    const double coarse = out.peak ? out.peak->omega : 4.0 * plan.omega_prior;
    out.estimate = refine_frequency(out.series, coarse, plan);
    if (4.0 * out.estimate.omega_hat < bin) oscillating = false;
  }
  if (!oscillating) {
    out.peak.reset();
    out.degenerate = true;
    out.omega = 0.0;
    out.sigma = bin / 4.0;
    return out;
  }
  out.omega = out.estimate.omega_hat;
  out.sigma = out.estimate.omega_hat * out.estimate.delta_f_over_f;
  return out;
}

}  // namespace entmap
