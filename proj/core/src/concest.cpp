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

#include "entmap/concest.hpp"

#include <algorithm>
#include <cmath>

#include "entmap/errors.hpp"

namespace entmap {
namespace {

// (2 p_x - p_a - p_b) / (2 sqrt(p_a p_b)), 0 on a vanishing denominator.
double channel_cosine(double p_x, double p_a, double p_b) {
  const double denom = 2.0 * std::sqrt(p_a * p_b);
  if (denom == 0.0) return 0.0;
  return std::clamp((2.0 * p_x - p_a - p_b) / denom, -1.0, 1.0);
}

double cos_sum(double cos_a, double cos_b) {
  const double sin_a = std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
  const double sin_b = std::sqrt(std::max(0.0, 1.0 - cos_b * cos_b));
  return cos_a * cos_b - sin_a * sin_b;
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ConcurrenceSeries::ConcurrenceSeries(double dt, std::vector<ConcurrencePoint> points)
    : dt_(dt), points_(std::move(points)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw DomainError("series time step must be positive");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.c2_estimate >= 0.0 && p.c2_estimate <= 1.0))
      throw DomainError("concurrence estimate outside [0, 1] at index " + std::to_string(i));
    if (i > 0 && std::abs(p.time - points_[i - 1].time - dt_) > 1e-9 * dt_)
      throw DomainError("series is not uniformly spaced at index " + std::to_string(i));
  }
}

std::vector<double> ConcurrenceSeries::times() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.time);
  return out;
}

std::vector<double> ConcurrenceSeries::values() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.c2_estimate);
  return out;
}

double concurrence_sq_from_probs(const ProbTable& zz, const ProbTable& xz) {
  const double cos_a = channel_cosine(xz.pp(), zz.pp(), zz.mp());
  const double cos_b = channel_cosine(xz.pm(), zz.pm(), zz.mm());
  const double prod = std::sqrt(zz.pp() * zz.pm() * zz.mp() * zz.mm());
  const double c2 =
      4.0 * (zz.mp() * zz.pm() + zz.mm() * zz.pp() - 2.0 * prod * cos_sum(cos_a, cos_b));
  return clamp_unit(c2);
}

BasisPair required_channel(InputState s) {
  return (s == InputState::kPsi1 || s == InputState::kPsi2) ? BasisPair::zz() : BasisPair::xz();
}

double concurrence_sq_reduced(InputState s, const std::optional<ProbTable>& zz,
                              const std::optional<ProbTable>& xz) {
  switch (s) {
    case InputState::kPsi1:
    case InputState::kPsi2:
      if (!zz) throw DomainError(std::string(to_string(s)) + " needs the ZZ channel");
      return clamp_unit(s == InputState::kPsi1 ? 4.0 * zz->mm() * zz->pp()
                                               : 4.0 * zz->mp() * zz->pm());
    case InputState::kPsi3:
    case InputState::kPsi4: {
      if (!xz) throw DomainError(std::string(to_string(s)) + " needs the XZ channel");
      const double cos_a = std::clamp(4.0 * xz->pp() - 1.0, -1.0, 1.0);
      const double cos_b = std::clamp(4.0 * xz->pm() - 1.0, -1.0, 1.0);
      return clamp_unit(0.5 * (1.0 - cos_sum(cos_a, cos_b)));
    }
  }
  return 0.0;
}

double concurrence_sq_reduced(InputState s, const std::optional<OutcomeCounts>& zz,
                              const std::optional<OutcomeCounts>& xz) {
  std::optional<ProbTable> pz, px;
  if (zz) pz = empirical_probs(*zz);
  if (xz) px = empirical_probs(*xz);
  return concurrence_sq_reduced(s, pz, px);
}

namespace {

template <typename Point, typename ShotsOf>
ConcurrenceSeries build(const SamplingPlan& plan, InputState s, std::span<const Point> data,
                        ShotsOf shots_of) {
  plan.validate();
  if (data.size() != plan.nt)
    throw DomainError("expected " + std::to_string(plan.nt) + " time points, got " +
                      std::to_string(data.size()));
  std::vector<ConcurrencePoint> points;
  points.reserve(plan.nt);
  for (std::size_t i = 0; i < plan.nt; ++i) {
    const Point& d = data[i];
    ConcurrencePoint p;
    p.time = plan.time(i);
    p.c2_estimate = concurrence_sq_reduced(s, d.zz, d.xz);
    p.shots_zz = d.zz ? shots_of(*d.zz) : 0;
    p.shots_xz = d.xz ? shots_of(*d.xz) : 0;
    points.push_back(p);
  }
  return ConcurrenceSeries(plan.dt, std::move(points));
}

}  // namespace

ConcurrenceSeries build_series(const SamplingPlan& plan, InputState s,
                               std::span<const PointCounts> counts) {
  return build(plan, s, counts, [](const OutcomeCounts& c) { return c.shots(); });
}

ConcurrenceSeries build_series(const SamplingPlan& plan, InputState s,
                               std::span<const PointTables> tables) {
  return build(plan, s, tables, [](const ProbTable&) { return std::uint64_t{0}; });
}

}  // namespace entmap
