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

// Squared-concurrence estimation from ZZ and XZ outcome statistics.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "entmap/measure.hpp"
#include "entmap/plan.hpp"
#include "entmap/qcore.hpp"

namespace entmap {

struct ConcurrencePoint {
  double time = 0.0;
  double c2_estimate = 0.0;  // in [0, 1]
  std::uint64_t shots_zz = 0;
  std::uint64_t shots_xz = 0;
};

// Uniformly spaced, strictly increasing series of concurrence estimates.
class ConcurrenceSeries {
 public:
  // Throws DomainError on non-positive dt, non-uniform spacing (> 1e-9 dt),
  // or estimates outside [0, 1].
  ConcurrenceSeries(double dt, std::vector<ConcurrencePoint> points);

  double dt() const { return dt_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<ConcurrencePoint>& points() const { return points_; }
  const ConcurrencePoint& operator[](std::size_t i) const { return points_[i]; }
  double t_ob() const { return points_.empty() ? 0.0 : points_.back().time; }

  std::vector<double> times() const;
  std::vector<double> values() const;
  // Total shots recorded at point i over both channels.
  std::uint64_t shots(std::size_t i) const { return points_[i].shots_zz + points_[i].shots_xz; }

 private:
  double dt_;
  std::vector<ConcurrencePoint> points_;
};

// C^2 = 4 [P-+ P+- + P-- P++ - 2 sqrt(prod P_ZZ) cos(A + B)] with
//   cos A = (2 P++_XZ - P++ - P-+) / (2 sqrt(P++ P-+)),
//   cos B = (2 P+-_XZ - P+- - P--) / (2 sqrt(P+- P--)),
// unsubscripted P taken in ZZ. Both cosines are clamped to [-1, 1] and read
// as 0 when their denominator vanishes; sin A, sin B are taken non-negative.
// Result clamped to [0, 1].
double concurrence_sq_from_probs(const ProbTable& zz, const ProbTable& xz);

// Channel each protocol input needs: ZZ for psi1/psi2, XZ for psi3/psi4.
BasisPair required_channel(InputState s);

// Symmetry-reduced estimators:
//   psi1: 4 P-- P++,  psi2: 4 P-+ P+-            (ZZ only)
//   psi3, psi4: (1 - cos(A + B)) / 2 with cos A = 4 P++_XZ - 1,
//               cos B = 4 P+-_XZ - 1             (XZ only)
// Throws DomainError if the required channel is missing.
double concurrence_sq_reduced(InputState s, const std::optional<ProbTable>& zz,
                              const std::optional<ProbTable>& xz);
double concurrence_sq_reduced(InputState s, const std::optional<OutcomeCounts>& zz,
                              const std::optional<OutcomeCounts>& xz);

struct PointCounts {
  std::optional<OutcomeCounts> zz;
  std::optional<OutcomeCounts> xz;
};

struct PointTables {
  std::optional<ProbTable> zz;
  std::optional<ProbTable> xz;
};

// One entry per plan time index. Throws DomainError on a size mismatch.
ConcurrenceSeries build_series(const SamplingPlan& plan, InputState s,
                               std::span<const PointCounts> counts);
// Exact-probability variant (the infinite-shot limit); shot columns are 0.
ConcurrenceSeries build_series(const SamplingPlan& plan, InputState s,
                               std::span<const PointTables> tables);

}  // namespace entmap
