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

#include "entmap/recon.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <vector>

#include "entmap/errors.hpp"

namespace entmap {
namespace {

// Rows: c1 - c2, c1 + c2, c2 - c3, c2 + c3.
constexpr double kDesign[4][3] = {{1, -1, 0}, {1, 1, 0}, {0, 1, -1}, {0, 1, 1}};

// (A^T A)^{-1} A^T; A^T A = diag(2, 4, 2).
constexpr double kPseudoInverse[3][4] = {
    {0.5, 0.5, 0.0, 0.0}, {-0.25, 0.25, 0.25, 0.25}, {0.0, 0.0, -0.5, 0.5}};

struct Candidate {
  HamiltonianParams c;
  std::array<int, 4> signs;
  double residual;
};

Candidate solve(const FrequencyQuad& q, const std::array<int, 4>& signs) {
  std::array<double, 4> rhs{};
  for (int k = 0; k < 4; ++k) rhs[k] = signs[k] * q.w[k];
  std::array<double, 3> c{};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 4; ++k) c[j] += kPseudoInverse[j][k] * rhs[k];
  double r2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    double fit = 0.0;
    for (int j = 0; j < 3; ++j) fit += kDesign[k][j] * c[j];
    r2 += (fit - rhs[k]) * (fit - rhs[k]);
  }
  return {{c[0], c[1], c[2]}, signs, std::sqrt(r2)};
}

bool lex_less(const HamiltonianParams& a, const HamiltonianParams& b) {
  if (a.c1 != b.c1) return a.c1 < b.c1;
  if (a.c2 != b.c2) return a.c2 < b.c2;
  return a.c3 < b.c3;
}

double distance(const HamiltonianParams& a, const HamiltonianParams& b) {
  return std::hypot(a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3);
}

}  // namespace

FrequencyQuad FrequencyQuad::from_hamiltonian(const HamiltonianParams& h) {
  FrequencyQuad q;
  for (InputState s : kAllInputs) q.w[index_of(s)] = std::abs(combination(s, h));
  return q;
}

HamiltonianParams canonical_sign(const HamiltonianParams& h) {
  const bool flip = h.c2 < 0.0 || (h.c2 == 0.0 && (h.c3 < 0.0 || (h.c3 == 0.0 && h.c1 < 0.0)));
  HamiltonianParams out = flip ? -h : h;
  // Normalise -0.0 so outputs print identically.
  if (out.c1 == 0.0) out.c1 = 0.0;
  if (out.c2 == 0.0) out.c2 = 0.0;
  if (out.c3 == 0.0) out.c3 = 0.0;
  return out;
}

ReconstructionResult invert_frequencies(const FrequencyQuad& q) {
  double scale = 1.0;
  double noise2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (!(q.w[k] >= 0.0) || !std::isfinite(q.w[k])) throw DomainError("frequencies must be finite and >= 0");
    if (!(q.sigma[k] >= 0.0) || !std::isfinite(q.sigma[k])) throw DomainError("uncertainties must be finite and >= 0");
    scale = std::max(scale, q.w[k]);
    noise2 += q.sigma[k] * q.sigma[k];
  }
  const double tolerance = 3.0 * std::sqrt(noise2) + 1e-9 * scale;

  std::vector<Candidate> candidates;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<int, 4> signs{};
    bool duplicate = false;
    for (int k = 0; k < 4; ++k) {
      signs[k] = (mask >> k) & 1 ? -1 : 1;
      if (q.w[k] == 0.0 && signs[k] < 0) duplicate = true;
    }
    if (duplicate) continue;
    Candidate c = solve(q, signs);
    const HamiltonianParams canon = canonical_sign(c.c);
    if (canon != c.c) {
      for (int& s : c.signs) s = -s;
      c.c = canon;
    }
    candidates.push_back(c);
  }

  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (c.residual < best->residual - 1e-12 * scale ||
        (std::abs(c.residual - best->residual) <= 1e-12 * scale && lex_less(c.c, best->c)))
      best = &c;
  }
  if (best->residual > tolerance) {
    std::ostringstream msg;
    msg << "inconsistent frequency set: best residual " << best->residual << " exceeds tolerance "
        << tolerance << " (mislabelled peaks or non-Heisenberg terms?)";
    throw InconsistentFrequencies(msg.str());
  }

  ReconstructionResult out;
  out.c_hat = best->c;
  out.residual = best->residual;
  out.signs = best->signs;
  out.candidates_considered = static_cast<int>(candidates.size());
  for (int j = 0; j < 3; ++j) {
    double var = 0.0;
    for (int k = 0; k < 4; ++k) var += kPseudoInverse[j][k] * kPseudoInverse[j][k] * q.sigma[k] * q.sigma[k];
    out.sigma[j] = std::sqrt(var);
  }
  for (const Candidate& c : candidates) {
    if (c.residual <= best->residual + tolerance && distance(c.c, best->c) > tolerance + 1e-9 * scale) {
      out.ambiguous = true;
      break;
    }
  }
  return out;
}

HamiltonianParams invert_three_state(double s1w1, double s2w2, double s3w3) {
  const double c1 = 0.5 * (s2w2 + s1w1);
  const double c2 = 0.5 * (s2w2 - s1w1);
  return {c1, c2, c2 - s3w3};
}

Characterization characterize(const HamiltonianParams& h_true,
                              const std::array<SamplingPlan, 4>& plans, std::uint64_t seed,
                              Mode mode, double eta, const AnalysisOptions& options) {
  std::array<std::future<InputAnalysis>, 4> jobs;
  for (InputState s : kAllInputs) {
    const int k = index_of(s);
    jobs[k] = std::async(std::launch::async, [&, s, k] {
      return analyze_series(s, plans[k], simulate_series(h_true, s, plans[k], eta, mode, seed), options);
    });
  }

  Characterization out;
  for (int k = 0; k < 4; ++k) {
    out.runs[k] = jobs[k].get();
    out.quad.w[k] = out.runs[k].omega;
    out.quad.sigma[k] = out.runs[k].sigma;
  }
  out.result = invert_frequencies(out.quad);
  return out;
}

}  // namespace entmap
