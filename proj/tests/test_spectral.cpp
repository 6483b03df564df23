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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "entmap/errors.hpp"
#include "entmap/experiment.hpp"
#include "entmap/spectral.hpp"
#include "support.hpp"

namespace entmap {
namespace {

using testing::Gen;
constexpr double kPi = std::numbers::pi;

// Series from a function; values are clamped to [0, 1] by the caller's choice of f.
template <class F>
ConcurrenceSeries series_of(std::size_t n, double dt, F f) {
  std::vector<ConcurrencePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1) * dt;
    pts.push_back({t, f(t), 1, 0});
  }
  return ConcurrenceSeries(dt, std::move(pts));
}

SamplingPlan uniform_plan(std::size_t nt, double dt, std::uint64_t ne = 1) {
  SamplingPlan p;
  p.nt = nt;
  p.dt = dt;
  p.ne_per_point = ne;
  return p;
}

TEST(Plan, Validation) {
  EXPECT_THROW(uniform_plan(3, 0.1).validate(), DomainError);
  EXPECT_THROW(uniform_plan(10, 0.0).validate(), DomainError);
  EXPECT_THROW(uniform_plan(10, 0.1, 0).validate(), DomainError);
  EXPECT_NO_THROW(uniform_plan(4, 0.1).validate());
}

TEST(Plan, EndpointBudget) {
  const auto p = plan_observation(1.0, 10, 100, Strategy::kEndpoint);
  EXPECT_EQ(p.total_shots(), 2u * 10u + 2u * 100u);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < p.nt; ++i) sum += p.shots_at(i);
  EXPECT_EQ(sum, p.total_shots());
  EXPECT_EQ(p.shots_at(0), 2u);
  EXPECT_EQ(p.shots_at(9), 102u);
  EXPECT_EQ(p.effective_ne(), 100u);
  const auto u = plan_observation(1.0, 10, 7, Strategy::kUniform);
  EXPECT_EQ(u.total_shots(), 70u);
}

TEST(Plan, ReferenceStepBound) {
  const auto p = plan_observation(0.6, 200, 10, Strategy::kUniform);
  EXPECT_LE(p.dt, 2 * kPi / (2 * 1.25 * 2.4) + 1e-15);
  EXPECT_NEAR(p.dt, 1.0471975511965976, 1e-12);
  EXPECT_THROW(max_time_step(0.0), DomainError);
  EXPECT_NEAR(p.resolution(), 2 * kPi / (200 * p.dt), 1e-15);
}

TEST(FractionalUncertainty, Formula) {
  EXPECT_DOUBLE_EQ(fractional_uncertainty(10, 100), 0.04);
  EXPECT_NEAR(fractional_uncertainty(200, 10), 6.324555320336759e-3, 1e-15);
}

TEST(Dft, ConstantSeriesIsFlat) {
  const auto s = dft(series_of(50, 0.1, [](double) { return 0.3; }));
  for (double m : s.magnitude) EXPECT_NEAR(m, 0.0, 1e-12);
  EXPECT_FALSE(detect_oscillation(s).has_value());
}

TEST(Dft, Size) {
  for (std::size_t n : {4u, 5u, 64u, 65u, 200u}) EXPECT_EQ(dft(series_of(n, 0.1, [](double t) { return 0.5 + 0.4 * std::sin(t); })).size(), n / 2 + 1);
  EXPECT_THROW(dft(series_of(3, 0.1, [](double) { return 0.2; })), DomainError);
}

TEST(Dft, CosineAtBinTen) {
  const auto s = dft(series_of(128, 0.2, [](double t) { return 0.5 + 0.5 * std::cos(2.4 * t); }));
  const auto peak = find_peak(s);
  ASSERT_TRUE(peak);
  EXPECT_EQ(peak->bin, static_cast<std::size_t>(std::lround(2.4 * 128 * 0.2 / (2 * kPi))));
  EXPECT_EQ(peak->bin, 10u);
  EXPECT_TRUE(detect_oscillation(s).has_value());
}

TEST(Dft, MatchesDirectSum) {
  Gen g(51);
  const auto series = series_of(37, 0.17, [&](double) { return g.uniform(0, 1); });
  const auto s = dft(series);
  const auto v = series.values();
  double mean = 0;
  for (double x : v) mean += x / v.size();
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      acc += (v[i] - mean) * std::polar(1.0, -2 * kPi * double(k) * double(i) / double(v.size()));
    EXPECT_NEAR(s.magnitude[k], std::abs(acc), 1e-12);
    EXPECT_NEAR(s.omega[k], k * 2 * kPi / (37 * 0.17), 1e-12);
  }
}

TEST(Dft, Parseval) {
  Gen g(52);
  for (std::size_t n : {64u, 101u}) {
    const auto series = series_of(n, 0.1, [&](double) { return g.uniform(0, 1); });
    const auto s = dft(series);
    const auto v = series.values();
    double mean = 0, energy = 0;
    for (double x : v) mean += x / n;
    for (double x : v) energy += (x - mean) * (x - mean);
    double spec = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const bool self_paired = k == 0 || (n % 2 == 0 && k == n / 2);
      spec += (self_paired ? 1.0 : 2.0) * s.magnitude[k] * s.magnitude[k];
    }
    EXPECT_NEAR(spec / n, energy, 1e-9 * energy);
  }
}

TEST(Dft, HannWindowKeepsPeak) {
  const auto s = dft(series_of(128, 0.2, [](double t) { return 0.5 + 0.5 * std::cos(2.4 * t); }), Window::kHann);
  EXPECT_EQ(find_peak(s)->bin, 10u);
}

TEST(FindPeak, TieGoesToLowerBin) {
  Spectrum s;
  s.resolution = 0.5;
  for (int k = 0; k < 10; ++k) {
    s.omega.push_back(0.5 * k);
    s.magnitude.push_back(0.0);
  }
  s.magnitude[0] = 100;  // DC is never a candidate
  s.magnitude[1] = 50;   // nor its neighbour
  s.magnitude[4] = 3.0;
  s.magnitude[7] = 3.0;
  const auto p = find_peak(s);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->bin, 4u);
  EXPECT_DOUBLE_EQ(p->omega, 2.0);
}

TEST(FindPeak, AllZeroIsEmpty) {
  Spectrum s;
  s.omega = {0, 1, 2, 3};
  s.magnitude = {0, 0, 0, 0};
  EXPECT_FALSE(find_peak(s).has_value());
}

TEST(FindPeak, InjectedCosineExactBin) {
  for (int bin : {3, 17, 40}) {
    const double w = bin * 2 * kPi / (100 * 0.05);
    const auto s = dft(series_of(100, 0.05, [&](double t) { return 0.5 + 0.3 * std::cos(w * t); }));
    EXPECT_EQ(find_peak(s)->bin, static_cast<std::size_t>(bin));
  }
}

TEST(Detect, NoiseFloorRejectsWhiteNoise) {
  Gen g(53);
  int detections = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = dft(series_of(200, 0.1, [&](double) { return g.uniform(0.4, 0.6); }));
    detections += detect_oscillation(s).has_value();
  }
  EXPECT_LE(detections, 5);
}

TEST(Nyquist, NoiselessPeakWithinOneBinOfFourOmega) {
  Gen g(54);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = g.hamiltonian(2.0);
    for (InputState s : kAllInputs) {
      const double w = std::abs(combination(s, h));
      if (w < 0.05) continue;
      const std::size_t nt = static_cast<std::size_t>(g.integer(32, 256));
      const auto plan = plan_observation(w, nt, 1, Strategy::kUniform);
      const auto series = simulate_series(h, s, plan, 0.0, Mode::kNoiseless, 0);
      const auto peak = find_peak(dft(series));
      ASSERT_TRUE(peak);
      EXPECT_LE(std::abs(peak->omega - 4 * w), plan.resolution() + 1e-12) << trial << " " << to_string(s);
    }
  }
}

TEST(Refine, NoiselessIsExact) {
  Gen g(55);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = g.hamiltonian(2.0);
    for (InputState s : kAllInputs) {
      const double w = std::abs(combination(s, h));
      if (w < 0.05) continue;
      for (Strategy strat : {Strategy::kUniform, Strategy::kEndpoint}) {
        const auto plan = plan_observation(w, 64, 10, strat);
        const auto series = simulate_series(h, s, plan, 0.0, Mode::kNoiseless, 0);
        const auto peak = find_peak(dft(series));
        ASSERT_TRUE(peak);
        const auto est = refine_frequency(series, peak->omega, plan);
        EXPECT_TRUE(est.converged);
        EXPECT_NEAR(est.omega_hat, w, 1e-6 * w) << trial << " " << to_string(s);
        EXPECT_GT(est.delta_f_over_f, 0.0);
      }
    }
  }
}

TEST(Refine, ReportedUncertaintyFollowsEndpointLaw) {
  const HamiltonianParams h{1.2, 0.6, 1.4};
  const auto plan = plan_observation(0.6, 10, 100, Strategy::kEndpoint);
  const auto series = simulate_series(h, InputState::kPsi1, plan, 0.0, Mode::kNoiseless, 0);
  const auto est = refine_frequency(series, find_peak(dft(series))->omega, plan);
  EXPECT_DOUBLE_EQ(est.delta_f_over_f, 0.04);
}

TEST(Refine, ContaminationMovesPeakLessThanOneBin) {
  const HamiltonianParams h{1.2, 0.6, 1.4};
  const auto plan = plan_observation(0.6, 256, 1, Strategy::kUniform);
  const auto ref = simulate_series(h, InputState::kPsi1, plan, 0.0, Mode::kNoiseless, 0);
  const auto ref_peak = find_peak(dft(ref));
  const auto ref_est = refine_frequency(ref, ref_peak->omega, plan);
  for (double eta : {0.01, 0.02, 0.05}) {
    const auto s = simulate_series(h, InputState::kPsi1, plan, eta, Mode::kNoiseless, 0);
    const auto peak = find_peak(dft(s));
    EXPECT_EQ(peak->bin, ref_peak->bin);
    const auto est = refine_frequency(s, peak->omega, plan);
    EXPECT_LT(4 * std::abs(est.omega_hat - ref_est.omega_hat), plan.resolution());
  }
}

// Endpoint step puts psi1's C^2 at t_ob on mid-slope without exceeding the Nyquist step.
TEST(Plan, EndpointStepIsMidSlope) {
  Gen g(61);
  for (int trial = 0; trial < 50; ++trial) {
    const double w = g.uniform(0.05, 4.0);
    const std::size_t nt = static_cast<std::size_t>(g.integer(4, 300));
    const double dt = endpoint_time_step(w, nt);
    EXPECT_LE(dt, max_time_step(w) * (1 + 1e-15));
    EXPECT_GT(dt, 0.5 * max_time_step(w));
    EXPECT_NEAR(std::pow(std::sin(2.0 * w * static_cast<double>(nt) * dt), 2), 0.5, 1e-9);
    EXPECT_DOUBLE_EQ(plan_observation(w, nt, 10, Strategy::kEndpoint).dt, dt);
  }
}

TEST(Plan, RejectsBadPrior) {
  auto plan = plan_observation(0.6, 10, 100, Strategy::kEndpoint);
  EXPECT_DOUBLE_EQ(plan.omega_prior, 0.6);
  plan.omega_prior = -1.0;
  EXPECT_THROW(plan.validate(), DomainError);
}

// The fixed-amplitude endpoint fit stays on the prior's fringe even when the
// prior is off by a third of the fringe half-width.
TEST(Refine, EndpointFollowsPriorFringe) {
  const HamiltonianParams h{1.2, 0.6, 1.4};
  auto plan = plan_observation(0.6, 10, 1000, Strategy::kEndpoint);
  const double half_fringe_w = kPi / (2.0 * plan.t_ob()) / 2.0;
  plan.omega_prior = 0.6 + half_fringe_w / 3.0;
  const auto series = simulate_series(h, InputState::kPsi1, plan, 0.0, Mode::kNoiseless, 0);
  const auto est = refine_frequency(series, 2.4, plan);
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.omega_hat, 0.6, 1e-9);
}

// A prior whose window misses the truth pins the fit to the nearer window
// edge, which is reported unconverged with the window as its uncertainty.
TEST(Refine, EndpointPinnedWindowEdge) {
  const HamiltonianParams h{1.2, 0.6, 1.4};
  auto plan = plan_observation(0.6, 10, 1000, Strategy::kEndpoint);
  const double fringe_w = kPi / plan.t_ob() / 2.0;
  plan.omega_prior = 0.6 + 0.4 * fringe_w;
  const auto series = simulate_series(h, InputState::kPsi1, plan, 0.0, Mode::kNoiseless, 0);
  const auto est = refine_frequency(series, 2.4, plan);
  EXPECT_FALSE(est.converged);
  const double quarter_w = fringe_w / 4.0;
  EXPECT_NEAR(est.omega_hat, plan.omega_prior - quarter_w, 1e-6 * quarter_w);
  EXPECT_NEAR(est.delta_f_over_f * est.omega_hat, quarter_w, 1e-12);

  // Without a prior the accurate coarse peak decides.
  plan.omega_prior = 0.0;
  const auto without = refine_frequency(series, 2.4, plan);
  EXPECT_TRUE(without.converged);
  EXPECT_NEAR(without.omega_hat, 0.6, 1e-9);
}

// Sampled endpoint runs at nt = 10: no detection failures with a prior, and
// the median error sits below the 4 / (nt sqrt(Ne)) bound.
TEST(Analyze, EndpointSampledMedianBelowBound) {
  const HamiltonianParams h{1.2, 0.6, 1.4};
  const auto plan = plan_observation(0.6, 10, 256, Strategy::kEndpoint);
  std::vector<double> frac;
  for (int seed = 0; seed < 100; ++seed) {
    const auto a = analyze_series(InputState::kPsi1, plan,
                                  simulate_series(h, InputState::kPsi1, plan, 0.0, Mode::kSampled, seed));
    ASSERT_FALSE(a.degenerate);
    frac.push_back(std::abs(a.omega - 0.6) / 0.6);
  }
  std::nth_element(frac.begin(), frac.begin() + 50, frac.end());
  EXPECT_LT(frac[50], fractional_uncertainty(10, 256));
  EXPECT_GT(frac[50], 0.01 * fractional_uncertainty(10, 256));
}

TEST(ToneAmplitude, RecoversCosineAmplitude) {
  const double w = 12 * 2 * kPi / (200 * 0.05);
  const auto s = series_of(200, 0.05, [&](double t) { return 0.5 + 0.2 * std::cos(w * t + 0.3); });
  EXPECT_NEAR(tone_amplitude(s, w), 0.2, 1e-12);
}

TEST(ToneFit, SeparatesNearbyTones) {
  const double w1 = 2.4, w2 = 3.2, w3 = 10.4;
  const auto s = series_of(300, 0.2, [&](double t) {
    return 0.5 + 0.4 * std::cos(w1 * t) + 0.02 * std::cos(w2 * t + 1.0) + 0.01 * std::sin(w3 * t);
  });
  const std::vector<double> tones{w1, w2, w3, 0.0, 5.0, w2};
  const auto amps = fit_tone_amplitudes(s, tones);
  EXPECT_NEAR(amps[0], 0.4, 1e-12);
  EXPECT_NEAR(amps[1], 0.02, 1e-12);
  EXPECT_NEAR(amps[2], 0.01, 1e-12);
  EXPECT_EQ(amps[3], 0.0);
  EXPECT_NEAR(amps[4], 0.0, 1e-12);
  EXPECT_NEAR(amps[5], 0.02, 1e-12);
  // The single-tone projection leaks the strong tone into its neighbour.
  EXPECT_GT(std::abs(tone_amplitude(s, w2) - 0.02), 1e-4);
}

TEST(Analyze, DegenerateSnapsToZero) {
  const auto h = HamiltonianParams::isotropic(0.8);
  SamplingPlan plan = uniform_plan(64, 0.1, 10);
  const auto a = analyze_series(InputState::kPsi1, plan,
                                simulate_series(h, InputState::kPsi1, plan, 0.0, Mode::kSampled, 3));
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(a.omega, 0.0);
  EXPECT_NEAR(a.sigma, plan.resolution() / 4, 1e-15);
}

}  // namespace
}  // namespace entmap
