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

#include "entmap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "entmap/errors.hpp"

namespace entmap {

std::string_view to_string(Strategy s) { return s == Strategy::kUniform ? "uniform" : "endpoint"; }

Strategy parse_strategy(std::string_view name) {
  if (name == "uniform") return Strategy::kUniform;
  if (name == "endpoint") return Strategy::kEndpoint;
  throw DomainError("unknown strategy '" + std::string(name) + "' (expected uniform|endpoint)");
}

void SamplingPlan::validate() const {
  if (nt < 4) throw DomainError("sampling plan needs nt >= 4");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("sampling plan needs dt > 0");
  if (strategy == Strategy::kUniform && ne_per_point < 1)
    throw DomainError("uniform plan needs ne_per_point >= 1");
  if (strategy == Strategy::kEndpoint && ne_endpoint < 1)
    throw DomainError("endpoint plan needs ne_endpoint >= 1");
  if (!(omega_prior >= 0.0) || !std::isfinite(omega_prior))
    throw DomainError("omega_prior must be finite and non-negative");
}

std::uint64_t SamplingPlan::shots_at(std::size_t i) const {
  if (strategy == Strategy::kUniform) return ne_per_point;
  return i + 2 >= nt ? 2 + ne_endpoint : 2;
}

std::uint64_t SamplingPlan::total_shots() const {
  if (strategy == Strategy::kUniform) return nt * ne_per_point;
  return 2 * nt + 2 * ne_endpoint;
}

std::uint64_t SamplingPlan::effective_ne() const {
  return strategy == Strategy::kUniform ? ne_per_point : ne_endpoint;
}

double SamplingPlan::resolution() const { return 2.0 * std::numbers::pi / t_ob(); }

double max_time_step(double omega_guess) {
  if (!(omega_guess > 0.0) || !std::isfinite(omega_guess))
    throw DomainError("omega_guess must be positive; degenerate combinations need an explicit dt");
  return 2.0 * std::numbers::pi / (2.0 * kNyquistMargin * 4.0 * omega_guess);
}

double endpoint_time_step(double omega_guess, std::size_t nt) {
  if (nt < 1) throw DomainError("endpoint_time_step needs nt >= 1");
  const double dt_max = max_time_step(omega_guess);
  // Phase 2 omega t_ob in units of pi at dt_max; C^2 = sin^2 of it.
  const double q = 2.0 * omega_guess * static_cast<double>(nt) * dt_max / std::numbers::pi;
  const double m = std::floor((q - 0.25) / 0.5);
  if (m < 0.0) return dt_max;
  return dt_max * (0.25 + 0.5 * m) / q;
}

SamplingPlan plan_observation(double omega_guess, std::size_t nt, std::uint64_t ne,
                              Strategy strategy) {
  SamplingPlan plan;
  plan.nt = nt;
  plan.dt = strategy == Strategy::kEndpoint ? endpoint_time_step(omega_guess, nt)
                                            : max_time_step(omega_guess);
  plan.strategy = strategy;
  if (strategy == Strategy::kUniform) {
    plan.ne_per_point = ne;
  } else {
    plan.ne_per_point = 2;
    plan.ne_endpoint = ne;
    plan.omega_prior = omega_guess;
  }
  plan.validate();
  return plan;
}

double fractional_uncertainty(std::size_t nt, double ne) {
  if (nt == 0 || !(ne > 0.0)) throw DomainError("fractional uncertainty needs nt >= 1 and ne > 0");
  return 4.0 / (static_cast<double>(nt) * std::sqrt(ne));
}

Spectrum dft(const ConcurrenceSeries& series, Window window) {
  const std::size_t n = series.size();
  if (n < 4) throw DomainError("DFT needs at least 4 points");

  std::vector<double> y = series.values();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] -= mean;
    if (window == Window::kHann)
      y[i] *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n - 1)));
  }

  // Roots of unity indexed by (k * i) mod n keep the phases exact.
  std::vector<std::complex<double>> roots(n);
  for (std::size_t j = 0; j < n; ++j)
    roots[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));

  Spectrum out;
  out.samples = n;
  out.resolution = 2.0 * std::numbers::pi / (static_cast<double>(n) * series.dt());
  const std::size_t bins = n / 2 + 1;
  out.omega.resize(bins);
  out.magnitude.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    std::complex<double> acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += y[i] * roots[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out.omega[k] = static_cast<double>(k) * out.resolution;
    out.magnitude[k] = std::abs(acc);
  }
  return out;
}

std::optional<Peak> find_peak(const Spectrum& spectrum) {
  std::optional<Peak> best;
  for (std::size_t k = 2; k < spectrum.size(); ++k) {
    const double m = spectrum.magnitude[k];
    if (m > 0.0 && (!best || m > best->magnitude)) best = Peak{k, spectrum.omega[k], m};
  }
  return best;
}

std::optional<Peak> detect_oscillation(const Spectrum& spectrum, const DetectionOptions& options) {
  const auto peak = find_peak(spectrum);
  if (!peak) return std::nullopt;
  const double amplitude = 2.0 * peak->magnitude / static_cast<double>(spectrum.samples);
  if (amplitude < options.min_amplitude) return std::nullopt;
  std::vector<double> rest(spectrum.magnitude.begin() + 2, spectrum.magnitude.end());
  auto mid = rest.begin() + static_cast<std::ptrdiff_t>(rest.size() / 2);
  std::nth_element(rest.begin(), mid, rest.end());
  if (peak->magnitude < options.min_peak_to_median * *mid) return std::nullopt;
  return peak;
}

namespace {

struct FitData {
  std::vector<double> t, y, w;
};

struct LinearFit {
  double a = 0.0, b = 0.0, cost = 0.0;
};

// Weighted linear least squares of y ~ a sin^2(v t) + b at fixed v.
LinearFit fit_linear(const FitData& d, double v) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    const double s = std::sin(v * d.t[i]);
    const double x = s * s;
    sw += d.w[i];
    sx += d.w[i] * x;
    sy += d.w[i] * d.y[i];
    sxx += d.w[i] * x * x;
    sxy += d.w[i] * x * d.y[i];
  }
  LinearFit f;
  const double det = sw * sxx - sx * sx;
  if (det > 1e-300) {
    f.a = (sw * sxy - sx * sy) / det;
    f.b = (sy - f.a * sx) / sw;
  } else {
    f.b = sy / sw;
  }
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    const double s = std::sin(v * d.t[i]);
    const double r = d.y[i] - f.a * s * s - f.b;
    f.cost += d.w[i] * r * r;
  }
  return f;
}

double cost_at(const FitData& d, const Eigen::Vector3d& p) {
  double c = 0.0;
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    const double s = std::sin(p[2] * d.t[i]);
    const double r = d.y[i] - p[0] * s * s - p[1];
    c += d.w[i] * r * r;
  }
  return c;
}

// Mean of the reduced estimator from n shots of one channel is
// (1 - 1/n) C^2; exact tables carry n = 0.
double shrinkage(const ConcurrencePoint& p) {
  std::uint64_t n = 0;
  for (std::uint64_t c : {p.shots_zz, p.shots_xz})
    if (c > 0) n = n == 0 ? c : std::min(n, c);
  if (n == 0) return 1.0;
  return 1.0 - 1.0 / static_cast<double>(n);
}

struct FixedFit {
  std::vector<double> t, y, w, k;
  double cost(double v) const {
    double c = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double s = std::sin(v * t[i]);
      const double r = y[i] - k[i] * s * s;
      c += w[i] * r * r;
    }
    return c;
  }
};

// Endpoint refinement: grid fine enough to resolve the endpoint minimum
// (width ~ fringe / sqrt(n_max)), then golden-section polish.
FrequencyEstimate refine_endpoint(const ConcurrenceSeries& series, double coarse,
                                  const SamplingPlan& plan, FrequencyEstimate est) {
  FixedFit f;
  double w_max = 1.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::uint64_t n = series.shots(i);
    f.t.push_back(series[i].time);
    f.y.push_back(series[i].c2_estimate);
    f.w.push_back(n > 0 ? static_cast<double>(n) : 1.0);
    f.k.push_back(shrinkage(series[i]));
    w_max = std::max(w_max, f.w.back());
  }
  const double fringe = std::numbers::pi / series.t_ob();
  const bool prior = plan.omega_prior > 0.0;
  const double v0 = prior ? 2.0 * plan.omega_prior : coarse / 2.0;
  const double half = prior ? fringe / 4.0 : fringe / 2.0;
  const double lo = std::max(v0 - half, 0.0);
  const double hi = v0 + half;
  constexpr int kMaxGrid = 200000;
  const int grid = static_cast<int>(std::min<double>(kMaxGrid, std::ceil(40.0 * std::sqrt(w_max))));
  const double step = (hi - lo) / grid;
  double best_v = lo, best_cost = f.cost(lo);
  for (int g = 1; g <= grid; ++g) {
    const double v = lo + step * g;
    const double c = f.cost(v);
    if (c < best_cost) {
      best_cost = c;
      best_v = v;
    }
  }
  double a = std::max(best_v - step, lo), b = std::min(best_v + step, hi);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  int iter = 0;
  for (; iter < 200 && b - a > 1e-15 * std::max(b, 1.0); ++iter) {
    const double m1 = b - r * (b - a), m2 = a + r * (b - a);
    if (f.cost(m1) < f.cost(m2)) b = m2;
    else a = m1;
  }
  const double v = (a + b) / 2.0;
  est.iterations = iter + 1;
  // A minimum pinned to the fringe edge means the prior picked the wrong fringe.
  const bool interior = v - lo > step && hi - v > step;
  if (interior && v > 0.0) {
    est.converged = true;
    est.omega_hat = v / 2.0;
    est.amplitude = 1.0;
    est.offset = 0.0;
  } else if (prior && v > 0.0) {
    // The data pull past the window: report the constrained minimum with the
    // window half-width as its uncertainty.
    est.converged = false;
    est.omega_hat = v / 2.0;
    est.delta_f_over_f = half / v;
    est.amplitude = 1.0;
    est.offset = 0.0;
  } else {
    const double bin = 2.0 * fringe;
    est.converged = false;
    est.omega_hat = coarse / 4.0;
    est.delta_f_over_f = bin / coarse;
  }
  return est;
}

}  // namespace

FrequencyEstimate refine_frequency(const ConcurrenceSeries& series, double coarse,
                                   const SamplingPlan& plan) {
  plan.validate();
  if (series.size() < 4) throw DomainError("refinement needs at least 4 points");
  if (!(coarse > 0.0)) throw DomainError("coarse peak frequency must be positive");

  FitData d;
  for (std::size_t i = 0; i < series.size(); ++i) {
    d.t.push_back(series[i].time);
    d.y.push_back(series[i].c2_estimate);
    const std::uint64_t n = series.shots(i);
    d.w.push_back(n > 0 ? static_cast<double>(n) : 1.0);
  }

  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(series.size()) * series.dt());
  FrequencyEstimate est;
  est.raw_peak_omega = coarse;
  est.delta_f_over_f = fractional_uncertainty(plan.nt, static_cast<double>(plan.effective_ne()));
  if (plan.strategy == Strategy::kEndpoint) return refine_endpoint(series, coarse, plan, est);

  // The LS surface in v has minima spaced well under a bin, so scan one bin
  // either side of the DFT peak before polishing.
  constexpr int kGrid = 160;
  const double v0 = coarse / 2.0;
  const double half_span = bin / 2.0;
  double best_v = v0;
  LinearFit best = fit_linear(d, v0);
  for (int g = 0; g <= kGrid; ++g) {
    const double v = v0 - half_span + 2.0 * half_span * g / kGrid;
    const LinearFit f = fit_linear(d, v);
    if (f.cost < best.cost) {
      best = f;
      best_v = v;
    }
  }

  // Levenberg-Marquardt on (a, b, v).
  Eigen::Vector3d p(best.a, best.b, best_v);
  double cost = cost_at(d, p);
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;
  constexpr int kMaxIterations = 200;
  for (; iter < kMaxIterations; ++iter) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < d.t.size(); ++i) {
      const double s = std::sin(p[2] * d.t[i]);
      const double c = std::cos(p[2] * d.t[i]);
      const Eigen::Vector3d j(s * s, 1.0, 2.0 * p[0] * s * c * d.t[i]);
      const double r = d.y[i] - p[0] * s * s - p[1];
      jtj += d.w[i] * j * j.transpose();
      jtr += d.w[i] * r * j;
    }
    bool stepped = false;
    for (int tries = 0; tries < 30 && !stepped; ++tries) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      const Eigen::Vector3d step = damped.ldlt().solve(jtr);
      const Eigen::Vector3d trial = p + step;
      const double trial_cost = cost_at(d, trial);
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        const double rel_step = std::abs(step[2]) / std::max(std::abs(p[2]), 1e-300);
        const double rel_gain = (cost - trial_cost) / std::max(cost, 1e-300);
        p = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-12);
        stepped = true;
        if (rel_step < 1e-13 || rel_gain < 1e-15 || cost == 0.0) converged = true;
      } else {
        lambda *= 10.0;
      }
    }
    // No descent direction left: already at the minimum to working precision.
    if (!stepped) converged = true;
    if (converged) break;
  }

  est.iterations = iter + 1;
  const bool in_window = std::abs(2.0 * p[2] - coarse) <= 1.5 * bin;
  if (converged && in_window && std::isfinite(p[2])) {
    est.converged = true;
    est.omega_hat = std::abs(p[2]) / 2.0;
    est.amplitude = p[0];
    est.offset = p[1];
  } else {
    est.converged = false;
    est.omega_hat = coarse / 4.0;
    est.delta_f_over_f = bin / coarse;
    est.amplitude = best.a;
    est.offset = best.b;
  }
  return est;
}

double tone_amplitude(const ConcurrenceSeries& series, double omega) {
  const std::size_t n = series.size();
  if (n == 0) throw DomainError("empty series");
  double mean = 0.0;
  for (const auto& p : series.points()) mean += p.c2_estimate;
  mean /= static_cast<double>(n);
  std::complex<double> acc = 0.0;
  for (const auto& p : series.points()) acc += (p.c2_estimate - mean) * std::polar(1.0, -omega * p.time);
  return 2.0 * std::abs(acc) / static_cast<double>(n);
}

std::vector<double> fit_tone_amplitudes(const ConcurrenceSeries& series, std::span<const double> omegas) {
  const std::size_t n = series.size();
  // Tones closer than this (relative) share one column; zero tones fold into the offset.
  constexpr double kSame = 1e-9;
  std::vector<double> distinct;
  std::vector<int> column(omegas.size(), -1);
  for (std::size_t j = 0; j < omegas.size(); ++j) {
    const double w = std::abs(omegas[j]);
    if (!std::isfinite(w)) throw DomainError("tone frequency must be finite");
    if (w <= kSame) continue;
    for (std::size_t d = 0; d < distinct.size(); ++d)
      if (std::abs(distinct[d] - w) <= kSame * std::max(1.0, w)) column[j] = static_cast<int>(d);
    if (column[j] < 0) {
      column[j] = static_cast<int>(distinct.size());
      distinct.push_back(w);
    }
  }
  const std::size_t m = 1 + 2 * distinct.size();
  if (n < m) throw DomainError("series too short for the requested tone fit");

  Eigen::MatrixXd a(n, m);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = series[i].time;
    a(i, 0) = 1.0;
    for (std::size_t d = 0; d < distinct.size(); ++d) {
      a(i, 1 + 2 * d) = std::cos(distinct[d] * t);
      a(i, 2 + 2 * d) = std::sin(distinct[d] * t);
    }
    y[i] = series[i].c2_estimate;
  }
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(y);
  std::vector<double> out(omegas.size(), 0.0);
  for (std::size_t j = 0; j < omegas.size(); ++j)
    if (column[j] >= 0) out[j] = std::hypot(x[1 + 2 * column[j]], x[2 + 2 * column[j]]);
  return out;
}

}  // namespace entmap
