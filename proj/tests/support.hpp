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

// Seeded generators and small independent references shared by the tests.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "entmap/qcore.hpp"

namespace entmap::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  HamiltonianParams hamiltonian(double bound) {
    return {uniform(-bound, bound), uniform(-bound, bound), uniform(-bound, bound)};
  }

  // Haar-ish random state from complex Gaussians.
  Amplitudes amplitudes() {
    Amplitudes a;
    for (int i = 0; i < 4; ++i) a[i] = {normal(), normal()};
    return a / a.norm();
  }
  PureState state() { return PureState::normalized(amplitudes()); }

  // Random 2x2 unitary from the QR factor of a Gaussian matrix.
  Eigen::Matrix2cd unitary2() {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = {normal(), normal()};
    return Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
  }
  Matrix4 unitary4() {
    Matrix4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = {normal(), normal()};
    return Eigen::HouseholderQR<Matrix4>(m).householderQ();
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Matrix4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// 4 |a00 a11 - a01 a10|^2 computed directly.
inline double concurrence_sq_direct(const Amplitudes& a) {
  return 4.0 * std::norm(a[0] * a[3] - a[1] * a[2]);
}

// Overlap-based distance that ignores global phase.
inline double phase_distance(const Amplitudes& a, const Amplitudes& b) {
  const std::complex<double> ov = b.dot(a);  // <b|a>
  const std::complex<double> phase = std::abs(ov) > 0 ? ov / std::abs(ov) : 1.0;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

// Least-squares slope of log y against log x.
template <class V>
double loglog_slope(const V& x, const V& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace entmap::testing
