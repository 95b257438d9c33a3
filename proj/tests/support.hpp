////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of ptcrystal                                            //
//                                                                            //
//  Copyright 2026 ptcrystal developers                                       //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include "ptcrystal/crystal.hpp"
#include "ptcrystal/transfer.hpp"

namespace ptcrystal::testing {

// Fixed seed: every property test sees the same samples on every run.
inline constexpr std::uint64_t kSeed = 0x5eed2026ULL;

class Gen {
 public:
  explicit Gen(std::uint64_t salt = 0) : rng_(kSeed ^ salt) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }
  cplx complex(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

inline double max_entry_diff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

// |a-b| / max(|a|, |b|, 1), entrywise maximum
inline double scaled_diff(const Mat2& a, const Mat2& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double s = std::max({std::abs(a(i, j)), std::abs(b(i, j)), 1.0});
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / s);
    }
  return worst;
}

// Classical RK4 on y' = f(x, y) for a 2-vector of complex values.
using Vec2 = Eigen::Vector2cd;
inline Vec2 rk4(const std::function<Vec2(double, const Vec2&)>& f, Vec2 y, double x0, double x1,
                long steps) {
  const double h = (x1 - x0) / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    const double x = x0 + h * static_cast<double>(k);
    const Vec2 k1 = f(x, y);
    const Vec2 k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
    const Vec2 k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
    const Vec2 k4 = f(x + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

// Fundamental matrix of psi'' = -(p^2 + V) psi by direct integration over [0, length].
inline Mat2 integrate_fundamental(const std::function<cplx(double)>& v, double p, double length,
                                  long steps) {
  const auto f = [&](double x, const Vec2& y) {
    return Vec2(y(1), -(p * p + v(x)) * y(0));
  };
  Mat2 z;
  z.col(0) = rk4(f, Vec2(1.0, 0.0), 0.0, length, steps);
  z.col(1) = rk4(f, Vec2(0.0, 1.0), 0.0, length, steps);
  return z;
}

}  // namespace ptcrystal::testing
