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

#include "ptcrystal/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ptcrystal/error.hpp"

namespace ptcrystal::specfun {

namespace {

constexpr int kMaxTerms = 400;

void check_arguments(double order, double argument) {
  if (!(argument > 0.0))
    throw DomainError("besseli: argument must be > 0, got " + std::to_string(argument));
  if (!(std::fabs(order) <= kMaxOrder))
    throw RangeError("besseli: |order| must be <= 64, got " + std::to_string(order));
  if (argument > kMaxArgument)
    throw RangeError("besseli: argument beyond series range (z <= 10), got " +
                     std::to_string(argument));
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double sin_pi(double x) {
  double r = std::remainder(x, 2.0);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5)
    r = 1.0 - r;
  else if (r < -0.5)
    r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double cos_pi(double x) {
  const double r = std::fabs(std::remainder(x, 2.0));
  if (r == 0.5) return 0.0;
  if (r > 0.5) return -std::cos(std::numbers::pi * (1.0 - r));
  return std::cos(std::numbers::pi * r);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) return 1.0 / std::tgamma(x);
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  return sin_pi(x) * std::tgamma(1.0 - x) / std::numbers::pi;
}

BesselEval besseli_eval(double order, double argument) {
  check_arguments(order, argument);

  const double half = 0.5 * argument;
  const double log_half = std::log(half);
  const double quarter_sq = half * half;

  double sum = 0.0;
  double dsum = 0.0;
  int k = 0;
  for (; k < kMaxTerms; ++k) {
    const double power = order + 2.0 * k;
    const double coeff = rgamma(k + 1.0) * rgamma(order + k + 1.0);
    const double term = coeff == 0.0 ? 0.0 : coeff * std::exp(power * log_half);
    const double dterm = term * power / argument;
    sum += term;
    dsum += dterm;

    // Only stop once the term ratio (z/2)^2 / ((k+1)(nu+k+1)) is below one
    // and every pole-suppressed leading term has been passed.
    const double denom = (k + 1.0) * (order + k + 1.0);
    const bool decreasing = denom > 0.0 && quarter_sq < denom && order + k + 1.0 > 0.0;
    if (decreasing && term != 0.0 && std::fabs(term) <= kSeriesTolerance * std::fabs(sum) &&
        std::fabs(dterm) <= kSeriesTolerance * std::fabs(dsum)) {
      ++k;
      break;
    }
  }
  return BesselEval{order, argument, sum, dsum, k};
}

double besseli(double order, double argument) { return besseli_eval(order, argument).value; }

double besseli_deriv(double order, double argument) {
  return besseli_eval(order, argument).derivative;
}

}  // namespace ptcrystal::specfun
