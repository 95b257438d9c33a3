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

// Modified Bessel function of the first kind I_nu(z) for real order and
// small positive real argument, summed from its ascending power series.

namespace ptcrystal::specfun {

inline constexpr double kMaxOrder = 64.0;
inline constexpr double kMaxArgument = 10.0;
inline constexpr double kSeriesTolerance = 1e-17;

/// sin(pi x) with exact zeros at integers.
double sin_pi(double x);

/// cos(pi x) with exact zeros at half-integers.
double cos_pi(double x);

/// 1/Gamma(x); finite everywhere, exactly zero at x = 0, -1, -2, ...
double rgamma(double x);

struct BesselEval {
  double order = 0.0;
  double argument = 0.0;
  double value = 0.0;
  double derivative = 0.0;
  int terms = 0;  // series terms summed
};

/// I_order(argument). Throws DomainError for argument <= 0 and RangeError
/// for |order| > kMaxOrder or argument > kMaxArgument.
double besseli(double order, double argument);

/// dI_order/dz at z = argument, from the term-by-term derivative of the series.
double besseli_deriv(double order, double argument);

/// Value and derivative from a single pass over the series.
BesselEval besseli_eval(double order, double argument);

}  // namespace ptcrystal::specfun
