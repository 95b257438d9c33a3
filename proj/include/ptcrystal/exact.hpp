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

// Closed-form scattering for the sigma = 1 sinusoidal crystal
// V(x) = v0 exp(2 i pi x / lambda). With y = sqrt(alpha) exp(i pi x / lambda)
// the Schrodinger equation becomes the modified Bessel equation of order
// q = p lambda / pi, so I_q and I_-q evaluated at y(0) = sqrt(alpha) fix the
// whole transfer matrix.

#include "ptcrystal/crystal.hpp"
#include "ptcrystal/transfer.hpp"

namespace ptcrystal::exact {

/// Distance from an integer below which q is moved off the 1/sin(pi q) of F(p)
/// and of the Wronskian inverse. The transfer matrix itself only needs
/// sin(pL)/sin(pi q), which is regular there and evaluated without a shift.
inline constexpr double kIntegerNudge = 1e-6;

/// q moved to round(q) +/- kIntegerNudge when closer than that to an integer;
/// the sign follows q - round(q) (positive when q is exactly integral).
/// Used by bessel_data and F(p); the fundamental-matrix route averages
/// the two sides instead.
double nudged_order(double q);

struct BesselData {
  double q = 0.0;      // order actually evaluated (after nudging)
  double p = 0.0;      // momentum matching q
  double delta = 0.0;  // Bessel argument lambda sqrt(v0) / pi
  double q1 = 0.0;     // I_q(delta)
  double q2 = 0.0;     // I_-q(delta)
  double d1 = 0.0;     // I'_q(delta)
  double d2 = 0.0;     // I'_-q(delta)
};

/// Throws UnsupportedError for sigma != 1, DomainError for p <= 0 or v0 == 0.
BesselData bessel_data(const CrystalSpec& spec, double p);

/// Transfer matrix entries in closed form. v0 == 0 returns the free-space matrix.
TransferMatrix exact_transfer_matrix(const CrystalSpec& spec, double p);

/// Fundamental matrix assembled from the Bessel solutions and their Floquet
/// phases, Z = W diag(e^{ipL}, e^{-ipL}) W^-1 with W the solution matrix at x = 0.
FundamentalMatrix exact_fundamental_matrix(const CrystalSpec& spec, double p);

/// t from 1 / (cos pL - i F sin pL) with F sin pL in its regular form;
/// reflections from the transfer matrix.
ScatteringCoefficients exact_coefficients(const CrystalSpec& spec, double p);

/// F(p) = lambda (p^2 Q1 Q2 - v0 D1 D2) / (2 p sin(pi q)); F -> 1 as v0 -> 0.
cplx f_of_p(const CrystalSpec& spec, double p);

/// Same F(p) with the derivatives eliminated through
/// I'_q = I_{q-1} - (q/z) I_q and I'_-q = I_{1-q} - (q/z) I_-q.
cplx f_of_p_recurrence(const CrystalSpec& spec, double p);

}  // namespace ptcrystal::exact
