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

// Coupled-mode theory of first-order Bragg scattering in a shallow zero-mean
// periodic potential. Forward/backward envelopes u, v obey
//   i u' = -delta u - rho1 v,   i v' = delta v + rho2 u,
// with delta = p - pi/period, rho1 = period phi_1 / 2pi, rho2 = period phi_-1 / 2pi.

#include <utility>
#include <vector>

#include "ptcrystal/crystal.hpp"
#include "ptcrystal/transfer.hpp"

namespace ptcrystal::cmt {

/// alpha at or above which coupled-mode results should not be trusted.
inline constexpr double kShallowAlphaLimit = 0.2;

struct CmtParameters {
  double delta = 0.0;
  cplx rho1;
  cplx rho2;
  double length = 0.0;
  double period = std::numbers::pi;

  static CmtParameters from_potential(const FourierPotential& pot, long long cells, double p);
  static CmtParameters from_spec(const CrystalSpec& spec, double p);
};

struct EnvelopePair {
  cplx u;
  cplx v;
};

/// (u(L), v(L)) = K (u(0), v(0)), in closed form.
Mat2 cmt_envelope_matrix(const CmtParameters& params);

/// Right-hand side of the envelope equations: (u', v').
EnvelopePair envelope_rates(const CmtParameters& params, const EnvelopePair& e);

/// Standard coupled-mode transfer matrix M = S K, S = diag(e^{i pi L/period}, e^{-i pi L/period}).
TransferMatrix cmt_transfer_matrix(const CmtParameters& params, double p);

ScatteringCoefficients cmt_coefficients(const CmtParameters& params, double p);

/// Extended coupled-mode transfer matrix: the field is rebuilt from the
/// envelopes including the first-order harmonic correction, and the
/// radiation conditions are applied to that field through M = T^-1 Z T.
/// Throws NumericalDegeneracy when the envelope basis is singular at x = 0.
TransferMatrix xcmt_transfer_matrix(const FourierPotential& pot, long long cells, double p);
TransferMatrix xcmt_transfer_matrix(const CrystalSpec& spec, double p);

/// Field and slope of the reconstructed solution at x for envelope values e.
std::pair<cplx, cplx> reconstructed_field(const FourierPotential& pot, const CmtParameters& params,
                                          const EnvelopePair& e, double x);

/// Left reflection magnitude at Bragg resonance for the sigma = 1 crystal:
/// (pi / 64) alpha^3 (L / lambda).
double rl_estimate(const CrystalSpec& spec);

bool is_shallow(const CrystalSpec& spec);

}  // namespace ptcrystal::cmt
