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

// Numerical transfer matrix: the unit cell is cut into thin slices of
// locally constant potential, the slice propagators are multiplied in
// order, and the cell matrix is raised to the number of cells.

#include "ptcrystal/crystal.hpp"
#include "ptcrystal/transfer.hpp"

namespace ptcrystal::slice {

inline constexpr int kOracleSlices = 2000;
inline constexpr int kInteractiveSlices = 200;
inline constexpr int kMinSlices = 100;

/// Propagator over a slab of width dx with constant potential,
/// lambda = sqrt(p^2 + V). Even in lambda, so the square-root branch is irrelevant.
Mat2 slab_propagator(cplx lambda, double dx);

/// One period, potential sampled at slice midpoints. Throws DomainError for
/// slices < kMinSlices.
FundamentalMatrix cell_matrix(const FourierPotential& pot, double p, int slices);

/// cell^n through Z^n = Z U_{n-1} - I U_{n-2}, U_k = sin((k+1) theta) / sin(theta),
/// cos(theta) = tr(Z) / 2. Falls back to binary exponentiation when
/// |tr/2 -/+ 1| < 1e-12. Throws DomainError for n < 1.
FundamentalMatrix cell_power(const FundamentalMatrix& cell, long long n);

/// cell^n by repeated squaring.
FundamentalMatrix cell_power_squaring(const FundamentalMatrix& cell, long long n);

FundamentalMatrix slice_fundamental_matrix(const FourierPotential& pot, long long cells, double p,
                                           int slices);

/// Transfer matrix of `cells` periods of `pot`. Throws DomainError for p <= 0.
TransferMatrix slice_transfer_matrix(const FourierPotential& pot, long long cells, double p,
                                     int slices = kOracleSlices);

/// Sinusoidal crystal of arbitrary sigma.
TransferMatrix slice_transfer_matrix(const CrystalSpec& spec, double p,
                                     int slices = kOracleSlices);

}  // namespace ptcrystal::slice
