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

#include "ptcrystal/slicetmm.hpp"

#include <cmath>
#include <string>

#include "ptcrystal/error.hpp"

namespace ptcrystal::slice {

namespace {

// Near a band edge U Z - U' I cancels on the diagonal and det drifts by
// ~eps |U|^2 / |h -+ 1|; squaring is used there instead.
constexpr double kDegenerateTrace = 1e-2;

}  // namespace

Mat2 slab_propagator(cplx lambda, double dx) {
  const cplx arg = lambda * dx;
  const cplx c = std::cos(arg);
  cplx sinc_dx;  // sin(lambda dx) / lambda
  if (std::abs(arg) < 1e-8)
    sinc_dx = dx * (1.0 - arg * arg / 6.0);
  else
    sinc_dx = std::sin(arg) / lambda;
  Mat2 z;
  z << c, sinc_dx, -lambda * lambda * sinc_dx, c;
  return z;
}

FundamentalMatrix cell_matrix(const FourierPotential& pot, double p, int slices) {
  if (slices < kMinSlices)
    throw DomainError("slice solver: need at least 100 slices per cell, got " +
                      std::to_string(slices));
  const double dx = pot.period() / slices;
  const double pp = p * p;
  FundamentalMatrix fm;
  for (int k = 0; k < slices; ++k) {
    const double x = (k + 0.5) * dx;
    const cplx lambda = std::sqrt(pp + pot(x));
    fm.z = slab_propagator(lambda, dx) * fm.z;
  }
  return fm;
}

FundamentalMatrix cell_power_squaring(const FundamentalMatrix& cell, long long n) {
  if (n < 1) throw DomainError("cell power: exponent must be >= 1");
  Mat2 result = Mat2::Identity();
  Mat2 base = cell.z;
  for (long long e = n; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return {result};
}

FundamentalMatrix cell_power(const FundamentalMatrix& cell, long long n) {
  if (n < 1) throw DomainError("cell power: exponent must be >= 1");
  if (n == 1) return cell;
  const cplx h = cell.half_trace();
  if (std::abs(h - 1.0) < kDegenerateTrace || std::abs(h + 1.0) < kDegenerateTrace)
    return cell_power_squaring(cell, n);

  const cplx theta = std::acos(h);
  const double nd = static_cast<double>(n);
  // sin of a complex angle overflows once |Im(n theta)| approaches 710.
  if (std::fabs(theta.imag()) * nd > 600.0) return cell_power_squaring(cell, n);

  const cplx s = std::sin(theta);
  const cplx u_nm1 = std::sin(nd * theta) / s;
  const cplx u_nm2 = std::sin((nd - 1.0) * theta) / s;
  return {cell.z * u_nm1 - Mat2::Identity() * u_nm2};
}

FundamentalMatrix slice_fundamental_matrix(const FourierPotential& pot, long long cells, double p,
                                           int slices) {
  return cell_power(cell_matrix(pot, p, slices), cells);
}

TransferMatrix slice_transfer_matrix(const FourierPotential& pot, long long cells, double p,
                                     int slices) {
  if (!(p > 0.0)) throw DomainError("slice solver: momentum must be > 0");
  return transfer_from_fundamental(slice_fundamental_matrix(pot, cells, p, slices), p);
}

TransferMatrix slice_transfer_matrix(const CrystalSpec& spec, double p, int slices) {
  return slice_transfer_matrix(sinusoidal_potential(spec), spec.cells, p, slices);
}

}  // namespace ptcrystal::slice
