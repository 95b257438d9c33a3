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

#include <Eigen/Core>
#include <Eigen/LU>

#include "ptcrystal/crystal.hpp"

namespace ptcrystal {

using Mat2 = Eigen::Matrix2cd;

/// Maps (forward, backward) amplitudes on the left of the crystal to those on
/// the right: (a2, b2) = M (a1, b1).
struct TransferMatrix {
  Mat2 m = Mat2::Identity();
  double momentum = 0.0;

  cplx m11() const { return m(0, 0); }
  cplx m12() const { return m(0, 1); }
  cplx m21() const { return m(1, 0); }
  cplx m22() const { return m(1, 1); }
  cplx det() const { return m.determinant(); }
};

/// Maps (psi, dpsi/dx) at x = 0 to x = L.
struct FundamentalMatrix {
  Mat2 z = Mat2::Identity();

  cplx det() const { return z.determinant(); }
  cplx half_trace() const { return 0.5 * z.trace(); }
};

struct ScatteringCoefficients {
  cplx t;
  cplx r_left;
  cplx r_right;
  double momentum = 0.0;

  double transmittance() const { return std::norm(t); }
  double reflectance_left() const { return std::norm(r_left); }
  double reflectance_right() const { return std::norm(r_right); }
};

/// t = 1/M22, r_left = -M21/M22, r_right = M12/M22.
ScatteringCoefficients coefficients_from(const TransferMatrix& tm);

/// M = T^-1 Z T with T = [[1, 1], [ip, -ip]]. Throws DomainError at p = 0.
TransferMatrix transfer_from_fundamental(const FundamentalMatrix& fm, double p);

TransferMatrix free_transfer_matrix(double p, double length);

/// [[cos pL, sin(pL)/p], [-p sin pL, cos pL]].
FundamentalMatrix free_fundamental_matrix(double p, double length);

}  // namespace ptcrystal
