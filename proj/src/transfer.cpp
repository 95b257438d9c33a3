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

#include "ptcrystal/transfer.hpp"

#include <cmath>

#include "ptcrystal/error.hpp"

namespace ptcrystal {

ScatteringCoefficients coefficients_from(const TransferMatrix& tm) {
  const cplx m22 = tm.m22();
  return {1.0 / m22, -tm.m21() / m22, tm.m12() / m22, tm.momentum};
}

TransferMatrix transfer_from_fundamental(const FundamentalMatrix& fm, double p) {
  if (p == 0.0) throw DomainError("transfer matrix: T(p) is singular at p = 0");
  const cplx ip{0.0, p};
  Mat2 t;
  t << 1.0, 1.0, ip, -ip;
  // T^-1 = (1 / (-2ip)) [[-ip, -1], [-ip, 1]]
  Mat2 tinv;
  tinv << 0.5, 0.5 / ip, 0.5, -0.5 / ip;
  return {tinv * fm.z * t, p};
}

TransferMatrix free_transfer_matrix(double p, double length) {
  TransferMatrix tm;
  tm.momentum = p;
  tm.m << std::polar(1.0, p * length), 0.0, 0.0, std::polar(1.0, -p * length);
  return tm;
}

FundamentalMatrix free_fundamental_matrix(double p, double length) {
  const double c = std::cos(p * length);
  const double s = std::sin(p * length);
  FundamentalMatrix fm;
  fm.z << c, s / p, -p * s, c;
  return fm;
}

}  // namespace ptcrystal
