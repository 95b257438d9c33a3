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

#include "ptcrystal/exact.hpp"

#include <cmath>

#include "ptcrystal/error.hpp"
#include "ptcrystal/specfun.hpp"

namespace ptcrystal::exact {

using std::numbers::pi;

namespace {

void require_sigma_one(const CrystalSpec& spec) {
  spec.validate();
  if (spec.sigma != 1.0)
    throw UnsupportedError(
        "exact solver requires sigma = 1; valid methods for this crystal: slice, cmt, xcmt");
}

// pL = pi q N; reducing q N before multiplying by pi keeps the phase
// accurate for very long crystals.
double phase_turns(const CrystalSpec& spec, const BesselData& b) {
  return b.q * static_cast<double>(spec.cells);
}

// sin(pL) / sin(pi q) = U_{N-1}(cos pi q), finite at integer q where it
// tends to +-N. Written in the offset d from the nearest integer m so the
// ratio stays smooth across m.
double chebyshev_ratio(const CrystalSpec& spec, const BesselData& b) {
  const double m = std::round(b.q);
  const double d = b.q - m;
  const bool flip = std::fmod(std::fabs(m), 2.0) == 1.0 && (spec.cells - 1) % 2 == 1;
  const double n = static_cast<double>(spec.cells);
  const double u = d == 0.0 ? n : specfun::sin_pi(n * d) / specfun::sin_pi(d);
  return flip ? -u : u;
}

double f_value(const CrystalSpec& spec, const BesselData& b) {
  return spec.lambda * (b.p * b.p * b.q1 * b.q2 - spec.v0 * b.d1 * b.d2) /
         (2.0 * b.p * specfun::sin_pi(b.q));
}

TransferMatrix assemble(const CrystalSpec& spec, const BesselData& b, double p) {
  const double cos_pl = specfun::cos_pi(phase_turns(spec, b));
  const double c = spec.lambda * chebyshev_ratio(spec, b) / (2.0 * b.p);
  const double pp = b.p * b.p;
  const double sv = std::sqrt(spec.v0);

  const double diag = pp * b.q1 * b.q2 - spec.v0 * b.d1 * b.d2;
  const double sum = spec.v0 * b.d1 * b.d2 + pp * b.q1 * b.q2;
  const double cross = b.p * sv * (b.d1 * b.q2 + b.d2 * b.q1);
  const cplx i{0.0, 1.0};

  TransferMatrix tm;
  tm.momentum = p;
  tm.m << cos_pl + i * c * diag, -i * c * (sum + cross),  //
      i * c * (sum - cross), cos_pl - i * c * diag;
  return tm;
}

BesselData bessel_data_at(const CrystalSpec& spec, double q) {
  BesselData b;
  b.q = q;
  b.p = q * pi / spec.lambda;
  b.delta = spec.bessel_argument();
  const auto plus = specfun::besseli_eval(q, b.delta);
  const auto minus = specfun::besseli_eval(-q, b.delta);
  b.q1 = plus.value;
  b.q2 = minus.value;
  b.d1 = plus.derivative;
  b.d2 = minus.derivative;
  return b;
}

BesselData checked_data(const CrystalSpec& spec, double p, bool nudge) {
  require_sigma_one(spec);
  if (!(p > 0.0)) throw DomainError("exact solver: momentum must be > 0");
  if (spec.v0 == 0.0) throw DomainError("exact solver: v0 = 0 has no Bessel representation");
  const double q = Momentum{p, spec.lambda}.q();
  return bessel_data_at(spec, nudge ? nudged_order(q) : q);
}

// W^-1 is singular at integer q; there the route is evaluated on both sides
// of the integer and averaged, cancelling the first-order error of the shift.
template <class F>
auto straddle(const CrystalSpec& spec, double p, F eval) {
  const BesselData b = checked_data(spec, p, false);
  const double nearest = std::round(b.q);
  if (std::fabs(b.q - nearest) >= kIntegerNudge) return eval(b);
  const auto hi = eval(bessel_data_at(spec, nearest + kIntegerNudge));
  const auto lo = eval(bessel_data_at(spec, nearest - kIntegerNudge));
  return decltype(hi)(0.5 * (hi + lo));
}

}  // namespace

double nudged_order(double q) {
  const double nearest = std::round(q);
  const double offset = q - nearest;
  if (std::fabs(offset) >= kIntegerNudge) return q;
  return nearest + (offset >= 0.0 ? kIntegerNudge : -kIntegerNudge);
}

BesselData bessel_data(const CrystalSpec& spec, double p) { return checked_data(spec, p, true); }

TransferMatrix exact_transfer_matrix(const CrystalSpec& spec, double p) {
  require_sigma_one(spec);
  if (spec.v0 == 0.0) {
    if (!(p > 0.0)) throw DomainError("exact solver: momentum must be > 0");
    return free_transfer_matrix(p, spec.length());
  }
  return assemble(spec, checked_data(spec, p, false), p);
}

FundamentalMatrix exact_fundamental_matrix(const CrystalSpec& spec, double p) {
  require_sigma_one(spec);
  if (spec.v0 == 0.0) return free_fundamental_matrix(p, spec.length());
  const cplx i{0.0, 1.0};
  const double sv = std::sqrt(spec.v0);
  FundamentalMatrix fm;
  fm.z = straddle(spec, p, [&](const BesselData& b) {
    Mat2 w;
    w << b.q1, b.q2, i * sv * b.d1, i * sv * b.d2;
    Mat2 adj;
    adj << w(1, 1), -w(0, 1), -w(1, 0), w(0, 0);
    const double turns = phase_turns(spec, b);
    const cplx phase{specfun::cos_pi(turns), specfun::sin_pi(turns)};
    const Eigen::Vector2cd floquet(phase, std::conj(phase));
    // W^-1 = adj(W) / det(W), det(W) = -2 i sin(pi q) / lambda by the Wronskian.
    const cplx scale = i * spec.lambda / (2.0 * specfun::sin_pi(b.q));
    return Mat2(scale * (w * floquet.asDiagonal() * adj));
  });
  return fm;
}

cplx f_of_p(const CrystalSpec& spec, double p) {
  require_sigma_one(spec);
  if (spec.v0 == 0.0) return 1.0;
  return f_value(spec, bessel_data(spec, p));
}

cplx f_of_p_recurrence(const CrystalSpec& spec, double p) {
  require_sigma_one(spec);
  if (spec.v0 == 0.0) return 1.0;
  const BesselData b = bessel_data(spec, p);
  const double z = b.delta;
  const double i_qm1 = specfun::besseli(b.q - 1.0, z);
  const double i_1mq = specfun::besseli(1.0 - b.q, z);
  const double bracket = std::sqrt(spec.v0) * b.p * (b.q2 * i_qm1 + b.q1 * i_1mq) -
                         spec.v0 * i_qm1 * i_1mq;
  return spec.lambda * bracket / (2.0 * b.p * specfun::sin_pi(b.q));
}

ScatteringCoefficients exact_coefficients(const CrystalSpec& spec, double p) {
  require_sigma_one(spec);
  if (spec.v0 == 0.0) return coefficients_from(exact_transfer_matrix(spec, p));
  const BesselData b = checked_data(spec, p, false);
  ScatteringCoefficients sc = coefficients_from(assemble(spec, b, p));
  // t = 1 / (cos pL - i F sin pL), with F sin pL taken through the regular ratio
  const double f_sin = spec.lambda * (b.p * b.p * b.q1 * b.q2 - spec.v0 * b.d1 * b.d2) *
                       chebyshev_ratio(spec, b) / (2.0 * b.p);
  sc.t = 1.0 / (specfun::cos_pi(phase_turns(spec, b)) - cplx{0.0, 1.0} * f_sin);
  return sc;
}

}  // namespace ptcrystal::exact
