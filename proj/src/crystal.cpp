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

#include "ptcrystal/crystal.hpp"

#include <cmath>
#include <string>

#include "ptcrystal/error.hpp"

namespace ptcrystal {

using std::numbers::pi;

void CrystalSpec::validate() const {
  if (!(v0 >= 0.0) || !std::isfinite(v0)) throw DomainError("crystal: v0 must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("crystal: lambda must be > 0");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("crystal: sigma must be >= 0");
  if (cells < 1) throw DomainError("crystal: cells must be a positive integer");
}

double CrystalSpec::alpha() const { return lambda * lambda * v0 / (pi * pi); }

double CrystalSpec::bessel_argument() const { return lambda * std::sqrt(v0) / pi; }

FourierPotential::FourierPotential(double period) : period_(period) {
  if (!(period > 0.0)) throw DomainError("potential: period must be > 0");
}

void FourierPotential::set(int n, cplx phi) {
  if (n == 0) throw DomainError("potential: zero-mean potential has no n = 0 coefficient");
  if (n > kMaxHarmonic || n < -kMaxHarmonic)
    throw DomainError("potential: harmonic index " + std::to_string(n) + " exceeds |n| <= 32");
  if (phi == cplx{})
    coefficients_.erase(n);
  else
    coefficients_[n] = phi;
}

cplx FourierPotential::coefficient(int n) const {
  auto it = coefficients_.find(n);
  return it == coefficients_.end() ? cplx{} : it->second;
}

bool FourierPotential::is_pt_symmetric() const {
  for (const auto& [n, phi] : coefficients_)
    if (std::fabs(phi.imag()) > 1e-14) return false;
  return true;
}

cplx FourierPotential::operator()(double x) const {
  cplx v{};
  const double k = 2.0 * pi * x / period_;
  for (const auto& [n, phi] : coefficients_) v += phi * std::polar(1.0, n * k);
  return v;
}

FourierPotential sinusoidal_potential(const CrystalSpec& spec) {
  spec.validate();
  FourierPotential pot(spec.lambda);
  pot.set(1, 0.5 * spec.v0 * (1.0 + spec.sigma));
  pot.set(-1, 0.5 * spec.v0 * (1.0 - spec.sigma));
  return pot;
}

cplx potential_value(const FourierPotential& pot, double x) { return pot(x); }

GratingEquivalent grating_to_schrodinger(cplx phi, double n0, double omega, double lambda,
                                         double c0) {
  if (!(n0 > 0.0) || !(omega > 0.0) || !(lambda > 0.0) || !(c0 > 0.0))
    throw DomainError("grating: n0, omega, lambda and c0 must all be > 0");
  GratingEquivalent g;
  g.lambda = lambda;
  g.p = omega * n0 / c0;
  g.v0 = g.p * g.p * std::abs(phi);
  g.omega_bragg = c0 * pi / (n0 * lambda);
  g.near_bragg = std::fabs(omega - g.omega_bragg) / g.omega_bragg < 0.01;
  return g;
}

}  // namespace ptcrystal
