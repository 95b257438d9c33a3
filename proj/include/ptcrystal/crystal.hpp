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

#include <complex>
#include <map>
#include <numbers>

namespace ptcrystal {

using cplx = std::complex<double>;

/// Finite sinusoidal crystal V(x) = v0 [cos(2 pi x / lambda) + i sigma sin(2 pi x / lambda)]
/// occupying 0 < x < cells * lambda. Dimensionless throughout.
struct CrystalSpec {
  double v0 = 0.0;
  double lambda = std::numbers::pi;
  double sigma = 1.0;
  long long cells = 1;

  /// Throws DomainError unless v0 >= 0, lambda > 0, sigma >= 0, cells >= 1.
  void validate() const;

  double length() const { return static_cast<double>(cells) * lambda; }
  /// lambda^2 v0 / pi^2, the shallow-lattice smallness parameter.
  double alpha() const;
  /// Bessel argument lambda sqrt(v0) / pi; equals sqrt(alpha()).
  double bessel_argument() const;

  bool operator==(const CrystalSpec&) const = default;
};

/// Zero-mean periodic potential sum_{n != 0} phi_n exp(2 pi i n x / period).
class FourierPotential {
 public:
  static constexpr int kMaxHarmonic = 32;

  explicit FourierPotential(double period);

  double period() const { return period_; }
  const std::map<int, cplx>& coefficients() const { return coefficients_; }

  /// Sets phi_n. Throws DomainError for n == 0 (zero mean) or |n| > kMaxHarmonic.
  void set(int n, cplx phi);
  /// phi_n, or zero when absent.
  cplx coefficient(int n) const;

  /// Real Fourier coefficients (to 1e-14) are equivalent to V(-x) = conj V(x).
  bool is_pt_symmetric() const;

  cplx operator()(double x) const;

  bool operator==(const FourierPotential&) const = default;

 private:
  double period_;
  std::map<int, cplx> coefficients_;
};

/// Incident momentum with the derived quantities used by the solvers.
struct Momentum {
  double p = 1.0;
  double lambda = std::numbers::pi;

  double q() const { return p * lambda / std::numbers::pi; }
  /// Detuning from the first Bragg momentum pi / lambda.
  double detuning() const { return p - std::numbers::pi / lambda; }
  double energy() const { return p * p; }
};

FourierPotential sinusoidal_potential(const CrystalSpec& spec);

cplx potential_value(const FourierPotential& pot, double x);

/// Equivalent Schrodinger parameters of a grating with dielectric modulation
/// phi exp(2 i pi x / lambda) in a medium of index n0, probed at frequency omega.
struct GratingEquivalent {
  double p = 0.0;
  double v0 = 0.0;
  double lambda = 0.0;
  double omega_bragg = 0.0;
  /// |omega - omega_bragg| / omega_bragg < 0.01, where dropping the energy
  /// dependence of the equivalent potential is justified.
  bool near_bragg = false;

  CrystalSpec to_spec(double sigma, long long cells) const { return {v0, lambda, sigma, cells}; }
};

GratingEquivalent grating_to_schrodinger(cplx phi, double n0, double omega, double lambda,
                                         double c0);

}  // namespace ptcrystal
