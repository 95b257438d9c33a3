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

#include "ptcrystal/cmt.hpp"

#include <cmath>

#include "ptcrystal/error.hpp"

namespace ptcrystal::cmt {

using std::numbers::pi;

namespace {

constexpr cplx kI{0.0, 1.0};

// cosh(z) and sinh(z)/z; both even in z.
std::pair<cplx, cplx> cosh_shc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return {1.0 + z2 / 2.0 + z2 * z2 / 24.0, 1.0 + z2 / 6.0 + z2 * z2 / 120.0};
  }
  return {std::cosh(z), std::sinh(z) / z};
}

Mat2 generator(const CmtParameters& params) {
  Mat2 a;
  a << kI * params.delta, kI * params.rho1, -kI * params.rho2, -kI * params.delta;
  return a;
}

struct Harmonic {
  cplx weight;
  double wavenumber;
};

// Field components carried by u (sign = +1) or v (sign = -1): the Bragg wave
// exp(+-i pi x/period) plus the first-order harmonics
// (period/pi)^2 phi_n exp(i (2n +- 1) pi x/period) / ((2n +- 1)^2 - 1).
std::vector<Harmonic> field_harmonics(const FourierPotential& pot, int sign) {
  const double k0 = pi / pot.period();
  std::vector<Harmonic> h{{1.0, sign * k0}};
  const double scale = pot.period() * pot.period() / (pi * pi);
  for (const auto& [n, phi] : pot.coefficients()) {
    const int m = 2 * n + sign;
    if (m == 1 || m == -1) continue;
    h.push_back({scale * phi / static_cast<double>(m * m - 1), m * k0});
  }
  return h;
}

}  // namespace

CmtParameters CmtParameters::from_potential(const FourierPotential& pot, long long cells,
                                            double p) {
  const double period = pot.period();
  CmtParameters c;
  c.delta = p - pi / period;
  c.rho1 = period * pot.coefficient(1) / (2.0 * pi);
  c.rho2 = period * pot.coefficient(-1) / (2.0 * pi);
  c.length = static_cast<double>(cells) * period;
  c.period = period;
  return c;
}

CmtParameters CmtParameters::from_spec(const CrystalSpec& spec, double p) {
  return from_potential(sinusoidal_potential(spec), spec.cells, p);
}

Mat2 cmt_envelope_matrix(const CmtParameters& params) {
  const double dl = params.delta * params.length;
  if (params.rho1 == cplx{} || params.rho2 == cplx{}) {
    // triangular generator: one envelope is never fed by the other
    const double sinc_l = std::fabs(dl) < 1e-8 ? params.length * (1.0 - dl * dl / 6.0)
                                               : std::sin(dl) / params.delta;
    Mat2 k;
    k << std::polar(1.0, dl), kI * params.rho1 * sinc_l,  //
        -kI * params.rho2 * sinc_l, std::polar(1.0, -dl);
    return k;
  }
  // The generator is traceless, so exp(A L) = cosh(mu L) I + L shc(mu L) A
  // with mu^2 = -det A = rho1 rho2 - delta^2.
  const cplx mu = std::sqrt(params.rho1 * params.rho2 - params.delta * params.delta);
  const auto [ch, shc] = cosh_shc(mu * params.length);
  return ch * Mat2::Identity() + (params.length * shc) * generator(params);
}

EnvelopePair envelope_rates(const CmtParameters& params, const EnvelopePair& e) {
  return {kI * (params.delta * e.u + params.rho1 * e.v),
          -kI * (params.delta * e.v + params.rho2 * e.u)};
}

TransferMatrix cmt_transfer_matrix(const CmtParameters& params, double p) {
  const double bragg_phase = pi * params.length / params.period;
  const auto s = Eigen::Vector2cd(std::polar(1.0, bragg_phase), std::polar(1.0, -bragg_phase));
  return {s.asDiagonal() * cmt_envelope_matrix(params), p};
}

ScatteringCoefficients cmt_coefficients(const CmtParameters& params, double p) {
  return coefficients_from(cmt_transfer_matrix(params, p));
}

std::pair<cplx, cplx> reconstructed_field(const FourierPotential& pot, const CmtParameters& params,
                                          const EnvelopePair& e, double x) {
  const EnvelopePair rate = envelope_rates(params, e);
  cplx psi{}, dpsi{};
  auto add = [&](const std::vector<Harmonic>& hs, cplx amp, cplx damp) {
    for (const auto& h : hs) {
      const cplx w = h.weight * std::polar(1.0, h.wavenumber * x);
      psi += amp * w;
      dpsi += (damp + kI * h.wavenumber * amp) * w;
    }
  };
  add(field_harmonics(pot, +1), e.u, rate.u);
  add(field_harmonics(pot, -1), e.v, rate.v);
  return {psi, dpsi};
}

TransferMatrix xcmt_transfer_matrix(const FourierPotential& pot, long long cells, double p) {
  if (!(p > 0.0)) throw DomainError("xcmt: momentum must be > 0");
  const CmtParameters params = CmtParameters::from_potential(pot, cells, p);
  const Mat2 k = cmt_envelope_matrix(params);

  Mat2 at0, atl;
  for (int col = 0; col < 2; ++col) {
    const EnvelopePair start{col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : 1.0};
    const EnvelopePair end{k(0, col), k(1, col)};
    const auto [f0, d0] = reconstructed_field(pot, params, start, 0.0);
    const auto [fl, dl] = reconstructed_field(pot, params, end, params.length);
    at0(0, col) = f0;
    at0(1, col) = d0;
    atl(0, col) = fl;
    atl(1, col) = dl;
  }
  if (std::abs(at0.determinant()) < 1e-12)
    throw NumericalDegeneracy("xcmt: envelope basis is degenerate at x = 0");
  return transfer_from_fundamental({atl * at0.inverse()}, p);
}

TransferMatrix xcmt_transfer_matrix(const CrystalSpec& spec, double p) {
  return xcmt_transfer_matrix(sinusoidal_potential(spec), spec.cells, p);
}

double rl_estimate(const CrystalSpec& spec) {
  const double a = spec.alpha();
  return pi / 64.0 * a * a * a * static_cast<double>(spec.cells);
}

bool is_shallow(const CrystalSpec& spec) { return spec.alpha() < kShallowAlphaLimit; }

}  // namespace ptcrystal::cmt
