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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptcrystal/crystal.hpp"
#include "ptcrystal/slicetmm.hpp"
#include "ptcrystal/transfer.hpp"

namespace ptcrystal::analysis {

enum class Method { exact, slice, cmt, xcmt };

std::string_view to_string(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);

/// A crystal to be solved: any zero-mean potential repeated `cells` times,
/// remembering the sinusoidal parameters when it came from one.
struct Instance {
  FourierPotential potential{std::numbers::pi};
  long long cells = 1;
  std::optional<CrystalSpec> sinusoid;

  static Instance from_spec(const CrystalSpec& spec);
  static Instance from_potential(FourierPotential pot, long long cells);

  double length() const { return static_cast<double>(cells) * potential.period(); }
};

struct SolverOptions {
  int slices = slice::kInteractiveSlices;
};

/// Methods able to solve the instance (exact needs a sigma = 1 sinusoid).
std::vector<Method> valid_methods(const Instance& inst);

/// Throws UnsupportedError naming the valid methods when `m` cannot solve `inst`.
void check_compatible(const Instance& inst, Method m);

TransferMatrix solve(const Instance& inst, double p, Method m, const SolverOptions& opts = {});

struct ScanRow {
  double p = 0.0;
  double transmittance = 0.0;
  double reflectance_left = 0.0;
  double reflectance_right = 0.0;
  double tau_t = 0.0;  // NaN where undefined
  cplx t;
  cplx r_left;
  cplx r_right;
  cplx m22;
  std::string error;  // empty unless the solver failed at this row

  bool ok() const { return error.empty(); }
};

struct SpectralScan {
  Method method = Method::exact;
  Instance instance;
  std::vector<ScanRow> rows;
  std::vector<std::string> warnings;
};

/// points evenly spaced momenta, endpoints included. Throws DomainError for a
/// bad range and UnsupportedError for an incompatible method; per-row solver
/// failures are recorded in ScanRow::error.
SpectralScan scan(const Instance& inst, double p_min, double p_max, int points, Method m,
                  const SolverOptions& opts = {});
SpectralScan scan(const CrystalSpec& spec, double p_min, double p_max, int points, Method m,
                  const SolverOptions& opts = {});

/// Phase of t unwrapped across consecutive valid rows (steps folded into (-pi, pi]).
std::vector<double> unwrapped_phase(std::span<const ScanRow> rows);

/// tau_t = (1/L) dphi_t/dp: central differences, one-sided at the ends and
/// next to undefined rows. Rows with |t| < 1e-300 or a solver error get NaN.
/// Throws DomainError for fewer than 3 rows.
std::vector<double> phase_time(std::span<const ScanRow> rows, double length);

enum class Regime { invisible, reflectionless_not_invisible, broken };

std::string_view to_string(Regime r);

struct RegimeEvidence {
  double max_reflectance_left = 0.0;
  double max_abs_t_minus_1 = 0.0;
  Regime classification = Regime::invisible;
};

inline constexpr double kReflectionlessLimit = 1e-3;
inline constexpr double kInvisibleLimit = 0.1;

/// Classifies a scan: max R_left < 1e-3 is reflectionless, additionally
/// max |T - 1| < 0.1 is invisible.
RegimeEvidence evidence_from_scan(const SpectralScan& s);

struct RegimeReport {
  double alpha = 0.0;
  double l_c = 0.0;        // 2 pi^3 / (v0^2 lambda^3)
  double n_c = 0.0;        // 2 / (pi alpha^2)
  double n_c_prime = 0.0;  // 64 / (pi alpha^3)
  long long cells = 0;
  Regime classification = Regime::invisible;
  bool thresholds_infinite = false;
  /// cells within a factor of two of either threshold.
  bool near_boundary = false;
  std::optional<RegimeEvidence> evidence;
};

RegimeReport regime_thresholds(const CrystalSpec& spec);

/// max over t, r_left, r_right of |a - b| / max(|a|, |b|, 1).
double coefficient_discrepancy(const ScatteringCoefficients& a, const ScatteringCoefficients& b);
double coefficient_discrepancy(const ScanRow& a, const ScanRow& b);

struct Resonance {
  double p = 0.0;
  double min_abs_m22 = 0.0;
  /// |M22(p)| / |dM22/dp| at the minimum: distance of the nearby zero of M22
  /// from the real axis, i.e. the half width of the transmission peak.
  double half_width = 0.0;
};

/// Global minimum of |M22| on [p_lo, p_hi]: sampled finely enough to resolve
/// the sin(pL) fringes, the lowest local minima refined by golden section.
Resonance locate_resonance(const Instance& inst, double p_lo, double p_hi, Method m,
                           const SolverOptions& opts = {}, int min_points = 500);

struct SigmaCOptions {
  double threshold = 1e-3;
  double sigma_tolerance = 1e-4;
  int slices = slice::kInteractiveSlices;
};

struct SigmaCResult {
  bool found = false;
  double sigma_c = 0.0;
  double min_abs_m22 = 0.0;  // smallest |M22| attained (at sigma_c when found)
  double p_at_min = 0.0;
};

/// Smallest sigma on the ascending grid (refined by bisection) at which
/// min_p |M22(p)| drops below the threshold, i.e. a resonance reaches the real
/// axis. Uses the slice solver; v0, lambda and cells come from `geometry`,
/// whose sigma is ignored.
SigmaCResult find_sigma_c(const CrystalSpec& geometry, std::span<const double> sigma_grid,
                          std::span<const double> p_grid, const SigmaCOptions& opts = {});

/// min over p of |M22(p)| on the grid, refined around the best grid point.
std::pair<double, double> min_abs_m22(const CrystalSpec& spec, std::span<const double> p_grid,
                                      int slices);

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace ptcrystal::analysis
