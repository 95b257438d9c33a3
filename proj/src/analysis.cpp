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

#include "ptcrystal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ptcrystal/cmt.hpp"
#include "ptcrystal/error.hpp"
#include "ptcrystal/exact.hpp"
#include "ptcrystal/parallel.hpp"

namespace ptcrystal {

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PTCRYSTAL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
}

}  // namespace ptcrystal

namespace ptcrystal::analysis {

using std::numbers::pi;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTinyTransmission = 1e-300;

// Golden-section search for a minimum of f on [a, b].
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

std::string join_methods(const std::vector<Method>& ms) {
  std::string out;
  for (auto m : ms) {
    if (!out.empty()) out += ", ";
    out += to_string(m);
  }
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::slice: return "slice";
    case Method::cmt: return "cmt";
    case Method::xcmt: return "xcmt";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::exact, Method::slice, Method::cmt, Method::xcmt})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected exact, slice, cmt or xcmt)");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::invisible: return "invisible";
    case Regime::reflectionless_not_invisible: return "reflectionless_not_invisible";
    case Regime::broken: return "broken";
  }
  return "?";
}

Instance Instance::from_spec(const CrystalSpec& spec) {
  return {sinusoidal_potential(spec), spec.cells, spec};
}

Instance Instance::from_potential(FourierPotential pot, long long cells) {
  if (cells < 1) throw DomainError("instance: cells must be a positive integer");
  return {std::move(pot), cells, std::nullopt};
}

std::vector<Method> valid_methods(const Instance& inst) {
  std::vector<Method> ms;
  if (inst.sinusoid && inst.sinusoid->sigma == 1.0) ms.push_back(Method::exact);
  ms.insert(ms.end(), {Method::slice, Method::cmt, Method::xcmt});
  return ms;
}

void check_compatible(const Instance& inst, Method m) {
  const auto ms = valid_methods(inst);
  if (std::find(ms.begin(), ms.end(), m) == ms.end())
    throw UnsupportedError("method '" + std::string(to_string(m)) +
                           "' cannot solve this crystal; valid methods: " + join_methods(ms));
}

TransferMatrix solve(const Instance& inst, double p, Method m, const SolverOptions& opts) {
  check_compatible(inst, m);
  switch (m) {
    case Method::exact: return exact::exact_transfer_matrix(*inst.sinusoid, p);
    case Method::slice: return slice::slice_transfer_matrix(inst.potential, inst.cells, p, opts.slices);
    case Method::cmt: {
      if (!(p > 0.0)) throw DomainError("cmt: momentum must be > 0");
      return cmt::cmt_transfer_matrix(
          cmt::CmtParameters::from_potential(inst.potential, inst.cells, p), p);
    }
    case Method::xcmt: return cmt::xcmt_transfer_matrix(inst.potential, inst.cells, p);
  }
  throw std::logic_error("unreachable");
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
  if (points == 1) v[0] = lo;
  for (int i = 0; i < points && points > 1; ++i)
    v[i] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
  return v;
}

SpectralScan scan(const Instance& inst, double p_min, double p_max, int points, Method m,
                  const SolverOptions& opts) {
  if (!(p_min > 0.0) || !(p_max > p_min))
    throw DomainError("scan: need 0 < p_min < p_max");
  if (points < 3) throw DomainError("scan: need at least 3 points");
  check_compatible(inst, m);

  SpectralScan s{m, inst, {}, {}};
  const auto ps = linspace(p_min, p_max, points);
  s.rows.resize(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) {
    ScanRow& row = s.rows[i];
    row.p = ps[i];
    try {
      const TransferMatrix tm = solve(inst, row.p, m, opts);
      const ScatteringCoefficients c = coefficients_from(tm);
      row.t = c.t;
      row.r_left = c.r_left;
      row.r_right = c.r_right;
      row.m22 = tm.m22();
      row.transmittance = c.transmittance();
      row.reflectance_left = c.reflectance_left();
      row.reflectance_right = c.reflectance_right();
      if (!std::isfinite(row.transmittance) || !std::isfinite(row.reflectance_left) ||
          !std::isfinite(row.reflectance_right))
        row.error = "non-finite scattering coefficients";
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (!row.ok()) {
      row.transmittance = row.reflectance_left = row.reflectance_right = kNaN;
      row.t = row.r_left = row.r_right = row.m22 = cplx{kNaN, kNaN};
    }
  });

  const auto tau = phase_time(s.rows, inst.length());
  for (std::size_t i = 0; i < s.rows.size(); ++i) s.rows[i].tau_t = tau[i];

  const double step = (p_max - p_min) / (points - 1);
  if (inst.length() * step >= pi)
    s.warnings.push_back("momentum step too coarse for phase unwrapping: L * dp >= pi");
  if ((m == Method::cmt || m == Method::xcmt) && inst.sinusoid && !cmt::is_shallow(*inst.sinusoid))
    s.warnings.push_back("alpha >= 0.2: coupled-mode results are outside the shallow-lattice regime");
  return s;
}

SpectralScan scan(const CrystalSpec& spec, double p_min, double p_max, int points, Method m,
                  const SolverOptions& opts) {
  return scan(Instance::from_spec(spec), p_min, p_max, points, m, opts);
}

namespace {

bool phase_defined(const ScanRow& r) { return r.ok() && std::abs(r.t) >= kTinyTransmission; }

}  // namespace

std::vector<double> unwrapped_phase(std::span<const ScanRow> rows) {
  std::vector<double> phi(rows.size(), kNaN);
  std::optional<double> prev;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!phase_defined(rows[i])) continue;
    double a = std::arg(rows[i].t);
    if (prev) a = *prev + std::remainder(a - *prev, 2.0 * pi);
    phi[i] = a;
    prev = a;
  }
  return phi;
}

std::vector<double> phase_time(std::span<const ScanRow> rows, double length) {
  if (rows.size() < 3) throw DomainError("phase time: need at least 3 rows");
  const auto phi = unwrapped_phase(rows);
  const std::size_t n = rows.size();
  std::vector<double> tau(n, kNaN);
  auto valid = [&](std::size_t j) { return !std::isnan(phi[j]); };
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid(i)) continue;
    const std::size_t lo = (i > 0 && valid(i - 1)) ? i - 1 : i;
    const std::size_t hi = (i + 1 < n && valid(i + 1)) ? i + 1 : i;
    if (lo == hi) continue;
    tau[i] = (phi[hi] - phi[lo]) / (rows[hi].p - rows[lo].p) / length;
  }
  return tau;
}

RegimeEvidence evidence_from_scan(const SpectralScan& s) {
  RegimeEvidence ev;
  for (const auto& r : s.rows) {
    if (!r.ok()) continue;
    ev.max_reflectance_left = std::max(ev.max_reflectance_left, r.reflectance_left);
    ev.max_abs_t_minus_1 = std::max(ev.max_abs_t_minus_1, std::fabs(r.transmittance - 1.0));
  }
  if (ev.max_reflectance_left >= kReflectionlessLimit)
    ev.classification = Regime::broken;
  else if (ev.max_abs_t_minus_1 >= kInvisibleLimit)
    ev.classification = Regime::reflectionless_not_invisible;
  else
    ev.classification = Regime::invisible;
  return ev;
}

RegimeReport regime_thresholds(const CrystalSpec& spec) {
  spec.validate();
  RegimeReport rep;
  rep.cells = spec.cells;
  rep.alpha = spec.alpha();
  if (rep.alpha == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    rep.l_c = rep.n_c = rep.n_c_prime = inf;
    rep.thresholds_infinite = true;
    rep.classification = Regime::invisible;
    return rep;
  }
  const double a = rep.alpha;
  rep.l_c = 2.0 * pi * pi * pi / (spec.v0 * spec.v0 * spec.lambda * spec.lambda * spec.lambda);
  rep.n_c = 2.0 / (pi * a * a);
  rep.n_c_prime = 64.0 / (pi * a * a * a);
  const double n = static_cast<double>(spec.cells);
  if (n < rep.n_c)
    rep.classification = Regime::invisible;
  else if (n < rep.n_c_prime)
    rep.classification = Regime::reflectionless_not_invisible;
  else
    rep.classification = Regime::broken;
  auto near = [n](double thr) { return n >= 0.5 * thr && n <= 2.0 * thr; };
  rep.near_boundary = near(rep.n_c) || near(rep.n_c_prime);
  return rep;
}

double coefficient_discrepancy(const ScatteringCoefficients& a, const ScatteringCoefficients& b) {
  auto rel = [](cplx x, cplx y) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1.0});
  };
  return std::max({rel(a.t, b.t), rel(a.r_left, b.r_left), rel(a.r_right, b.r_right)});
}

double coefficient_discrepancy(const ScanRow& a, const ScanRow& b) {
  return coefficient_discrepancy(ScatteringCoefficients{a.t, a.r_left, a.r_right, a.p},
                                 ScatteringCoefficients{b.t, b.r_left, b.r_right, b.p});
}

Resonance locate_resonance(const Instance& inst, double p_lo, double p_hi, Method m,
                           const SolverOptions& opts, int min_points) {
  if (!(p_lo > 0.0) || !(p_hi > p_lo)) throw DomainError("resonance search: need 0 < p_lo < p_hi");
  check_compatible(inst, m);
  // sin(pL) has period 2 pi / L in p; sample each fringe about ten times.
  const double fringes = (p_hi - p_lo) * inst.length() / (2.0 * pi);
  const int points = std::max(min_points, static_cast<int>(std::ceil(10.0 * fringes)) + 1);
  const auto ps = linspace(p_lo, p_hi, points);
  std::vector<double> mag(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) {
    try {
      mag[i] = std::abs(solve(inst, ps[i], m, opts).m22());
    } catch (const std::exception&) {
      mag[i] = std::numeric_limits<double>::infinity();
    }
  });

  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < ps.size(); ++i)
    if (mag[i] <= mag[i - 1] && mag[i] <= mag[i + 1]) minima.push_back(i);
  if (minima.empty())
    minima.push_back(static_cast<std::size_t>(std::min_element(mag.begin(), mag.end()) - mag.begin()));
  std::sort(minima.begin(), minima.end(), [&](auto a, auto b) { return mag[a] < mag[b]; });
  if (minima.size() > 8) minima.resize(8);

  auto objective = [&](double p) { return std::abs(solve(inst, p, m, opts).m22()); };
  const double spacing = ps[1] - ps[0];
  Resonance best{ps[minima.front()], mag[minima.front()], 0.0};
  for (auto i : minima) {
    const double a = ps[i > 0 ? i - 1 : i];
    const double b = ps[std::min(i + 1, ps.size() - 1)];
    const auto [p, v] = golden_min(objective, a, b, 1e-15 * std::max(1.0, p_hi));
    if (v < best.min_abs_m22) best = {p, v, 0.0};
  }
  const double h = 1e-3 * spacing;
  const cplx slope =
      (solve(inst, best.p + h, m, opts).m22() - solve(inst, best.p - h, m, opts).m22()) / (2.0 * h);
  best.half_width = std::abs(slope) > 0.0 ? best.min_abs_m22 / std::abs(slope) : 0.0;
  return best;
}

std::pair<double, double> min_abs_m22(const CrystalSpec& spec, std::span<const double> p_grid,
                                      int slices) {
  if (p_grid.empty()) throw DomainError("min |M22|: empty momentum grid");
  const auto pot = sinusoidal_potential(spec);
  auto objective = [&](double p) {
    return std::abs(slice::slice_transfer_matrix(pot, spec.cells, p, slices).m22());
  };
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    const double v = objective(p_grid[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (p_grid.size() < 2) return {best_val, p_grid[best]};
  const double a = p_grid[best > 0 ? best - 1 : best];
  const double b = p_grid[std::min(best + 1, p_grid.size() - 1)];
  const auto [p, v] = golden_min(objective, a, b, 1e-13);
  return v < best_val ? std::pair{v, p} : std::pair{best_val, p_grid[best]};
}

SigmaCResult find_sigma_c(const CrystalSpec& geometry, std::span<const double> sigma_grid,
                          std::span<const double> p_grid, const SigmaCOptions& opts) {
  if (sigma_grid.empty()) throw DomainError("sigma_c: empty sigma grid");
  if (!std::is_sorted(sigma_grid.begin(), sigma_grid.end()))
    throw DomainError("sigma_c: sigma grid must be ascending");

  auto evaluate = [&](double sigma) {
    CrystalSpec s = geometry;
    s.sigma = sigma;
    return min_abs_m22(s, p_grid, opts.slices);
  };
  std::vector<std::pair<double, double>> f(sigma_grid.size());
  parallel_for(sigma_grid.size(), [&](std::size_t i) { f[i] = evaluate(sigma_grid[i]); });

  SigmaCResult result;
  result.min_abs_m22 = std::numeric_limits<double>::infinity();
  for (const auto& [v, p] : f)
    if (v < result.min_abs_m22) {
      result.min_abs_m22 = v;
      result.p_at_min = p;
    }

  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    double hit = 0.0;
    if (f[i].first < opts.threshold) {
      hit = sigma_grid[i];
    } else if (i > 0 && i + 1 < sigma_grid.size() && f[i].first <= f[i - 1].first &&
               f[i].first <= f[i + 1].first) {
      // The minimum over p touches zero only in a narrow sigma window around
      // the crossing; refine the local minimum of the sampled curve.
      const auto [s, v] = golden_min([&](double sg) { return evaluate(sg).first; },
                                     sigma_grid[i - 1], sigma_grid[i + 1],
                                     0.01 * opts.sigma_tolerance);
      if (v >= opts.threshold) continue;
      hit = s;
    } else {
      continue;
    }
    if (i == 0 && hit == sigma_grid[0]) {
      const auto [v, p] = f[0];
      return {true, hit, v, p};
    }
    double lo = sigma_grid[i - 1];
    double hi = hit;
    while (hi - lo > opts.sigma_tolerance) {
      const double mid = 0.5 * (lo + hi);
      (evaluate(mid).first < opts.threshold ? hi : lo) = mid;
    }
    const auto [v, p] = evaluate(hi);
    return {true, hi, v, p};
  }
  return result;
}

}  // namespace ptcrystal::analysis
