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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ptcrystal/analysis.hpp"
#include "ptcrystal/cmt.hpp"
#include "ptcrystal/exact.hpp"
#include "ptcrystal/parallel.hpp"
#include "ptcrystal/slicetmm.hpp"
#include "ptcrystal/specfun.hpp"

using namespace ptcrystal;
using analysis::Method;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // records a sub-check; every clause is reported, failing or not
  void clause(bool ok, const std::string& text) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << (ok ? "" : "[x] ") << text;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_over(const analysis::SpectralScan& s, const std::function<double(const analysis::ScanRow&)>& f) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : s.rows)
    if (r.ok()) m = std::max(m, f(r));
  return m;
}

// 1. exact vs slice oracle
Outcome ac1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    double v0;
    long long n;
    double p;
  };
  std::vector<Case> cases;
  for (double v0 : {0.005, 0.02, 0.05})
    for (long long n : {10LL, 50LL, 200LL})
      for (double p : analysis::linspace(0.9, 1.1, 50)) cases.push_back({v0, n, p});
  std::vector<double> disc(cases.size()), pure(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const CrystalSpec s{cases[i].v0, pi, 1.0, cases[i].n};
    const auto e = exact::exact_coefficients(s, cases[i].p);
    const auto c = coefficients_from(slice::slice_transfer_matrix(s, cases[i].p, slice::kOracleSlices));
    disc[i] = analysis::coefficient_discrepancy(e, c);
    auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); };
    pure[i] = std::max({rel(e.t, c.t), rel(e.r_left, c.r_left), rel(e.r_right, c.r_right)});
  });
  const double worst = *std::max_element(disc.begin(), disc.end());
  const double secs = seconds_since(t0);
  o.clause(worst < 1e-6, "max relative discrepancy " + fmt(worst) + " < 1e-6 over " +
                             std::to_string(cases.size()) + " points");
  o.detail << " (coefficient-wise relative without the unit floor: "
           << fmt(*std::max_element(pure.begin(), pure.end())) << ")";
  o.clause(secs < 30.0, "runtime " + fmt(secs) + " s < 30 s");
  return o;
}

// 2. invisible regime, N = 50
Outcome ac2() {
  Outcome o;
  const auto s = analysis::scan(CrystalSpec{0.02, pi, 1.0, 50}, 0.9, 1.1, 2000, Method::exact);
  const double rl = max_over(s, [](const auto& r) { return r.reflectance_left; });
  const double dt = max_over(s, [](const auto& r) { return std::fabs(r.transmittance - 1.0); });
  const double dtau = max_over(s, [](const auto& r) { return std::fabs(r.tau_t - 1.0); });
  const double rr = max_over(s, [](const auto& r) { return r.reflectance_right; });
  o.clause(rl < 1e-4, "max R_left " + fmt(rl) + " < 1e-4");
  o.clause(dt < 0.05, "max |T-1| " + fmt(dt) + " < 0.05");
  o.clause(dtau < 1e-2, "max |tau-1| " + fmt(dtau) + " < 1e-2");
  o.clause(std::fabs(rr - 2.467) < 0.1 * 2.467, "R_right peak " + fmt(rr) + " within 10% of 2.467");
  return o;
}

// 3. N = 2000, past N_c
Outcome ac3() {
  Outcome o;
  const CrystalSpec spec{0.02, pi, 1.0, 2000};
  const double lo = 0.97, hi = 1.03;
  const int n = 6001;
  const auto ex = analysis::scan(spec, lo, hi, n, Method::exact);
  const auto xc = analysis::scan(spec, lo, hi, n, Method::xcmt);
  const auto st = analysis::scan(spec, lo, hi, n, Method::cmt);
  const double dt = max_over(ex, [](const auto& r) { return std::fabs(r.transmittance - 1.0); });
  const double rl = max_over(ex, [](const auto& r) { return r.reflectance_left; });
  o.clause(dt > 0.5, "exact max |T-1| " + fmt(dt) + " > 0.5");
  o.clause(rl < 1e-3, "exact max R_left " + fmt(rl) + " < 1e-3");

  int deviating = 0, matched = 0;
  double worst_x = 0.0, worst_cmt = 0.0;
  for (int i = 0; i < n; ++i) {
    const double te = ex.rows[i].transmittance;
    const double dev_cmt = std::fabs(st.rows[i].transmittance - te) / te;
    const double dev_x = std::fabs(xc.rows[i].transmittance - te) / te;
    worst_x = std::max(worst_x, dev_x);
    worst_cmt = std::max(worst_cmt, dev_cmt);
    if (dev_cmt > 0.5) {
      ++deviating;
      matched += dev_x < 0.1;
    }
  }
  o.clause(deviating > 0 && matched == deviating,
           "xcmt within 10% of exact T at " + std::to_string(matched) + " of " +
               std::to_string(deviating) + " points where standard CMT deviates > 50% (max CMT deviation " +
               fmt(worst_cmt) + ", max xcmt deviation " + fmt(worst_x) + ")");
  return o;
}

// 4. threshold arithmetic
Outcome ac4() {
  Outcome o;
  const auto r = analysis::regime_thresholds({0.02, pi, 1.0, 50});
  const double nc = 2.0 / (pi * 4e-4), ncp = 64.0 / (pi * 8e-6);
  const double lc = 2.0 * pi * pi * pi / (0.02 * 0.02 * pi * pi * pi);
  auto rel = [](double a, double b) { return std::fabs(a - b) / std::fabs(b); };
  o.clause(rel(r.n_c, nc) < 1e-12 && rel(r.n_c, 1591.5494309189533) < 1e-12,
           "N_c = " + fmt(r.n_c));
  o.clause(rel(r.n_c_prime, ncp) < 1e-12 && rel(r.n_c_prime, 2546479.0894703255) < 1e-12,
           "N_c' = " + fmt(r.n_c_prime));
  o.clause(rel(r.l_c, lc) < 1e-12 && rel(r.l_c, 5000.0) < 1e-12, "L_c = " + fmt(r.l_c));
  const auto g = analysis::regime_thresholds({0.07, 1.3, 1.0, 10});
  const double a = 1.3 * 1.3 * 0.07 / (pi * pi);
  o.clause(rel(g.n_c, 2.0 / (pi * a * a)) < 1e-12 && rel(g.n_c_prime, 64.0 / (pi * a * a * a)) < 1e-12 &&
               rel(g.l_c, 2.0 * pi * pi * pi / (0.07 * 0.07 * 1.3 * 1.3 * 1.3)) < 1e-12,
           "general lambda consistent");
  return o;
}

// 5. invisibility identity of standard CMT
Outcome ac5() {
  Outcome o;
  double worst_t = 0.0, worst_k = 0.0;
  bool rl_zero = true;
  for (double v0 : {0.005, 0.02, 0.05})
    for (long long n : {10LL, 50LL, 2000LL})
      for (double p : analysis::linspace(0.9, 1.1, 201)) {
        const CrystalSpec s{v0, pi, 1.0, n};
        const auto params = cmt::CmtParameters::from_spec(s, p);
        const auto c = cmt::cmt_coefficients(params, p);
        rl_zero = rl_zero && c.r_left == cplx{};
        worst_t = std::max(worst_t, std::abs(c.t - std::polar(1.0, p * s.length())) / n);
        const double dl = params.delta * params.length;
        const cplx i{0.0, 1.0};
        Mat2 eq;
        eq << std::exp(i * dl), i * params.rho1 * std::sin(dl) / params.delta, 0.0, std::exp(-i * dl);
        worst_k = std::max(worst_k, (cmt::cmt_envelope_matrix(params) - eq).cwiseAbs().maxCoeff());
      }
  o.clause(rl_zero, "r_left identically 0");
  o.clause(worst_t < 1e-14, "|t - exp(ipL)| / N max " + fmt(worst_t) + " (rounding level)");
  o.clause(worst_k < 1e-14, "propagator vs triangular closed form max " + fmt(worst_k) + " < 1e-14");
  return o;
}

// 6. special functions
Outcome ac6() {
  Outcome o;
  double w = 0.0, half = 0.0, rec = 0.0;
  for (int a = 1; a < 200; ++a) {
    const double nu = a / 100.0;
    if (a == 100) continue;
    for (int b = 1; b <= 50; ++b) {
      const double z = b / 100.0;
      const double lhs = specfun::besseli(nu, z) * specfun::besseli_deriv(-nu, z) -
                         specfun::besseli(-nu, z) * specfun::besseli_deriv(nu, z);
      const double rhs = -2.0 * std::sin(nu * pi) / (pi * z);
      w = std::max(w, std::fabs(lhs - rhs) / std::fabs(rhs));
      for (double sgn : {1.0, -1.0}) {
        const double v = sgn * nu;
        const double i0 = specfun::besseli(v, z);
        const double down = specfun::besseli(v - 1.0, z) - v / z * i0;
        const double up = specfun::besseli(v + 1.0, z) + v / z * i0;
        const double scale = std::max(std::fabs(down), std::fabs(v / z * i0));
        rec = std::max({rec, std::fabs(down - up) / scale,
                        std::fabs(specfun::besseli_deriv(v, z) - down) / scale});
      }
    }
  }
  for (double z : analysis::linspace(0.01, 5.0, 500))
    half = std::max(half, std::fabs(specfun::besseli(0.5, z) - std::sqrt(2.0 / (pi * z)) * std::sinh(z)) /
                              (std::sqrt(2.0 / (pi * z)) * std::sinh(z)));
  o.clause(w < 1e-10, "Wronskian max rel " + fmt(w) + " < 1e-10");
  o.clause(half < 1e-10, "half order max rel " + fmt(half) + " < 1e-10");
  o.clause(rec < 1e-12, "derivative recurrences max rel " + fmt(rec) + " < 1e-12");
  return o;
}

// 7. structural invariants
Outcome ac7() {
  Outcome o;
  struct Worst {
    double det = 0.0, pt = 0.0;
  };
  Worst ex, sl, cm, xc;
  double flux = 0.0;
  auto record = [](Worst& w, const TransferMatrix& m) {
    w.det = std::max(w.det, std::abs(m.det() - 1.0));
    w.pt = std::max(w.pt, std::abs(m.m22() - std::conj(m.m11())));
  };
  for (double v0 : {0.005, 0.02, 0.05})
    for (long long n : {10LL, 50LL, 200LL})
      for (double sigma : {0.0, 0.5, 1.0, 1.5})
        for (double p : analysis::linspace(0.9, 1.1, 41)) {
          const CrystalSpec s{v0, pi, sigma, n};
          if (sigma == 1.0) record(ex, exact::exact_transfer_matrix(s, p));
          const auto m = slice::slice_transfer_matrix(s, p, 200);
          record(sl, m);
          const auto mc = cmt::cmt_transfer_matrix(cmt::CmtParameters::from_spec(s, p), p);
          record(cm, mc);
          record(xc, cmt::xcmt_transfer_matrix(s, p));
          if (sigma == 0.0)
            for (const auto& c : {coefficients_from(m), coefficients_from(mc)})
              flux = std::max({flux, std::fabs(c.transmittance() + c.reflectance_left() - 1.0),
                               std::fabs(c.transmittance() + c.reflectance_right() - 1.0)});
        }
  for (auto [name, w] : {std::pair{"exact", ex}, std::pair{"slice", sl}, std::pair{"cmt", cm},
                         std::pair{"xcmt", xc}}) {
    o.clause(w.det < 1e-9, std::string(name) + " |det-1| " + fmt(w.det));
    o.clause(w.pt < 1e-8, std::string(name) + " |M22-conj M11| " + fmt(w.pt));
  }
  o.clause(flux < 1e-8, "sigma=0 flux defect " + fmt(flux) + " < 1e-8");
  return o;
}

// 8. very long crystal
Outcome ac8() {
  Outcome o;
  const CrystalSpec spec{0.02, pi, 1.0, 1600000};
  const auto inst = analysis::Instance::from_spec(spec);
  const auto res = analysis::locate_resonance(inst, 0.9999, 1.0001, Method::exact);
  const double lo = res.p - 20.0 * res.half_width, hi = res.p + 20.0 * res.half_width;
  char where[80];
  std::snprintf(where, sizeof where, "resonance at p = %.12f, half width %.3g", res.p, res.half_width);
  o.detail << where;

  auto t0 = std::chrono::steady_clock::now();
  const auto ex = analysis::scan(inst, lo, hi, 500, Method::exact);
  const double t_ex = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto sl = analysis::scan(inst, lo, hi, 500, Method::slice, {slice::kOracleSlices});
  const double t_sl = seconds_since(t0);

  const double pe = max_over(ex, [](const auto& r) { return r.reflectance_left; });
  const double ps = max_over(sl, [](const auto& r) { return r.reflectance_left; });
  std::size_t ie = 0, is = 0;
  for (std::size_t i = 0; i < ex.rows.size(); ++i) {
    if (ex.rows[i].reflectance_left > ex.rows[ie].reflectance_left) ie = i;
    if (sl.rows[i].reflectance_left > sl.rows[is].reflectance_left) is = i;
  }
  const double shift = std::fabs(ex.rows[ie].p - sl.rows[is].p);
  o.clause(t_ex < 60.0, "exact 500-point scan " + fmt(t_ex) + " s < 60 s");
  o.clause(t_sl < 60.0, "slice 500-point scan " + fmt(t_sl) + " s < 60 s");
  o.clause(pe > 0.1, "exact peak R_left " + fmt(pe) + " > 0.1");
  o.clause(ps > 0.1, "slice peak R_left " + fmt(ps) + " > 0.1");
  o.clause(std::fabs(pe - ps) < 0.01 * pe, "peak heights agree to " + fmt(std::fabs(pe - ps) / pe) + " < 1%");
  o.clause(shift <= res.half_width, "peak positions differ by " + fmt(shift) + " <= half width");
  return o;
}

// 9. sigma_c ordering
Outcome ac9() {
  Outcome o;
  const auto sigmas = analysis::linspace(1.0, 3.0, 201);
  std::vector<double> found;
  std::string values;
  bool all = true;
  for (long long n : {10LL, 20LL, 40LL, 80LL}) {
    const double fringes = 0.4 * static_cast<double>(n) / 2.0;
    const auto ps = analysis::linspace(0.8, 1.2, std::max(241, static_cast<int>(10.0 * fringes) + 1));
    const auto r = analysis::find_sigma_c({0.1, pi, 1.0, n}, sigmas, ps);
    all = all && r.found;
    found.push_back(r.found ? r.sigma_c : std::nan(""));
    values += (values.empty() ? "" : ", ") + ("N=" + std::to_string(n) + ": ") +
              (r.found ? fmt(r.sigma_c) : "not found");
  }
  bool above = true, decreasing = true;
  for (std::size_t i = 0; i < found.size(); ++i) {
    above = above && found[i] > 1.0;
    if (i > 0) decreasing = decreasing && found[i] < found[i - 1];
  }
  o.clause(all, "sigma_c " + values);
  o.clause(above, "all > 1");
  o.clause(decreasing, "strictly decreasing in N");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cross-solver oracle agreement", ac1},
      {"N = 50 invisible regime", ac2},
      {"N = 2000 reflectionless but not invisible", ac3},
      {"threshold arithmetic", ac4},
      {"standard CMT invisibility identity", ac5},
      {"special functions", ac6},
      {"structural invariants", ac7},
      {"N = 1.6e6 resonance", ac8},
      {"sigma_c ordering", ac9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.clause(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "AC" << k + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << ": "
              << o.detail.str() << " [" << fmt(seconds_since(t0)) << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
