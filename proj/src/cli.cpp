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

#include "ptcrystal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ptcrystal/analysis.hpp"
#include "ptcrystal/error.hpp"
#include "ptcrystal/instance_io.hpp"

namespace ptcrystal::cli {

using analysis::Instance;
using analysis::Method;
using io::format_number;

namespace {

// Input problems detected after CLI11 parsing; reported like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceFlags {
  std::string spec_file;
  std::string potential_file;
  double v0 = 0.0;
  std::string lambda = "pi";
  double sigma = 1.0;
  long long cells = 0;
  CLI::Option* v0_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* cells_opt = nullptr;

  void attach(CLI::App* cmd, bool with_files) {
    if (with_files) {
      cmd->add_option("--spec", spec_file, "Sinusoidal crystal instance (JSON)");
      cmd->add_option("--potential", potential_file, "Fourier potential instance (JSON)");
    }
    v0_opt = cmd->add_option("--v0", v0, "Potential amplitude");
    lambda_opt = cmd->add_option("--lambda", lambda, "Lattice period (number or 'pi')");
    sigma_opt = cmd->add_option("--sigma", sigma, "Non-Hermiticity strength");
    cells_opt = cmd->add_option("--cells", cells, "Number of unit cells");
  }

  CrystalSpec spec_from_flags(std::optional<CrystalSpec> base) const {
    CrystalSpec spec = base.value_or(CrystalSpec{});
    if (!base && !*v0_opt) throw UsageError("--v0 is required");
    if (!base && !*cells_opt) throw UsageError("--cells is required");
    if (*v0_opt) spec.v0 = v0;
    if (*lambda_opt || !base) spec.lambda = io::parse_length(lambda);
    if (*sigma_opt || !base) spec.sigma = sigma;
    if (*cells_opt) spec.cells = cells;
    spec.validate();
    return spec;
  }

  Instance instance() const {
    try {
      if (!potential_file.empty()) return io::read_instance(potential_file, *cells_opt ? cells : 0);
      if (!spec_file.empty()) {
        const Instance inst = io::read_instance(spec_file);
        if (!inst.sinusoid) return inst;
        return Instance::from_spec(spec_from_flags(inst.sinusoid));
      }
      return Instance::from_spec(spec_from_flags(std::nullopt));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  }
};

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> ms;
  std::stringstream ss(list);
  std::string item;
  try {
    while (std::getline(ss, item, ','))
      if (!item.empty()) ms.push_back(analysis::parse_method(item));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (ms.empty()) throw UsageError("--method needs at least one method");
  return ms;
}

io::MomentumRange parse_range_flag(const std::string& text) {
  try {
    return io::parse_range(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void write_csv(std::ostream& os, const std::vector<analysis::SpectralScan>& scans) {
  bool any_error = false;
  for (const auto& s : scans)
    for (const auto& r : s.rows) any_error |= !r.ok();
  os << kCsvHeader << (any_error ? ",error" : "") << '\n';
  const std::size_t n = scans.front().rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : scans) {
      const auto& r = s.rows[i];
      os << format_number(r.p) << ',' << analysis::to_string(s.method) << ','
         << format_number(r.transmittance) << ',' << format_number(r.reflectance_left) << ','
         << format_number(r.reflectance_right) << ',' << format_number(r.tau_t) << ','
         << format_number(r.t.real()) << ',' << format_number(r.t.imag());
      if (any_error) os << ',' << sanitize(r.error);
      os << '\n';
    }
  }
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

void write_json(std::ostream& os, const Instance& inst, const io::MomentumRange& range,
                const std::vector<analysis::SpectralScan>& scans, int slices) {
  nlohmann::json doc = io::to_json(inst);
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& s : scans) {
    nlohmann::json m{{"name", analysis::to_string(s.method)}, {"warnings", s.warnings}};
    if (s.method == Method::slice) m["slices"] = slices;
    methods.push_back(m);
  }
  doc["methods"] = methods;
  doc["p_range"] = {{"min", range.p_min}, {"max", range.p_max}, {"points", range.points}};
  nlohmann::json rows = nlohmann::json::array();
  const std::size_t n = scans.front().rows.size();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& s : scans) {
      const auto& r = s.rows[i];
      nlohmann::json row{{"p", r.p},
                         {"method", analysis::to_string(s.method)},
                         {"T", json_number(r.transmittance)},
                         {"R_left", json_number(r.reflectance_left)},
                         {"R_right", json_number(r.reflectance_right)},
                         {"tau_t", json_number(r.tau_t)},
                         {"re_t", json_number(r.t.real())},
                         {"im_t", json_number(r.t.imag())}};
      if (!r.ok()) row["error"] = r.error;
      rows.push_back(row);
    }
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

std::vector<analysis::SpectralScan> run_scans(const Instance& inst, const io::MomentumRange& range,
                                              const std::vector<Method>& methods, int slices,
                                              std::ostream& err) {
  for (auto m : methods) analysis::check_compatible(inst, m);
  std::vector<analysis::SpectralScan> scans;
  for (auto m : methods) {
    scans.push_back(analysis::scan(inst, range.p_min, range.p_max, range.points, m, {slices}));
    for (const auto& w : scans.back().warnings)
      err << "warning (" << analysis::to_string(m) << "): " << w << '\n';
  }
  return scans;
}

int cmd_scan(const InstanceFlags& flags, const std::string& p_text, const std::string& method_text,
             int slices, const std::string& out_path, std::string format, std::ostream& out,
             std::ostream& err) {
  const Instance inst = flags.instance();
  const auto range = parse_range_flag(p_text);
  const auto methods = parse_methods(method_text);
  if (format.empty())
    format = out_path.size() > 5 && out_path.ends_with(".json") ? "json" : "csv";
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");

  const auto scans = run_scans(inst, range, methods, slices, err);
  std::ofstream file;
  std::ostream* os = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return kSolverError;
    }
    os = &file;
  }
  if (format == "csv")
    write_csv(*os, scans);
  else
    write_json(*os, inst, range, scans, slices);
  return kOk;
}

int cmd_compare(const InstanceFlags& flags, const std::string& p_text,
                const std::string& method_text, int slices, double tol, std::ostream& out,
                std::ostream& err) {
  const Instance inst = flags.instance();
  const auto range = parse_range_flag(p_text);
  const auto methods = parse_methods(method_text);
  if (methods.size() < 2) throw UsageError("compare needs at least two methods, e.g. exact,slice");

  const auto scans = run_scans(inst, range, methods, slices, err);
  double worst = 0.0;
  for (std::size_t a = 0; a < scans.size(); ++a)
    for (std::size_t b = a + 1; b < scans.size(); ++b) {
      double pair_max = 0.0;
      double at = scans[a].rows.front().p;
      for (std::size_t i = 0; i < scans[a].rows.size(); ++i) {
        const auto& ra = scans[a].rows[i];
        const auto& rb = scans[b].rows[i];
        const double d = ra.ok() && rb.ok() ? analysis::coefficient_discrepancy(ra, rb)
                                            : std::numeric_limits<double>::infinity();
        if (!(d <= pair_max)) {
          pair_max = d;
          at = ra.p;
        }
      }
      out << analysis::to_string(scans[a].method) << " vs " << analysis::to_string(scans[b].method)
          << ": max relative discrepancy " << format_number(pair_max) << " at p = "
          << format_number(at) << '\n';
      worst = std::max(worst, pair_max);
    }
  const bool pass = worst <= tol;
  out << (pass ? "PASS" : "FAIL") << ": max discrepancy " << format_number(worst)
      << (pass ? " <= " : " > ") << "tol " << format_number(tol) << '\n';
  return pass ? kOk : kToleranceExceeded;
}

int cmd_regimes(const InstanceFlags& flags, const std::string& p_text, const std::string& method_text,
                int slices, std::ostream& out, std::ostream& err) {
  CrystalSpec spec;
  const bool has_cells = static_cast<bool>(*flags.cells_opt);
  if (!*flags.v0_opt) throw UsageError("--v0 is required");
  try {
    spec.v0 = flags.v0;
    spec.lambda = io::parse_length(flags.lambda);
    spec.sigma = flags.sigma;
    spec.cells = has_cells ? flags.cells : 1;
    spec.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto rep = analysis::regime_thresholds(spec);
  out << "alpha = " << format_number(rep.alpha) << '\n';
  out << "L_c = " << format_number(rep.l_c) << '\n';
  out << "N_c = " << format_number(rep.n_c) << '\n';
  out << "N_c' = " << format_number(rep.n_c_prime) << '\n';
  if (rep.thresholds_infinite) {
    out << "classification: invisible (thresholds infinite)\n";
    return kOk;
  }
  if (!has_cells) return kOk;
  out << "classification (N = " << spec.cells << "): " << analysis::to_string(rep.classification)
      << (rep.near_boundary ? " (near a regime boundary)" : "") << '\n';
  if (!p_text.empty()) {
    const auto range = parse_range_flag(p_text);
    const Instance inst = Instance::from_spec(spec);
    const Method m = method_text.empty() ? analysis::valid_methods(inst).front()
                                         : parse_methods(method_text).front();
    const auto scans = run_scans(inst, range, {m}, slices, err);
    const auto ev = analysis::evidence_from_scan(scans.front());
    out << "scan (" << analysis::to_string(m) << "): max R_left = "
        << format_number(ev.max_reflectance_left)
        << ", max |T - 1| = " << format_number(ev.max_abs_t_minus_1)
        << ", classification: " << analysis::to_string(ev.classification) << '\n';
  }
  return kOk;
}

int cmd_sigma_c(const InstanceFlags& flags, const std::string& sigma_text, const std::string& p_text,
                int slices, double threshold, std::ostream& out) {
  if (!*flags.v0_opt || !*flags.cells_opt) throw UsageError("--v0 and --cells are required");
  CrystalSpec geometry;
  try {
    geometry.v0 = flags.v0;
    geometry.lambda = io::parse_length(flags.lambda);
    geometry.cells = flags.cells;
    geometry.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto srange = [&] {
    try {
      return io::parse_range(sigma_text);
    } catch (const std::invalid_argument&) {
      // sigma grids may start at zero, which parse_range rejects for momenta
    }
    const auto a = sigma_text.find(':');
    const auto b = sigma_text.rfind(':');
    if (a == std::string::npos || a == b) throw UsageError("--sigmas must look like min:max:points");
    io::MomentumRange r;
    try {
      r.p_min = std::stod(sigma_text.substr(0, a));
      r.p_max = std::stod(sigma_text.substr(a + 1, b - a - 1));
      r.points = std::stoi(sigma_text.substr(b + 1));
    } catch (const std::exception&) {
      throw UsageError("--sigmas must look like min:max:points");
    }
    if (r.p_min < 0.0 || r.p_max < r.p_min || r.points < 1) throw UsageError("bad --sigmas range");
    return r;
  }();
  const auto sigmas = analysis::linspace(srange.p_min, srange.p_max, srange.points);

  std::vector<double> ps;
  if (p_text.empty()) {
    const double bragg = std::numbers::pi / geometry.lambda;
    const double lo = 0.8 * bragg, hi = 1.2 * bragg;
    const double fringes = (hi - lo) * geometry.length() / (2.0 * std::numbers::pi);
    ps = analysis::linspace(lo, hi, std::max(201, static_cast<int>(10.0 * fringes) + 1));
  } else {
    const auto r = parse_range_flag(p_text);
    ps = analysis::linspace(r.p_min, r.p_max, r.points);
  }

  const auto res = analysis::find_sigma_c(geometry, sigmas, ps, {threshold, 1e-4, slices});
  if (res.found)
    out << "sigma_c = " << format_number(res.sigma_c) << " (min |M22| = "
        << format_number(res.min_abs_m22) << " at p = " << format_number(res.p_at_min) << ")\n";
  else
    out << "sigma_c not found on [" << format_number(sigmas.front()) << ", "
        << format_number(sigmas.back()) << "]; smallest min |M22| = "
        << format_number(res.min_abs_m22) << " at p = " << format_number(res.p_at_min) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering from finite PT-symmetric sinusoidal crystals", "ptcrystal"};
  app.require_subcommand(1);

  InstanceFlags scan_flags, compare_flags, regime_flags, sigma_flags;
  std::string scan_p, scan_methods = "exact", scan_out, scan_format;
  int scan_slices = slice::kInteractiveSlices;
  auto* scan = app.add_subcommand("scan", "Spectral scan written as CSV or JSON");
  scan_flags.attach(scan, true);
  scan->add_option("--p", scan_p, "Momentum range min:max:points")->required();
  scan->add_option("--method", scan_methods, "Comma-separated: exact, slice, cmt, xcmt");
  scan->add_option("--slices", scan_slices, "Slices per cell for the slice solver");
  scan->add_option("--out", scan_out, "Output file ('-' for stdout)");
  scan->add_option("--format", scan_format, "csv or json (default from --out extension)");

  std::string cmp_p, cmp_methods = "exact,slice";
  int cmp_slices = slice::kOracleSlices;
  double cmp_tol = 1e-6;
  auto* compare = app.add_subcommand("compare", "Max discrepancy between solvers over a scan");
  compare_flags.attach(compare, true);
  compare->add_option("--p", cmp_p, "Momentum range min:max:points")->required();
  compare->add_option("--method", cmp_methods, "Two or more methods, comma-separated");
  compare->add_option("--slices", cmp_slices, "Slices per cell for the slice solver");
  compare->add_option("--tol", cmp_tol, "Pass threshold on the max relative discrepancy");

  std::string reg_p, reg_method;
  int reg_slices = slice::kInteractiveSlices;
  auto* regimes = app.add_subcommand("regimes", "Invisibility thresholds and regime of a crystal");
  regime_flags.attach(regimes, false);
  regimes->add_option("--p", reg_p, "Optional scan range backing the classification");
  regimes->add_option("--method", reg_method, "Solver for the optional scan");
  regimes->add_option("--slices", reg_slices, "Slices per cell for the slice solver");

  std::string sc_sigmas = "1:3:101", sc_p;
  int sc_slices = slice::kInteractiveSlices;
  double sc_threshold = 1e-3;
  auto* sigma_c = app.add_subcommand("sigma-c", "Symmetry-breaking threshold sigma_c");
  sigma_flags.attach(sigma_c, false);
  sigma_c->add_option("--sigmas", sc_sigmas, "Sigma grid min:max:points");
  sigma_c->add_option("--p", sc_p, "Momentum grid min:max:points");
  sigma_c->add_option("--slices", sc_slices, "Slices per cell");
  sigma_c->add_option("--threshold", sc_threshold, "Divergence threshold on |M22|");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  }

  try {
    if (*scan)
      return cmd_scan(scan_flags, scan_p, scan_methods, scan_slices, scan_out, scan_format, out, err);
    if (*compare)
      return cmd_compare(compare_flags, cmp_p, cmp_methods, cmp_slices, cmp_tol, out, err);
    if (*regimes) return cmd_regimes(regime_flags, reg_p, reg_method, reg_slices, out, err);
    if (*sigma_c) return cmd_sigma_c(sigma_flags, sc_sigmas, sc_p, sc_slices, sc_threshold, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  }
  return kUsage;
}

}  // namespace ptcrystal::cli
