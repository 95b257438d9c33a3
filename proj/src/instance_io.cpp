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

#include "ptcrystal/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ptcrystal::io {

using nlohmann::json;

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

double length_from_json(const json& j) {
  if (j.is_string()) return parse_length(j.get<std::string>());
  return j.get<double>();
}

}  // namespace

double parse_length(std::string_view text) {
  if (text == "pi" || text == "PI" || text == "Pi") return std::numbers::pi;
  return parse_double(text, "length");
}

MomentumRange parse_range(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos)
    throw std::invalid_argument("momentum range must look like min:max:points");
  MomentumRange r;
  r.p_min = parse_double(text.substr(0, a), "range minimum");
  r.p_max = parse_double(text.substr(a + 1, b - a - 1), "range maximum");
  const auto pts = text.substr(b + 1);
  const auto [ptr, ec] = std::from_chars(pts.data(), pts.data() + pts.size(), r.points);
  if (ec != std::errc{} || ptr != pts.data() + pts.size())
    throw std::invalid_argument("cannot parse point count '" + std::string(pts) + "'");
  if (!(r.p_min > 0.0) || !(r.p_max > r.p_min) || r.points < 3)
    throw std::invalid_argument("momentum range needs 0 < min < max and at least 3 points");
  return r;
}

json to_json(const CrystalSpec& spec) {
  return {{"v0", spec.v0}, {"lambda", spec.lambda}, {"sigma", spec.sigma}, {"cells", spec.cells}};
}

json to_json(const FourierPotential& pot) {
  json coeffs = json::array();
  for (const auto& [n, phi] : pot.coefficients()) coeffs.push_back({n, phi.real(), phi.imag()});
  return {{"period", pot.period()}, {"coefficients", coeffs}};
}

json to_json(const analysis::Instance& inst) {
  if (inst.sinusoid) return {{"spec", to_json(*inst.sinusoid)}};
  json j = to_json(inst.potential);
  j["cells"] = inst.cells;
  return {{"potential", j}};
}

CrystalSpec spec_from_json(const json& j) {
  const json& s = j.contains("spec") ? j.at("spec") : j;
  try {
    CrystalSpec spec;
    spec.v0 = s.at("v0").get<double>();
    spec.lambda = s.contains("lambda") ? length_from_json(s.at("lambda")) : std::numbers::pi;
    spec.sigma = s.contains("sigma") ? s.at("sigma").get<double>() : 1.0;
    spec.cells = s.at("cells").get<long long>();
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed crystal instance: ") + e.what());
  }
}

FourierPotential potential_from_json(const json& j) {
  const json& s = j.contains("potential") ? j.at("potential") : j;
  try {
    FourierPotential pot(length_from_json(s.at("period")));
    for (const auto& c : s.at("coefficients")) {
      if (!c.is_array() || c.size() != 3)
        throw std::invalid_argument("potential coefficients must be [n, re, im] triples");
      pot.set(c[0].get<int>(), {c[1].get<double>(), c[2].get<double>()});
    }
    return pot;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed potential instance: ") + e.what());
  }
}

analysis::Instance instance_from_json(const json& j, long long default_cells) {
  const bool is_potential =
      j.contains("potential") || (j.contains("coefficients") && j.contains("period"));
  if (!is_potential) return analysis::Instance::from_spec(spec_from_json(j));
  const json& s = j.contains("potential") ? j.at("potential") : j;
  const long long cells = s.contains("cells") ? s.at("cells").get<long long>() : default_cells;
  if (cells < 1) throw std::invalid_argument("potential instance needs a positive cell count");
  return analysis::Instance::from_potential(potential_from_json(s), cells);
}

analysis::Instance read_instance(const std::string& path, long long default_cells) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("instance file '" + path + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(j, default_cells);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace ptcrystal::io
