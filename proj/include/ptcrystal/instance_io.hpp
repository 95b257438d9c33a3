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

// JSON instance formats:
//   {"v0": 0.02, "lambda": 3.14159..., "sigma": 1, "cells": 50}
//   {"period": 3.14159..., "coefficients": [[n, re, im], ...], "cells": 50}
// A document may also wrap the sinusoidal form under a "spec" key, which is
// how scan output embeds its instance.

#include <string>
#include <string_view>

#include "json.hpp"
#include "ptcrystal/analysis.hpp"
#include "ptcrystal/crystal.hpp"

namespace ptcrystal::io {

/// Decimal number or the literal "pi". Throws std::invalid_argument otherwise.
double parse_length(std::string_view text);

struct MomentumRange {
  double p_min = 0.0;
  double p_max = 0.0;
  int points = 0;
};

/// "min:max:points" with both endpoints included.
MomentumRange parse_range(std::string_view text);

nlohmann::json to_json(const CrystalSpec& spec);
nlohmann::json to_json(const FourierPotential& pot);
nlohmann::json to_json(const analysis::Instance& inst);

CrystalSpec spec_from_json(const nlohmann::json& j);
FourierPotential potential_from_json(const nlohmann::json& j);

/// Either instance form; a potential document without "cells" takes
/// `default_cells`. Throws std::invalid_argument on malformed input.
analysis::Instance instance_from_json(const nlohmann::json& j, long long default_cells = 0);

analysis::Instance read_instance(const std::string& path, long long default_cells = 0);

/// Shortest text that reads back to the same double (17 significant digits, '.').
std::string format_number(double x);

}  // namespace ptcrystal::io
