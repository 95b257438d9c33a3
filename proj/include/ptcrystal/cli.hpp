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

#include <iosfwd>
#include <string>
#include <vector>

namespace ptcrystal::cli {

enum ExitCode : int {
  kOk = 0,
  kSolverError = 1,
  kUsage = 2,
  kToleranceExceeded = 3,
};

inline constexpr const char* kCsvHeader = "p,method,T,R_left,R_right,tau_t,re_t,im_t";

/// Runs the command line `args` (without the program name). Output files named
/// by --out are written directly; "-" or no --out writes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptcrystal::cli
