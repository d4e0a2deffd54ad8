// Copyright 2026 The Surrogate Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SURROGATE_TOOLS_CLI_H_
#define SURROGATE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace surrogate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitFormulation = 4;
inline constexpr int kExitSolver = 5;

// Runs one command. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Shortest text that reads back to the same double; integral values keep a
// trailing ".0".
std::string FormatValue(double value);

}  // namespace surrogate::cli

#endif  // SURROGATE_TOOLS_CLI_H_
