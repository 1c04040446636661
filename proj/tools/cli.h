// Copyright 2026 The ptesolve Authors.
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

#ifndef PTESOLVE_TOOLS_CLI_H_
#define PTESOLVE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ptesolve::cli {

// Exit codes; stable across versions.
inline constexpr int kOk = 0;
inline constexpr int kNoEquilibrium = 1;  // only with --strict
inline constexpr int kInvalid = 2;
inline constexpr int kIoOrSyntax = 3;
inline constexpr int kUsage = 4;

// Runs one command. `args` excludes the program name. Human output goes to
// `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace ptesolve::cli

#endif  // PTESOLVE_TOOLS_CLI_H_
