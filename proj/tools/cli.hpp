// Copyright 2026 The povmsim authors
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

#ifndef POVMSIM_CLI_HPP
#define POVMSIM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace povmsim::cli {

// Exit codes:
//   0 success
//   1 validation failure
//   2 certification / verification failure
//   3 I/O or format error
//   4 infeasible parameters
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kVerificationFailure = 2;
inline constexpr int kIoError = 3;
inline constexpr int kInfeasible = 4;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace povmsim::cli

#endif  // POVMSIM_CLI_HPP
