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

#ifndef POVMSIM_ERRORS_HPP
#define POVMSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace povmsim {

/// Input violates a mathematical precondition (non-Hermitian matrix,
/// invalid POVM, malformed witness, ...).
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested parameters admit no solution (partition size constraints,
/// dilation space too small, unsolvable trade-off, ...).
class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace povmsim

#endif  // POVMSIM_ERRORS_HPP
