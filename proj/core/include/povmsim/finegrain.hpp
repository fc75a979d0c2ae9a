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

#ifndef POVMSIM_FINEGRAIN_HPP
#define POVMSIM_FINEGRAIN_HPP

#include <vector>

#include "povmsim/povm.hpp"

namespace povmsim {

/// A rank-one refinement of a POVM together with the coarse-graining map
/// that recovers the input exactly.
struct Refinement {
    Povm refined;          // rank-one effects alpha_j |psi_j><psi_j|
    StochasticMap recover;  // input = recover(refined)
    std::vector<double> alphas;
    double flatness = 1.0;  // achieved max alpha / min alpha
};

/// Splits each x_i into ceil(x_i / u) equal parts, u = min(eps, delta * min x).
/// Every part is <= eps, the global max/min part ratio is <= 1 + delta, and
/// the parts of each entry sum back to x_i.
std::vector<std::vector<double>> subdivide_weights(const std::vector<double>& x,
                                                   double delta, double eps);

/// Rank-one fine-graining with nearly flat magnitudes: spectral pieces below
/// tol::effect_floor are dropped, the remaining eigenvalues are subdivided by
/// subdivide_weights, and the recover map merges the pieces back.
Refinement flat_refine(const Povm& m, double delta, double eps);

/// Normal form for rank-one POVMs with n <= d^2 outcomes: each magnitude is
/// split into ceil(d * alpha) equal parts, giving n' <= 2 d^2 outcomes all of
/// magnitude <= 1/d.
Refinement extremal_refine(const Povm& m);

}  // namespace povmsim

#endif  // POVMSIM_FINEGRAIN_HPP
