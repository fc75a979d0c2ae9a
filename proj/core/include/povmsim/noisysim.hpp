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

#ifndef POVMSIM_NOISYSIM_HPP
#define POVMSIM_NOISYSIM_HPP

#include "povmsim/naimark.hpp"
#include "povmsim/povm.hpp"

namespace povmsim {

/// Projective simulation of the depolarized nearly projective POVM
/// Phi_tau(N) as tau F + (1 - tau) C, where F comes from the
/// dimension-deficient construction and C is classical on (P_W, P_Wperp).
struct NoisySimPlan {
    double t_crit = 0.0;  // largest admissible tau for this construction
    double tau = 0.0;
    std::vector<double> a;  // C_i = a_i P_W + b_i P_Wperp for i in [l]
    std::vector<double> b;
    Povm classical;                // the POVM C
    SpWitness classical_witness;   // single post-processed (P_W, P_Wperp)
    SpWitness full_witness;        // witness for Phi_tau(N)
    int w_dim = 0;
    int wperp_dim = 0;
};

/// Critical visibility t_N = min_i |Wperp| A_i / (|W| (1 - A_i) + |Wperp|).
double critical_visibility(const Povm& n);

/// Builds the decomposition at visibility tau. The boundary tau = t_N is
/// accepted (coefficients within -1e-12 are clipped to zero); anything
/// beyond is rejected naming the violating outcome.
NoisySimPlan build_plan(const Povm& n, double tau);

}  // namespace povmsim

#endif  // POVMSIM_NOISYSIM_HPP
