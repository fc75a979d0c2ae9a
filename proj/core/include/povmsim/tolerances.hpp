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

#ifndef POVMSIM_TOLERANCES_HPP
#define POVMSIM_TOLERANCES_HPP

namespace povmsim::tol {

// Linear algebra. Double precision leaves ample headroom at dims <= 64.
inline constexpr double herm = 1e-10;   // Hermiticity deviation
inline constexpr double orth = 1e-10;   // orthonormality deviation
inline constexpr double recon = 1e-9;   // relative spectral reconstruction
inline constexpr double rank_cut = 1e-9;  // relative eigenvalue cutoff for rank

// Measurements. Witness tolerance is the loosest: compositions through
// several modules accumulate error.
inline constexpr double psd = 1e-9;         // minimum-eigenvalue slack
inline constexpr double norm_per_dim = 1e-8;  // completeness, scaled by d
inline constexpr double stoch = 1e-10;      // column sums of stochastic maps
inline constexpr double witness = 1e-8;     // convex-decomposition deviation
inline constexpr double proj = 1e-9;        // P_i P_j = delta_ij P_i deviation

// Effects or spectral pieces below this trace are treated as zero.
inline constexpr double effect_floor = 1e-12;

}  // namespace povmsim::tol

#endif  // POVMSIM_TOLERANCES_HPP
