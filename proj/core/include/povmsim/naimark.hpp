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

#ifndef POVMSIM_NAIMARK_HPP
#define POVMSIM_NAIMARK_HPP

#include <cstdint>

#include "povmsim/povm.hpp"

namespace povmsim {

enum class DilationLayout { kBlock, kTensor };

/// Exact realization of a POVM as a projective measurement on a larger
/// space. States embed into the first base_dim coordinates; for the tensor
/// layout the ambient index (j, a) maps to j + base_dim * a, so the embedded
/// subspace {|psi>|0>} coincides with the block embedding.
struct NaimarkDilation {
    int base_dim = 0;
    int ambient_dim = 0;
    DilationLayout layout = DilationLayout::kBlock;
    int ancilla_dim = 1;  // meaningful for the tensor layout
    Povm projective;      // complete projective measurement on C^ambient
    StochasticMap coarse;  // ambient outcomes -> target outcomes

    Matrix embed_state(const Matrix& rho) const;
};

/// Largest deviation of coarse(born(projective, embed(rho))) from
/// born(target, rho) over seeded random states.
double verify_dilation(const NaimarkDilation& dil, const Povm& target,
                       int num_states, std::uint64_t seed);

/// Standard dilation of a rank-one POVM: the rows sqrt(alpha_i) psi_i^dag
/// form an isometry whose unitary completion supplies the orthonormal
/// measurement vectors. Ambient dimensions beyond n are covered by one extra
/// projector that coarse merges into the last outcome.
NaimarkDilation dilate_rank_one(const Povm& m, int ambient);

/// Dilation on C^{d k} with the state embedded as rho tensor |0><0|: the
/// POVM is spectrally split into rank-one pieces, dilated, and the pieces
/// merged back by coarse. Requires the total spectral rank to fit in d*k.
NaimarkDilation dilate_with_ancilla(const Povm& n, int k);

/// Structure of a nearly projective POVM: l rank-one effects A_i |psi_i><psi_i|
/// followed by one remainder effect.
struct NearlyProjectiveForm {
    int l = 0;
    std::vector<double> magnitudes;  // A_i
    std::vector<Vector> states;      // unit vectors psi_i
    Matrix w_basis;                  // orthonormal basis of W = span{psi_i}
    int w_dim = 0;
    int wperp_dim = 0;
};

/// Parses and checks the nearly projective form (throws ValidationError if
/// the first l effects are not rank-one or l > d/2).
NearlyProjectiveForm parse_nearly_projective(const Povm& n);

/// Output of the dimension-deficient construction: the POVM F with effects
/// A_i |psi_i><psi_i| + (1-A_i)/|Wperp| P_Wperp, the inner projective
/// measurement whose W-compression reproduces the A_i |psi_i><psi_i|, and an
/// exact finite witness of 2 |Wperp|^2 equally weighted components (phases
/// {0, pi} times the Heisenberg-Weyl family on Wperp).
struct DeficientNaimarkResult {
    Povm f;
    Povm pw;
    SpWitness witness;
    int w_dim = 0;
    int wperp_dim = 0;
    std::vector<double> magnitudes;  // A_i
};

DeficientNaimarkResult deficient_naimark(const Povm& n);

/// Closed form of the twirl over unitaries acting as a phase on W and
/// arbitrarily on Wperp: P_W B P_W + tr(B P_Wperp)/|Wperp| P_Wperp.
/// Serves as the oracle for the finite-design average.
Matrix twirl_average(const Matrix& b, const std::vector<Vector>& w_basis);

}  // namespace povmsim

#endif  // POVMSIM_NAIMARK_HPP
