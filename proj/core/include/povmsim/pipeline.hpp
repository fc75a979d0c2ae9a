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

#ifndef POVMSIM_PIPELINE_HPP
#define POVMSIM_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "povmsim/finegrain.hpp"
#include "povmsim/naimark.hpp"
#include "povmsim/noisysim.hpp"
#include "povmsim/partition.hpp"
#include "povmsim/povm.hpp"

namespace povmsim {

enum class SearchMode { kExhaustive, kGreedy, kRandom };

std::string to_string(SearchMode mode);

struct CertifyDiagnostics {
    double delta = 0.0;
    double eps = 0.0;
    double flatness = 1.0;       // achieved max/min magnitude of the refinement
    Partition partition;         // on the refined outcome set
    double q_found = 0.0;
    double t_np_found = 0.0;
    std::string search_mode;     // mode actually used
    bool groups_ok = false;      // every block <= floor(d/2)
    bool ks_c5_lambda_ok = false;  // every block norm <= (eps/5)(1+sqrt(5))^2
    bool q_c5_ok = false;          // q >= 0.068 / flatness
    bool ks_c5_guarantee = false;  // all of the above; implies the c bound
    double composition_deviation = 0.0;  // post-processed noisy ensemble vs target
    double min_magnitude = 0.0;          // min A_i across the ensemble
};

/// Certificate that Phi_c(M) is a randomization of post-processed projective
/// measurements, with c = q_found * t_np_found.
struct SpCertificate {
    Povm input;
    double c_found = 0.0;
    SpWitness witness;
    CertifyDiagnostics diagnostics;
    bool verified = false;
    double verifier_deviation = 0.0;
};

/// Builds a projective-simulability certificate for Phi_c(M): fine-grain to
/// nearly flat rank-one form, partition with blocks of at most floor(d/2),
/// decompose each noisy block measurement, and compose the post-processings
/// back to the input outcome set. The emitted witness is verified by the
/// independent recombination path before the certificate is returned.
SpCertificate certify_sp(const Povm& m, double delta, double eps, SearchMode mode,
                         std::uint64_t seed);

/// Defaults: delta = 0.05, eps = min(0.1, 1/d), exhaustive search when the
/// refined outcome count allows it.
SpCertificate certify_sp(const Povm& m, std::uint64_t seed = 0);

/// Postselected simulation of M by projective measurements on C^{d k}.
struct AncillaSimulation {
    int k = 0;
    double q = 0.0;
    std::vector<double> weights;
    std::vector<NaimarkDilation> dilations;
    std::vector<StochasticMap> postprocs;  // ambient outcomes -> [n] + fail
};

AncillaSimulation simulate_with_ancilla(const Povm& m, int k, double delta, double eps,
                                        SearchMode mode, std::uint64_t seed);

/// Largest deviation of the recombined statistics
/// sum_beta p_beta postproc_beta(born(projective_beta, rho x |0><0|)) from
/// (q born(M, rho), 1-q) over seeded random states.
double verify_ancilla_simulation(const AncillaSimulation& sim, const Povm& m,
                                 int num_states, std::uint64_t seed);

struct TradeoffBounds {
    double c_required = 0.0;
    double q_lower = 0.0;
};

/// Success probability attainable with a k-dimensional ancilla at a given
/// magnitude spread: q >= (1 - sqrt(eps_ratio/(k-1)))^2 for k >= 3, and the
/// kappa = 1 subpartition value for k = 2 (1/8 in the flat limit).
TradeoffBounds ancilla_tradeoff(int k, double eps_ratio);

struct RandomizedTrial {
    double q = 0.0;
    int max_block = 0;
    bool accepted = false;
};

struct RandomizedCertifyResult {
    bool success = false;
    SpCertificate certificate;
    std::vector<RandomizedTrial> trials;
    double q_threshold = 0.0;
    double size_threshold = 0.0;
    double delta = 0.0;  // concentration slack of the size bound
};

/// Randomized certification path for flat rank-one POVMs (n <= 2d^2,
/// magnitudes <= 1/d): draws random partitions with r = ceil(C d) blocks
/// until one meets both q >= 1/(3.44 + 2 C log d) and
/// max |S_beta| <= (2/C)(1+delta) d, then certifies from that partition.
/// Gives up after 64 trials.
RandomizedCertifyResult randomized_certify(const Povm& m, double c_param,
                                           std::uint64_t seed);

}  // namespace povmsim

#endif  // POVMSIM_PIPELINE_HPP
