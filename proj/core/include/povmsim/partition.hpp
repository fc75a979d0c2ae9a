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

#ifndef POVMSIM_PARTITION_HPP
#define POVMSIM_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "povmsim/povm.hpp"

namespace povmsim {

/// Partition of the outcome set {0,..,n-1} into disjoint nonempty subsets.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> subsets;

    int blocks() const { return static_cast<int>(subsets.size()); }
    int max_block() const;
    /// Throws ValidationError unless the subsets are disjoint, nonempty and
    /// cover {0,..,n-1}.
    void require_valid() const;

    static Partition trivial(int n);
    static Partition singletons(int n);
};

/// Sub-POVM ensemble realizing postselected simulation: mixing the N^(beta)
/// with weights p_beta yields (q M, (1-q) I). Sub-POVMs are stored compactly
/// on the outcomes S_beta followed by the failure outcome; full_sub pads
/// with zero effects back to the common outcome set [n] + fail.
struct SimulationEnsemble {
    int n = 0;
    int dim = 0;
    Partition partition;
    std::vector<double> lambdas;  // operator norms of block effect sums
    std::vector<double> weights;  // p_beta = lambda_beta / sum lambda
    double q = 0.0;               // success probability
    std::vector<Povm> subs;       // compact: |S_beta| outcomes + fail

    Povm full_sub(int beta) const;
};

struct EnsembleCheck {
    double max_effect_deviation = 0.0;  // vs q M_i over i in [n]
    double fail_deviation = 0.0;        // vs (1-q) I
};

/// Builds the ensemble for a partition: block beta carries effects
/// lambda_beta^{-1} M_i for i in S_beta plus the failure remainder, weight
/// p_beta proportional to lambda_beta. Rejects blocks whose effects are all
/// zero (lambda below the effect floor); compact the POVM first.
SimulationEnsemble build_ensemble(const Povm& m, const Partition& s);

/// Postselection identity check by independent recombination.
EnsembleCheck verify_ensemble(const SimulationEnsemble& e, const Povm& m);

/// q(M,S) = 1 / sum_beta ||sum_{i in S_beta} M_i||, without materializing
/// the sub-POVMs.
double success_prob(const Povm& m, const Partition& s);

struct KsSubsetRow {
    int beta = 0;
    double lhs = 0.0;  // block operator norm
    double rhs = 0.0;
    bool pass = false;
};

struct KsReport {
    bool pass = false;
    double rhs = 0.0;
    std::vector<KsSubsetRow> rows;
};

/// Checks the partition against the operator-norm bound
/// ||sum_{i in S_beta} M_i|| <= (1/r)(1 + sqrt(r eps))^2 with r = number of
/// blocks. Requires rank-one effects with norms <= eps.
KsReport ks_bound_check(const Povm& m, const Partition& s, double eps);

struct PredictedBounds {
    double q_lower = 0.0;
    double size_upper = 0.0;
};

/// Closed-form guarantees for a norm-bound partition with C = r eps:
/// q >= 1/(1+sqrt(C))^2 and |S_beta| <= d (eps/eps_tilde)(1+1/sqrt(C))^2.
PredictedBounds predicted_bounds(double eps, double eps_tilde, double c, int d);

/// Closed-form subpartition guarantee
/// 1 / ((1+sqrt(C))^2 ((eps_ratio)/(kappa C) + 1)).
double improved_bound(double c, double kappa, double eps_ratio);

/// Uniform independent assignment of each element to one of r blocks;
/// empty blocks are dropped. Deterministic per seed.
Partition random_partition(int n, int r, std::uint64_t seed);

/// Splits every block into contiguous chunks of at most `cap` elements.
Partition split_blocks(const Partition& s, int cap);

struct SubpartitionResult {
    Partition partition;
    double q = 0.0;      // achieved success probability
    double bound = 0.0;  // closed-form guarantee at the instance's C, kappa
    int size_cap = 0;    // floor(kappa * d)
};

/// Splits every block into contiguous chunks of at most floor(kappa d)
/// elements and reports the achieved q next to the closed-form bound
/// evaluated at C = r eps of the input partition.
SubpartitionResult improved_subpartition(const Povm& m, const Partition& s,
                                         double kappa, int d);

/// Best partition found under the size constraints: exhaustive enumeration
/// for n <= 12 (memoizing block norms by bitmask), otherwise seeded greedy
/// local search accepting single-element moves that strictly decrease
/// sum_beta lambda_beta. Deterministic per seed.
Partition optimize_partition(const Povm& m, int r, int max_size,
                             std::int64_t budget, std::uint64_t seed);

}  // namespace povmsim

#endif  // POVMSIM_PARTITION_HPP
