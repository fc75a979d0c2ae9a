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

#ifndef POVMSIM_SAMPLER_HPP
#define POVMSIM_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "povmsim/partition.hpp"
#include "povmsim/povm.hpp"

namespace povmsim {

struct SampleReport {
    std::vector<std::int64_t> counts;  // per outcome; postselected runs append fail
    std::int64_t shots = 0;
    std::int64_t accepted = 0;
    double acceptance_rate = 1.0;
    Eigen::VectorXd empirical;  // conditional on acceptance
    Eigen::VectorXd exact;      // target distribution
    double tv_distance = 0.0;
};

/// I.i.d. Born-rule draws by inverse CDF on the counter-based generator;
/// shot s consumes the (seed, s) sub-stream, so runs shard reproducibly.
SampleReport sample(const Povm& m, const Matrix& rho, std::int64_t shots,
                    std::uint64_t seed);

/// Per shot: draw a block from p_beta, then an outcome of that sub-POVM.
/// Non-fail outcomes are accepted; the conditional distribution estimates
/// born(M, rho) and the acceptance rate estimates q.
SampleReport sample_with_postselection(const SimulationEnsemble& e, const Matrix& rho,
                                       std::int64_t shots, std::uint64_t seed);

struct StateEnsemble {
    std::vector<double> priors;
    std::vector<Matrix> states;
};

struct DiscriminationReport {
    double p_succ_m = 0.0;
    double p_succ_noisy = 0.0;
    double c = 0.0;
    bool inequality_ok = false;  // c * p_succ_m <= p_succ_noisy
};

/// Minimum-error discrimination success of the ensemble under M and under
/// its depolarized version, with the linearity inequality flag.
DiscriminationReport disc_success(const StateEnsemble& e, const Povm& m, double c);

struct ShadowReport {
    double max_unbiased_deviation = 0.0;  // operator residual for e/c on the noisy POVM
    double max_variance_deviation = 0.0;  // identity residual relative to its scale
    bool unbiased_ok = false;
    bool variance_ok = false;
    bool max_bound_ok = false;  // sup variance inflation bounded by 1/c^2
};

/// Checks that rescaling an unbiased estimator by 1/c keeps it unbiased for
/// the depolarized POVM, and that the variance obeys
/// (1/c^2)(c Var(rho) + (1-c) Var(I/d)) on seeded random states.
ShadowReport shadow_check(const Povm& m, const std::vector<Matrix>& observables,
                          const std::vector<Eigen::VectorXd>& estimators, double c,
                          int num_states = 50, std::uint64_t seed = 0);

/// Minimum-norm solution of sum_i e(i) M_i = O. Throws ValidationError when
/// the observable is not estimable from the POVM.
Eigen::VectorXd least_squares_estimator(const Povm& m, const Matrix& observable);

}  // namespace povmsim

#endif  // POVMSIM_SAMPLER_HPP
