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

#include "povmsim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "povmsim/errors.hpp"
#include "povmsim/random.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

namespace {

constexpr int kTrialCap = 64;

std::vector<double> magnitudes_of(const Povm& m) {
    std::vector<double> alphas;
    alphas.reserve(m.effects.size());
    for (const auto& e : m.effects) alphas.push_back(e.trace().real());
    return alphas;
}

// ([n'] + fail) -> (M outcomes + fail) map extending the recover map.
StochasticMap extend_with_fail(const StochasticMap& recover) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(recover.rows() + 1, recover.cols() + 1);
    m.topLeftCorner(recover.rows(), recover.cols()) = recover.m;
    m(recover.rows(), recover.cols()) = 1.0;
    return StochasticMap{m};
}

// (S_beta outcomes + fail) -> ([n'] + fail) embedding for one block.
StochasticMap block_expansion(int n_refined, const std::vector<int>& subset) {
    std::vector<int> target(subset.begin(), subset.end());
    target.push_back(n_refined);
    return StochasticMap::relabel(n_refined + 1, target);
}

// Shared tail of the certification paths: builds the block ensemble for an
// already-refined rank-one POVM, decomposes every noisy block measurement at
// the common visibility, and composes the post-processings back to the input
// outcome set. `diag` arrives with the refinement fields filled in.
SpCertificate certify_core(const Povm& input, const Povm& refined,
                           const StochasticMap& recover, const Partition& s,
                           CertifyDiagnostics diag) {
    const int d = input.dim;
    SpCertificate cert;
    cert.input = input;

    const SimulationEnsemble ensemble = build_ensemble(refined, s);
    diag.partition = s;
    diag.q_found = ensemble.q;

    std::vector<NoisySimPlan> plans;
    plans.reserve(ensemble.subs.size());
    double t_np = 1.0;
    for (const auto& sub : ensemble.subs) t_np = std::min(t_np, critical_visibility(sub));
    for (const auto& sub : ensemble.subs) plans.push_back(build_plan(sub, t_np));
    diag.t_np_found = t_np;

    const double c = ensemble.q * t_np;
    cert.c_found = c;

    // Post-processing that folds the failure outcome back into the refined
    // outcomes with weights proportional to the effect traces.
    const std::vector<double> alphas = magnitudes_of(refined);
    const double alpha_total = std::accumulate(alphas.begin(), alphas.end(), 0.0);
    const int n_refined = refined.outcomes();
    Eigen::MatrixXd qprime = Eigen::MatrixXd::Zero(n_refined, n_refined + 1);
    qprime.topLeftCorner(n_refined, n_refined).setIdentity();
    for (int i = 0; i < n_refined; ++i) {
        qprime(i, n_refined) = alphas[static_cast<std::size_t>(i)] / alpha_total;
    }
    const StochasticMap fold{std::move(qprime)};
    const StochasticMap recover_fold = StochasticMap::compose(recover, fold);

    cert.witness.target_dim = d;
    for (std::size_t b = 0; b < ensemble.subs.size(); ++b) {
        const StochasticMap outer = StochasticMap::compose(
            recover_fold, block_expansion(n_refined, s.subsets[b]));
        for (const auto& comp : plans[b].full_witness.components) {
            SpWitness::Component scaled;
            scaled.weight = ensemble.weights[b] * comp.weight;
            scaled.projective = comp.projective;
            scaled.postproc = StochasticMap::compose(outer, comp.postproc);
            cert.witness.components.push_back(std::move(scaled));
        }
    }
    cert.witness.prune();

    const Povm target = depolarize(input, c);
    const WitnessReport report = verify_sp_witness(cert.witness, target, tol::witness);
    cert.verified = report.pass;
    cert.verifier_deviation = report.max_deviation;

    // Ensemble-route cross-check, independent of the witness assembly: the
    // folded noisy mixture must reproduce the depolarized input.
    {
        std::vector<Matrix> noisy(static_cast<std::size_t>(n_refined), Matrix::Zero(d, d));
        Matrix noisy_fail = Matrix::Zero(d, d);
        for (std::size_t b = 0; b < ensemble.subs.size(); ++b) {
            const auto& subset = s.subsets[b];
            const auto& sub = ensemble.subs[b];
            for (std::size_t kk = 0; kk < subset.size(); ++kk) {
                noisy[static_cast<std::size_t>(subset[kk])] =
                    ensemble.weights[b] * depolarize_operator(sub.effects[kk], t_np);
            }
            noisy_fail += ensemble.weights[b] * depolarize_operator(sub.effects.back(), t_np);
        }
        const Eigen::MatrixXd outer = recover_fold.m;
        double dev = 0.0;
        for (int i = 0; i < input.outcomes(); ++i) {
            Matrix acc = Matrix::Zero(d, d);
            for (int j = 0; j < n_refined; ++j) {
                const double wj = outer(i, j);
                if (wj != 0.0) acc += wj * noisy[static_cast<std::size_t>(j)];
            }
            acc += outer(i, n_refined) * noisy_fail;
            dev = std::max(dev, (acc - target.effects[i]).norm());
        }
        diag.composition_deviation = dev;
    }

    // Block magnitudes A_i = alpha_i / lambda_beta stay above the flat floor.
    {
        double min_mag = 1.0;
        for (std::size_t b = 0; b < ensemble.subs.size(); ++b) {
            for (std::size_t kk = 0; kk < s.subsets[b].size(); ++kk) {
                min_mag = std::min(min_mag, ensemble.subs[b].effects[kk].trace().real());
            }
        }
        diag.min_magnitude = min_mag;
        const double alpha_min = *std::min_element(alphas.begin(), alphas.end());
        const double lambda_max =
            *std::max_element(ensemble.lambdas.begin(), ensemble.lambdas.end());
        if (min_mag < alpha_min / lambda_max - 1e-12) {
            throw ValidationError("ensemble magnitude fell below the flat floor");
        }
    }

    // Conditional constant-noise guarantee: block norms within the C=5 bound,
    // blocks of at most floor(d/2), and the subpartition success probability.
    {
        const double eps_hat = *std::max_element(alphas.begin(), alphas.end());
        const double lambda_cap = (eps_hat / 5.0) * std::pow(1.0 + std::sqrt(5.0), 2.0);
        diag.groups_ok = s.max_block() <= d / 2;
        diag.ks_c5_lambda_ok = *std::max_element(ensemble.lambdas.begin(),
                                                 ensemble.lambdas.end()) <= lambda_cap + 1e-12;
        diag.q_c5_ok = ensemble.q >= 0.068 / diag.flatness - 1e-12;
        diag.ks_c5_guarantee = diag.groups_ok && diag.ks_c5_lambda_ok && diag.q_c5_ok;
    }

    cert.diagnostics = std::move(diag);
    return cert;
}

}  // namespace

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::kExhaustive: return "exhaustive";
        case SearchMode::kGreedy: return "greedy";
        case SearchMode::kRandom: return "random";
    }
    return "?";
}

SpCertificate certify_sp(const Povm& m, double delta, double eps, SearchMode mode,
                         std::uint64_t seed) {
    require_valid(m);
    if (m.dim < 2) throw InfeasibleError("certification needs dimension >= 2");
    const int max_size = m.dim / 2;

    const Refinement ref = flat_refine(m, delta, eps);
    const int n_refined = ref.refined.outcomes();

    CertifyDiagnostics diag;
    diag.delta = delta;
    diag.eps = eps;
    diag.flatness = ref.flatness;

    Partition s;
    if (mode == SearchMode::kRandom) {
        const int r = (n_refined + max_size - 1) / max_size;
        s = split_blocks(random_partition(n_refined, r, CounterRng::derive(seed, 1)), max_size);
        diag.search_mode = "random";
    } else {
        const int r = std::min(n_refined, (n_refined + max_size - 1) / max_size + 1);
        try {
            s = optimize_partition(ref.refined, r, max_size, 200LL * n_refined, seed);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError(std::string(e.what()) + "; use the random search mode");
        }
        diag.search_mode = n_refined <= 12 ? "exhaustive" : "greedy";
    }
    return certify_core(m, ref.refined, ref.recover, s, std::move(diag));
}

SpCertificate certify_sp(const Povm& m, std::uint64_t seed) {
    return certify_sp(m, 0.05, std::min(0.1, 1.0 / m.dim), SearchMode::kExhaustive, seed);
}

AncillaSimulation simulate_with_ancilla(const Povm& m, int k, double delta, double eps,
                                        SearchMode mode, std::uint64_t seed) {
    require_valid(m);
    if (k < 2) throw ValidationError("ancilla simulation needs k >= 2");
    const int d = m.dim;

    const Refinement ref = flat_refine(m, delta, eps);
    const int n_refined = ref.refined.outcomes();
    const std::vector<double> alphas = magnitudes_of(ref.refined);
    const double eps_hat = *std::max_element(alphas.begin(), alphas.end());
    const double ratio = ref.flatness;

    Partition s;
    if (n_refined <= d * k) {
        // Everything fits in one plain dilation; success probability 1.
        s = Partition::trivial(n_refined);
    } else {
        int cap;
        double c_target;
        if (k == 2 || static_cast<double>(k - 1) / ratio <= 1.0) {
            cap = std::max(1, d - 1);  // kappa = 1 - 1/d
            c_target = 1.0;
        } else {
            cap = (k - 1) * d;
            c_target = ancilla_tradeoff(k, ratio).c_required;
        }
        int r = std::max<int>(1, static_cast<int>(std::ceil(c_target / eps_hat)));
        r = std::max(r, (n_refined + cap - 1) / cap);
        r = std::min(r, n_refined);
        if (mode == SearchMode::kRandom) {
            s = split_blocks(random_partition(n_refined, r, CounterRng::derive(seed, 2)), cap);
        } else {
            s = optimize_partition(ref.refined, r, cap, 200LL * n_refined, seed);
        }
    }

    const SimulationEnsemble ensemble = build_ensemble(ref.refined, s);
    const StochasticMap recover_ext = extend_with_fail(ref.recover);

    AncillaSimulation sim;
    sim.k = k;
    sim.q = ensemble.q;
    sim.weights = ensemble.weights;
    for (std::size_t b = 0; b < ensemble.subs.size(); ++b) {
        NaimarkDilation dil = dilate_with_ancilla(ensemble.subs[b], k);
        const StochasticMap to_refined = block_expansion(n_refined, s.subsets[b]);
        sim.postprocs.push_back(StochasticMap::compose(
            StochasticMap::compose(recover_ext, to_refined), dil.coarse));
        sim.dilations.push_back(std::move(dil));
    }
    return sim;
}

double verify_ancilla_simulation(const AncillaSimulation& sim, const Povm& m, int num_states,
                                 std::uint64_t seed) {
    const int n = m.outcomes();
    double worst = 0.0;
    for (int sidx = 0; sidx < num_states; ++sidx) {
        CounterRng rng(seed, static_cast<std::uint64_t>(sidx) + 0x51u);
        const Matrix rho = random_density(m.dim, rng);
        Eigen::VectorXd recombined = Eigen::VectorXd::Zero(n + 1);
        for (std::size_t b = 0; b < sim.dilations.size(); ++b) {
            const Eigen::VectorXd ambient =
                born(sim.dilations[b].projective, sim.dilations[b].embed_state(rho));
            recombined += sim.weights[b] * (sim.postprocs[b].m * ambient);
        }
        Eigen::VectorXd target(n + 1);
        target.head(n) = sim.q * born(m, rho);
        target(n) = 1.0 - sim.q;
        worst = std::max(worst, (recombined - target).cwiseAbs().maxCoeff());
    }
    return worst;
}

TradeoffBounds ancilla_tradeoff(int k, double eps_ratio) {
    if (k < 2) throw ValidationError("ancilla_tradeoff needs k >= 2");
    if (eps_ratio < 1.0) throw ValidationError("eps_ratio must be >= 1");
    TradeoffBounds out;
    if (k == 2) {
        // Group-size route: C = 1, kappa = 1 chunks already fit next to a
        // single qubit, giving [4 (1 + eps_ratio)]^{-1}.
        out.c_required = 1.0;
        out.q_lower = improved_bound(1.0, 1.0, eps_ratio);
        return out;
    }
    const double s_sq = static_cast<double>(k - 1) / eps_ratio;
    if (s_sq <= 1.0) {
        throw InfeasibleError("ancilla too small for the magnitude spread");
    }
    const double s = std::sqrt(s_sq);
    const double sqrt_c = 1.0 / (s - 1.0);
    out.c_required = sqrt_c * sqrt_c;
    out.q_lower = std::pow(1.0 - 1.0 / s, 2.0);
    return out;
}

RandomizedCertifyResult randomized_certify(const Povm& m, double c_param, std::uint64_t seed) {
    require_valid(m);
    if (m.dim < 2) throw InfeasibleError("certification needs dimension >= 2");
    if (c_param <= 0.0) throw ValidationError("C must be positive");
    const int d = m.dim;
    const int n = m.outcomes();
    if (n > 2 * d * d) throw ValidationError("randomized path expects n <= 2 d^2; refine first");
    const std::vector<double> alphas = magnitudes_of(m);
    double alpha_max = 0.0, alpha_min = 1.0;
    for (int i = 0; i < n; ++i) {
        if (rank_hermitian(m.effects[i]) > 1) {
            throw ValidationError("randomized path expects rank-one effects; refine first");
        }
        alpha_max = std::max(alpha_max, alphas[static_cast<std::size_t>(i)]);
        alpha_min = std::min(alpha_min, alphas[static_cast<std::size_t>(i)]);
    }
    if (alpha_max > 1.0 / d + 1e-12) {
        throw ValidationError("randomized path expects magnitudes <= 1/d; refine first");
    }

    RandomizedCertifyResult result;
    const int r = static_cast<int>(std::ceil(c_param * d));
    result.q_threshold = 1.0 / (3.44 + 2.0 * c_param * std::log(static_cast<double>(d)));
    result.delta = std::cbrt((3.0 * c_param / (2.0 * d)) *
                             (1.0 + std::log(4.0 * c_param * d)));
    result.size_threshold = (2.0 / c_param) * (1.0 + result.delta) * d;

    for (int trial = 0; trial < kTrialCap; ++trial) {
        const Partition s = random_partition(n, r, CounterRng::derive(seed, 1000 + trial));
        RandomizedTrial stat;
        stat.q = success_prob(m, s);
        stat.max_block = s.max_block();
        stat.accepted = stat.q >= result.q_threshold &&
                        stat.max_block <= result.size_threshold;
        result.trials.push_back(stat);
        if (stat.accepted) {
            CertifyDiagnostics diag;
            diag.delta = alpha_max / alpha_min - 1.0;
            diag.eps = alpha_max;
            diag.flatness = alpha_max / alpha_min;
            diag.search_mode = "random";
            result.certificate = certify_core(m, m, StochasticMap::identity(n),
                                              split_blocks(s, d / 2), std::move(diag));
            result.success = true;
            return result;
        }
    }
    return result;
}

}  // namespace povmsim
