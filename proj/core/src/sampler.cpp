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

#include "povmsim/sampler.hpp"

#include <cmath>

#include "povmsim/errors.hpp"
#include "povmsim/random.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

namespace {

int draw_from_cdf(const Eigen::VectorXd& probs, double u) {
    double acc = 0.0;
    for (int i = 0; i < probs.size(); ++i) {
        acc += probs(i);
        if (u < acc) return i;
    }
    return static_cast<int>(probs.size()) - 1;
}

double tv_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return 0.5 * (a - b).cwiseAbs().sum();
}

double variance_of(const Eigen::VectorXd& estimator, const Povm& m, const Matrix& rho) {
    double var = 0.0;
    for (int i = 0; i < m.outcomes(); ++i) {
        var += estimator(i) * estimator(i) * (rho * m.effects[i]).trace().real();
    }
    return var;
}

}  // namespace

SampleReport sample(const Povm& m, const Matrix& rho, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    const Eigen::VectorXd p = born(m, rho);
    SampleReport report;
    report.shots = shots;
    report.accepted = shots;
    report.counts.assign(static_cast<std::size_t>(m.outcomes()), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        ++report.counts[static_cast<std::size_t>(draw_from_cdf(p, rng.next_double()))];
    }
    report.exact = p;
    report.empirical.resize(m.outcomes());
    for (int i = 0; i < m.outcomes(); ++i) {
        report.empirical(i) = static_cast<double>(report.counts[static_cast<std::size_t>(i)]) / shots;
    }
    report.tv_distance = tv_distance(report.empirical, report.exact);
    return report;
}

SampleReport sample_with_postselection(const SimulationEnsemble& e, const Matrix& rho,
                                       std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    const int n = e.n;

    Eigen::VectorXd block_probs(static_cast<int>(e.weights.size()));
    for (std::size_t b = 0; b < e.weights.size(); ++b) {
        block_probs(static_cast<int>(b)) = e.weights[b];
    }
    std::vector<Eigen::VectorXd> sub_probs;
    sub_probs.reserve(e.subs.size());
    for (const auto& sub : e.subs) sub_probs.push_back(born(sub, rho));

    SampleReport report;
    report.shots = shots;
    report.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        const int b = draw_from_cdf(block_probs, rng.next_double());
        const int local = draw_from_cdf(sub_probs[static_cast<std::size_t>(b)], rng.next_double());
        const auto& subset = e.partition.subsets[static_cast<std::size_t>(b)];
        if (local < static_cast<int>(subset.size())) {
            ++report.counts[static_cast<std::size_t>(subset[static_cast<std::size_t>(local)])];
        } else {
            ++report.counts[static_cast<std::size_t>(n)];  // fail outcome
        }
    }
    report.accepted = shots - report.counts[static_cast<std::size_t>(n)];
    report.acceptance_rate = static_cast<double>(report.accepted) / shots;

    // Exact conditional distribution from the ensemble itself.
    Eigen::VectorXd exact = Eigen::VectorXd::Zero(n);
    for (std::size_t b = 0; b < e.subs.size(); ++b) {
        const auto& subset = e.partition.subsets[b];
        for (std::size_t kk = 0; kk < subset.size(); ++kk) {
            exact(subset[kk]) += e.weights[b] * sub_probs[b](static_cast<int>(kk));
        }
    }
    const double success_mass = exact.sum();
    if (success_mass > 0.0) exact /= success_mass;
    report.exact = exact;
    report.empirical = Eigen::VectorXd::Zero(n);
    if (report.accepted > 0) {
        for (int i = 0; i < n; ++i) {
            report.empirical(i) =
                static_cast<double>(report.counts[static_cast<std::size_t>(i)]) / report.accepted;
        }
    }
    report.tv_distance = tv_distance(report.empirical, report.exact);
    return report;
}

DiscriminationReport disc_success(const StateEnsemble& e, const Povm& m, double c) {
    if (e.priors.size() != e.states.size()) throw ValidationError("ensemble size mismatch");
    if (static_cast<int>(e.priors.size()) != m.outcomes()) {
        throw ValidationError("ensemble size must match outcome count");
    }
    double prior_sum = 0.0;
    for (double p : e.priors) {
        if (p < -tol::stoch) throw ValidationError("negative prior");
        prior_sum += p;
    }
    if (std::abs(prior_sum - 1.0) > tol::stoch) throw ValidationError("priors do not sum to 1");
    for (const auto& sigma : e.states) require_state(sigma, m.dim);

    DiscriminationReport report;
    report.c = c;
    const Povm noisy = depolarize(m, c);
    for (std::size_t i = 0; i < e.states.size(); ++i) {
        report.p_succ_m += e.priors[i] * (e.states[i] * m.effects[i]).trace().real();
        report.p_succ_noisy += e.priors[i] * (e.states[i] * noisy.effects[i]).trace().real();
    }
    report.inequality_ok = c * report.p_succ_m <= report.p_succ_noisy + 1e-12;
    return report;
}

ShadowReport shadow_check(const Povm& m, const std::vector<Matrix>& observables,
                          const std::vector<Eigen::VectorXd>& estimators, double c,
                          int num_states, std::uint64_t seed) {
    if (observables.size() != estimators.size() || observables.empty()) {
        throw ValidationError("need one estimator per observable");
    }
    if (c <= 0.0 || c > 1.0) throw ValidationError("c must lie in (0,1]");
    const int d = m.dim;
    const Povm noisy = depolarize(m, c);
    const Matrix maximally_mixed = Matrix::Identity(d, d) / d;

    ShadowReport report;
    bool sup_bound_ok = true;
    for (std::size_t o = 0; o < observables.size(); ++o) {
        const Matrix& obs = observables[o];
        if (obs.rows() != d || obs.cols() != d || hermiticity_defect(obs) > tol::herm) {
            throw ValidationError("observable must be Hermitian on the POVM space");
        }
        if (std::abs(obs.trace().real()) > 1e-10) {
            throw ValidationError("observable must be traceless");
        }
        const Eigen::VectorXd& est = estimators[o];
        if (est.size() != m.outcomes()) throw ValidationError("estimator arity mismatch");
        // Unbiasedness is the operator identity sum_i e(i) M_i = O; checking
        // it once covers every input state.
        Matrix recombined = Matrix::Zero(d, d);
        for (int i = 0; i < m.outcomes(); ++i) recombined += est(i) * m.effects[i];
        if ((recombined - obs).norm() > 1e-8) {
            throw ValidationError("estimator is biased for the ideal measurement");
        }
        Matrix noisy_recombined = Matrix::Zero(d, d);
        for (int i = 0; i < m.outcomes(); ++i) {
            noisy_recombined += (est(i) / c) * noisy.effects[i];
        }
        report.max_unbiased_deviation =
            std::max(report.max_unbiased_deviation, (noisy_recombined - obs).norm());

        const double var_mixed = variance_of(est, m, maximally_mixed);
        double max_var_ideal = var_mixed;
        double max_var_noisy = variance_of(est / c, noisy, maximally_mixed);
        for (int s = 0; s < num_states; ++s) {
            CounterRng rng(seed, (static_cast<std::uint64_t>(o) << 32) + static_cast<std::uint64_t>(s));
            const Matrix rho = random_density(d, rng);
            const double var_ideal = variance_of(est, m, rho);
            const double var_noisy = variance_of(est / c, noisy, rho);
            const double predicted = (c * var_ideal + (1.0 - c) * var_mixed) / (c * c);
            // Residual relative to the scale of the identity, so small c
            // (which inflates both sides by 1/c^2) does not mask precision.
            const double scale = std::max(1.0, std::abs(predicted));
            report.max_variance_deviation =
                std::max(report.max_variance_deviation, std::abs(var_noisy - predicted) / scale);
            max_var_ideal = std::max(max_var_ideal, var_ideal);
            max_var_noisy = std::max(max_var_noisy, var_noisy);
        }
        if (max_var_noisy > max_var_ideal / (c * c) + 1e-9) sup_bound_ok = false;
    }
    report.unbiased_ok = report.max_unbiased_deviation <= 1e-9;
    report.variance_ok = report.max_variance_deviation <= 1e-9;
    report.max_bound_ok = sup_bound_ok;
    return report;
}

Eigen::VectorXd least_squares_estimator(const Povm& m, const Matrix& observable) {
    const int d = m.dim;
    if (observable.rows() != d || observable.cols() != d) {
        throw ValidationError("observable dimension mismatch");
    }
    const int n = m.outcomes();
    Eigen::MatrixXd a(2 * d * d, n);
    Eigen::VectorXd b(2 * d * d);
    for (int i = 0; i < n; ++i) {
        int row = 0;
        for (int rr = 0; rr < d; ++rr) {
            for (int cc = 0; cc < d; ++cc) {
                a(row, i) = m.effects[i](rr, cc).real();
                a(row + d * d, i) = m.effects[i](rr, cc).imag();
                ++row;
            }
        }
    }
    int row = 0;
    for (int rr = 0; rr < d; ++rr) {
        for (int cc = 0; cc < d; ++cc) {
            b(row) = observable(rr, cc).real();
            b(row + d * d) = observable(rr, cc).imag();
            ++row;
        }
    }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    const Eigen::VectorXd x = cod.solve(b);
    if ((a * x - b).norm() > 1e-8) {
        throw ValidationError("observable is not estimable from this POVM");
    }
    return x;
}

}  // namespace povmsim
