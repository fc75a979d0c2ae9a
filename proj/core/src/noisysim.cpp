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

#include "povmsim/noisysim.hpp"

#include <cmath>

#include "povmsim/errors.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

namespace {

constexpr double kCoefficientSlack = 1e-12;

double visibility_from_form(const NearlyProjectiveForm& form) {
    double t = 1.0;
    for (double a : form.magnitudes) {
        const double ai = std::min(a, 1.0);
        const double denom = form.w_dim * (1.0 - ai) + form.wperp_dim;
        t = std::min(t, form.wperp_dim * ai / denom);
    }
    return t;
}

}  // namespace

double critical_visibility(const Povm& n) {
    return visibility_from_form(parse_nearly_projective(n));
}

NoisySimPlan build_plan(const Povm& n, double tau) {
    const NearlyProjectiveForm form = parse_nearly_projective(n);
    if (tau < 0.0 || tau > 1.0) throw ValidationError("tau must lie in [0,1]");
    const int d = n.dim;
    const int l = form.l;
    const int kp = form.wperp_dim;

    NoisySimPlan plan;
    plan.t_crit = visibility_from_form(form);
    plan.tau = tau;
    plan.w_dim = form.w_dim;
    plan.wperp_dim = kp;

    double sum_a = 0.0, sum_b = 0.0;
    for (int i = 0; i < l; ++i) {
        const double ai_mag = form.magnitudes[static_cast<std::size_t>(i)];
        const double a = ai_mag / d;
        double b;
        if (std::abs(ai_mag - 1.0) < 1e-15) {
            b = a;  // no Wperp leakage to compensate
        } else {
            b = a + (tau / (1.0 - tau)) * (ai_mag - 1.0) / kp;
        }
        if (b < -kCoefficientSlack) {
            throw ValidationError("tau exceeds the critical visibility: coefficient b_" +
                                  std::to_string(i + 1) + " = " + std::to_string(b));
        }
        b = std::max(b, 0.0);
        plan.a.push_back(a);
        plan.b.push_back(b);
        sum_a += a;
        sum_b += b;
    }
    if (sum_a > 1.0 + kCoefficientSlack || sum_b > 1.0 + kCoefficientSlack) {
        throw ValidationError("classical coefficients exceed normalization");
    }

    const Matrix p_w = form.w_basis * form.w_basis.adjoint();
    const Matrix p_perp = Matrix::Identity(d, d) - p_w;

    plan.classical.dim = d;
    for (int i = 0; i < l; ++i) {
        plan.classical.effects.push_back(plan.a[static_cast<std::size_t>(i)] * p_w +
                                         plan.b[static_cast<std::size_t>(i)] * p_perp);
    }
    plan.classical.effects.push_back((1.0 - sum_a) * p_w + (1.0 - sum_b) * p_perp);

    // One post-processed copy of the dichotomic measurement (P_W, P_Wperp),
    // padded with zero effects so every witness component shares the l+1
    // outcome arity.
    SpWitness::Component classical_comp;
    classical_comp.weight = 1.0;
    classical_comp.projective.dim = d;
    classical_comp.projective.effects.push_back(p_w);
    classical_comp.projective.effects.push_back(p_perp);
    for (int i = 2; i < l + 1; ++i) {
        classical_comp.projective.effects.push_back(Matrix::Zero(d, d));
    }
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(l + 1, l + 1);
    for (int i = 0; i < l; ++i) {
        q(i, 0) = plan.a[static_cast<std::size_t>(i)];
        q(i, 1) = plan.b[static_cast<std::size_t>(i)];
    }
    q(l, 0) = 1.0 - sum_a;
    q(l, 1) = 1.0 - sum_b;
    for (int j = 2; j < l + 1; ++j) q(l, j) = 1.0;
    classical_comp.postproc = StochasticMap{q};
    plan.classical_witness.target_dim = d;
    plan.classical_witness.components.push_back(classical_comp);

    plan.full_witness.target_dim = d;
    if (tau > 0.0) {
        const DeficientNaimarkResult deficient = deficient_naimark(n);
        for (const auto& comp : deficient.witness.components) {
            SpWitness::Component scaled = comp;
            scaled.weight *= tau;
            plan.full_witness.components.push_back(std::move(scaled));
        }
    }
    classical_comp.weight = 1.0 - tau;
    plan.full_witness.components.push_back(std::move(classical_comp));
    plan.full_witness.prune();
    return plan;
}

}  // namespace povmsim
