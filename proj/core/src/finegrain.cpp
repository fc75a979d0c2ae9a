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

#include "povmsim/finegrain.hpp"

#include <algorithm>
#include <cmath>

#include "povmsim/errors.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

namespace {

constexpr std::size_t kMaxParts = 10'000'000;

struct RankOnePiece {
    int source;     // originating outcome
    double weight;  // eigenvalue / magnitude
    Vector state;   // unit vector
};

// Spectral rank-one pieces of every effect, dropping eigenvalues below the
// effect floor.
std::vector<RankOnePiece> spectral_pieces(const Povm& m) {
    std::vector<RankOnePiece> pieces;
    for (int a = 0; a < m.outcomes(); ++a) {
        const Spectrum spec = eig_hermitian(m.effects[a]);
        for (int j = 0; j < spec.eigenvalues.size(); ++j) {
            const double lambda = spec.eigenvalues(j);
            if (lambda < tol::effect_floor) continue;
            pieces.push_back({a, lambda, spec.eigenvectors.col(j)});
        }
    }
    return pieces;
}

Refinement assemble(const Povm& m, const std::vector<RankOnePiece>& pieces,
                    const std::vector<std::vector<double>>& parts) {
    Refinement out;
    out.refined.dim = m.dim;
    std::vector<int> source_of;
    double lo = 0.0, hi = 0.0;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        for (double w : parts[p]) {
            out.refined.effects.push_back(w * pieces[p].state * pieces[p].state.adjoint());
            out.alphas.push_back(w);
            source_of.push_back(pieces[p].source);
            if (out.alphas.size() == 1) {
                lo = hi = w;
            } else {
                lo = std::min(lo, w);
                hi = std::max(hi, w);
            }
        }
    }
    if (out.refined.effects.empty()) throw ValidationError("refinement produced no effects");
    out.flatness = hi / lo;
    out.recover = StochasticMap::relabel(m.outcomes(), source_of);
    return out;
}

}  // namespace

std::vector<std::vector<double>> subdivide_weights(const std::vector<double>& x,
                                                   double delta, double eps) {
    if (x.empty()) throw ValidationError("subdivide_weights: empty input");
    if (delta <= 0.0 || delta >= 1.0) throw ValidationError("delta must lie in (0,1)");
    if (eps <= 0.0) throw ValidationError("eps must be positive");
    double min_x = x[0];
    for (double xi : x) {
        if (!std::isfinite(xi) || xi <= 0.0) {
            throw ValidationError("subdivide_weights: entries must be finite and positive");
        }
        min_x = std::min(min_x, xi);
    }
    const double u = std::min(eps, delta * min_x);
    if (u < 1e-300) throw ValidationError("subdivision unit underflows");

    std::size_t total = 0;
    std::vector<std::vector<double>> parts(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto k = static_cast<std::size_t>(std::ceil(x[i] / u));
        if (k == 0) k = 1;
        // Rounding in x/u can land one short of the true ceiling.
        if (x[i] / static_cast<double>(k) > eps) ++k;
        total += k;
        if (total > kMaxParts) {
            throw InfeasibleError(
                "subdivision exceeds " + std::to_string(kMaxParts) +
                " parts; raise delta or eps, or compact near-zero entries first");
        }
        parts[i].assign(k, x[i] / static_cast<double>(k));
    }
    return parts;
}

Refinement flat_refine(const Povm& m, double delta, double eps) {
    require_valid(m);
    const std::vector<RankOnePiece> pieces = spectral_pieces(m);
    if (pieces.empty()) throw ValidationError("POVM has no spectral mass");
    std::vector<double> weights;
    weights.reserve(pieces.size());
    for (const auto& p : pieces) weights.push_back(p.weight);
    return assemble(m, pieces, subdivide_weights(weights, delta, eps));
}

Refinement extremal_refine(const Povm& m) {
    require_valid(m);
    const int d = m.dim;
    if (m.outcomes() > d * d) {
        throw ValidationError("extremal_refine requires n <= d^2 outcomes");
    }
    std::vector<RankOnePiece> pieces;
    std::vector<std::vector<double>> parts;
    for (int a = 0; a < m.outcomes(); ++a) {
        const Spectrum spec = eig_hermitian(m.effects[a]);
        const int top = static_cast<int>(spec.eigenvalues.size()) - 1;
        for (int j = 0; j < top; ++j) {
            if (spec.eigenvalues(j) > tol::rank_cut * std::max(spec.eigenvalues(top), 1.0)) {
                throw ValidationError("extremal_refine requires rank-one effects");
            }
        }
        const double alpha = spec.eigenvalues(top);
        if (alpha < tol::effect_floor) continue;
        // Slack keeps rounding at integer multiples of 1/d from over-splitting.
        auto k = static_cast<std::size_t>(std::ceil(d * alpha - 1e-9));
        if (k == 0) k = 1;
        if (alpha / static_cast<double>(k) > (1.0 + 1e-9) / d) ++k;
        pieces.push_back({a, alpha, spec.eigenvectors.col(top)});
        parts.push_back(std::vector<double>(k, alpha / static_cast<double>(k)));
    }
    Refinement out = assemble(m, pieces, parts);
    if (out.refined.outcomes() > 2 * d * d) {
        throw ValidationError("refinement exceeded the 2 d^2 outcome bound");
    }
    return out;
}

}  // namespace povmsim
