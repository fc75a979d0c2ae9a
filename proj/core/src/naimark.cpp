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

#include "povmsim/naimark.hpp"

#include <cmath>

#include "povmsim/errors.hpp"
#include "povmsim/random.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

namespace {

struct RankOnePiece {
    int source;
    double weight;
    Vector state;
};

// Top spectral component; throws unless the effect is rank-one within the
// rank cutoff.
RankOnePiece rank_one_form(const Matrix& effect, int source) {
    const Spectrum spec = eig_hermitian(effect);
    const int top = static_cast<int>(spec.eigenvalues.size()) - 1;
    const double alpha = spec.eigenvalues(top);
    if (alpha < tol::effect_floor) {
        throw ValidationError("effect " + std::to_string(source + 1) +
                              " is zero; compact the POVM first");
    }
    for (int j = 0; j < top; ++j) {
        if (spec.eigenvalues(j) > tol::rank_cut * std::max(alpha, 1.0)) {
            throw ValidationError("effect " + std::to_string(source + 1) + " has rank > 1");
        }
    }
    return {source, alpha, spec.eigenvectors.col(top)};
}

// Dilation of a list of rank-one pieces living on C^dim into C^ambient.
// Returns the orthonormal measurement vectors (one per piece, zero-padded to
// the ambient dimension).
std::vector<Vector> dilation_vectors(const std::vector<RankOnePiece>& pieces, int dim,
                                     int ambient) {
    const int m = static_cast<int>(pieces.size());
    Matrix v(m, dim);
    for (int i = 0; i < m; ++i) {
        v.row(i) = std::sqrt(pieces[static_cast<std::size_t>(i)].weight) *
                   pieces[static_cast<std::size_t>(i)].state.adjoint();
    }
    const Matrix u = complete_isometry(v);
    std::vector<Vector> phis;
    phis.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Vector phi = Vector::Zero(ambient);
        phi.head(m) = u.row(i).conjugate().transpose();
        phis.push_back(std::move(phi));
    }
    return phis;
}

}  // namespace

Matrix NaimarkDilation::embed_state(const Matrix& rho) const {
    require_state(rho, base_dim);
    // Tensor layout orders the ambient index as (j, a) -> j + base_dim * a,
    // so rho tensor |0><0| occupies the same leading block.
    Matrix embedded = Matrix::Zero(ambient_dim, ambient_dim);
    embedded.topLeftCorner(base_dim, base_dim) = rho;
    return embedded;
}

double verify_dilation(const NaimarkDilation& dil, const Povm& target, int num_states,
                       std::uint64_t seed) {
    double worst = 0.0;
    for (int s = 0; s < num_states; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        const Matrix rho = random_density(dil.base_dim, rng);
        const Eigen::VectorXd ambient_probs = born(dil.projective, dil.embed_state(rho));
        const Eigen::VectorXd coarse_probs = dil.coarse.m * ambient_probs;
        const Eigen::VectorXd direct = born(target, rho);
        worst = std::max(worst, (coarse_probs - direct).cwiseAbs().maxCoeff());
    }
    return worst;
}

NaimarkDilation dilate_rank_one(const Povm& m, int ambient) {
    require_valid(m);
    const int n = m.outcomes();
    if (ambient < n) throw InfeasibleError("ambient dimension below outcome count");

    std::vector<RankOnePiece> pieces;
    pieces.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pieces.push_back(rank_one_form(m.effects[i], i));
    const std::vector<Vector> phis = dilation_vectors(pieces, m.dim, ambient);

    NaimarkDilation dil;
    dil.base_dim = m.dim;
    dil.ambient_dim = ambient;
    dil.layout = DilationLayout::kBlock;

    dil.projective.dim = ambient;
    Matrix covered = Matrix::Zero(ambient, ambient);
    std::vector<int> target(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Matrix p = phis[static_cast<std::size_t>(i)] * phis[static_cast<std::size_t>(i)].adjoint();
        dil.projective.effects.push_back(p);
        covered += p;
        target[static_cast<std::size_t>(i)] = i;
    }
    if (ambient > n) {
        // Leftover coordinates, merged into the last outcome. They are
        // orthogonal to every embedded state, so the merge is invisible.
        dil.projective.effects.push_back(Matrix::Identity(ambient, ambient) - covered);
        target.push_back(n - 1);
    }
    dil.coarse = StochasticMap::relabel(n, target);
    return dil;
}

NaimarkDilation dilate_with_ancilla(const Povm& n, int k) {
    require_valid(n);
    if (k < 1) throw ValidationError("ancilla dimension must be >= 1");
    const int d = n.dim;
    const int ambient = d * k;

    std::vector<RankOnePiece> pieces;
    for (int i = 0; i < n.outcomes(); ++i) {
        const Spectrum spec = eig_hermitian(n.effects[i]);
        for (int j = 0; j < spec.eigenvalues.size(); ++j) {
            if (spec.eigenvalues(j) < tol::effect_floor) continue;
            pieces.push_back({i, spec.eigenvalues(j), spec.eigenvectors.col(j)});
        }
    }
    const int m = static_cast<int>(pieces.size());
    if (m > ambient) {
        throw InfeasibleError("total spectral rank " + std::to_string(m) +
                              " exceeds the dilation space " + std::to_string(ambient));
    }

    const std::vector<Vector> phis = dilation_vectors(pieces, d, ambient);

    NaimarkDilation dil;
    dil.base_dim = d;
    dil.ambient_dim = ambient;
    dil.layout = DilationLayout::kTensor;
    dil.ancilla_dim = k;
    dil.projective.dim = ambient;
    Matrix covered = Matrix::Zero(ambient, ambient);
    std::vector<int> target;
    target.reserve(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i < m; ++i) {
        const Matrix p = phis[static_cast<std::size_t>(i)] * phis[static_cast<std::size_t>(i)].adjoint();
        dil.projective.effects.push_back(p);
        covered += p;
        target.push_back(pieces[static_cast<std::size_t>(i)].source);
    }
    if (m < ambient) {
        dil.projective.effects.push_back(Matrix::Identity(ambient, ambient) - covered);
        target.push_back(n.outcomes() - 1);
    }
    dil.coarse = StochasticMap::relabel(n.outcomes(), target);
    return dil;
}

NearlyProjectiveForm parse_nearly_projective(const Povm& n) {
    require_valid(n);
    if (n.outcomes() < 2) throw ValidationError("nearly projective form needs l >= 1 plus remainder");
    NearlyProjectiveForm form;
    form.l = n.outcomes() - 1;
    if (2 * form.l > n.dim) throw ValidationError("nearly projective form requires l <= d/2");
    for (int i = 0; i < form.l; ++i) {
        const RankOnePiece piece = rank_one_form(n.effects[i], i);
        form.magnitudes.push_back(piece.weight);
        form.states.push_back(piece.state);
        if (piece.weight > 1.0 + tol::psd) {
            throw ValidationError("magnitude A_" + std::to_string(i + 1) + " exceeds 1");
        }
    }
    form.w_basis = orthonormal_basis(n.dim, form.states);
    form.w_dim = static_cast<int>(form.w_basis.cols());
    form.wperp_dim = n.dim - form.w_dim;
    return form;
}

DeficientNaimarkResult deficient_naimark(const Povm& n) {
    const NearlyProjectiveForm form = parse_nearly_projective(n);
    const int d = n.dim;
    const int l = form.l;
    const int w = form.w_dim;
    const int kp = form.wperp_dim;

    // Adapted coordinates: T rotates W onto the first w axes.
    const Matrix t = complete_isometry(form.w_basis);

    // Compression of the POVM onto W, in adapted coordinates.
    std::vector<RankOnePiece> pieces;
    pieces.reserve(static_cast<std::size_t>(l) + static_cast<std::size_t>(w));
    for (int i = 0; i < l; ++i) {
        Vector psi_adapted = (t.adjoint() * form.states[static_cast<std::size_t>(i)]).head(w);
        pieces.push_back({i, form.magnitudes[static_cast<std::size_t>(i)], std::move(psi_adapted)});
    }
    const Matrix remainder_w =
        (t.adjoint() * n.effects[static_cast<std::size_t>(l)] * t).topLeftCorner(w, w);
    const Spectrum rem_spec = eig_hermitian(remainder_w);
    for (int j = 0; j < rem_spec.eigenvalues.size(); ++j) {
        if (rem_spec.eigenvalues(j) < tol::effect_floor) continue;
        pieces.push_back({l, rem_spec.eigenvalues(j), rem_spec.eigenvectors.col(j)});
    }
    // Inner dilation fits inside C^d: at most l + w <= d rank-one pieces.
    const std::vector<Vector> chis = dilation_vectors(pieces, w, d);

    DeficientNaimarkResult out;
    out.w_dim = w;
    out.wperp_dim = kp;
    out.magnitudes = form.magnitudes;

    // P^W in adapted coordinates: rank-one projectors for the first l
    // outcomes, everything else merged into the remainder.
    out.pw.dim = d;
    Matrix covered = Matrix::Zero(d, d);
    for (int i = 0; i < l; ++i) {
        const Matrix p =
            chis[static_cast<std::size_t>(i)] * chis[static_cast<std::size_t>(i)].adjoint();
        out.pw.effects.push_back(t * p * t.adjoint());
        covered += p;
    }
    out.pw.effects.push_back(t * (Matrix::Identity(d, d) - covered) * t.adjoint());

    // The target POVM F.
    const Matrix p_w = form.w_basis * form.w_basis.adjoint();
    const Matrix p_perp = Matrix::Identity(d, d) - p_w;
    out.f.dim = d;
    Matrix f_sum = Matrix::Zero(d, d);
    for (int i = 0; i < l; ++i) {
        const Matrix fi = form.magnitudes[static_cast<std::size_t>(i)] *
                              form.states[static_cast<std::size_t>(i)] *
                              form.states[static_cast<std::size_t>(i)].adjoint() +
                          ((1.0 - form.magnitudes[static_cast<std::size_t>(i)]) / kp) * p_perp;
        out.f.effects.push_back(fi);
        f_sum += fi;
    }
    out.f.effects.push_back(Matrix::Identity(d, d) - f_sum);

    // Exact finite twirl: phases {0, pi} on W times the Heisenberg-Weyl
    // family on Wperp. The phase pair kills the cross blocks, the family
    // averages the Wperp block to its normalized trace.
    const std::vector<Matrix> family = heisenberg_weyl(kp);
    const double weight = 1.0 / (2.0 * static_cast<double>(family.size()));
    out.witness.target_dim = d;
    for (double sign : {1.0, -1.0}) {
        for (const Matrix& v : family) {
            Matrix u_adapted = Matrix::Zero(d, d);
            u_adapted.topLeftCorner(w, w) = sign * Matrix::Identity(w, w);
            u_adapted.bottomRightCorner(kp, kp) = v;
            const Matrix u = t * u_adapted * t.adjoint();
            SpWitness::Component comp;
            comp.weight = weight;
            comp.projective.dim = d;
            for (const Matrix& p : out.pw.effects) {
                comp.projective.effects.push_back(u * p * u.adjoint());
            }
            comp.postproc = StochasticMap::identity(l + 1);
            out.witness.components.push_back(std::move(comp));
        }
    }
    return out;
}

Matrix twirl_average(const Matrix& b, const std::vector<Vector>& w_basis) {
    if (b.rows() != b.cols()) throw ValidationError("operator must be square");
    const int d = static_cast<int>(b.rows());
    const Matrix p_w = projector_onto(d, w_basis);
    const int w = rank_hermitian(p_w);
    if (w >= d) throw ValidationError("twirl subspace must be proper");
    const Matrix p_perp = Matrix::Identity(d, d) - p_w;
    const double trace_perp = (b * p_perp).trace().real();
    return p_w * b * p_w + (trace_perp / (d - w)) * p_perp;
}

}  // namespace povmsim
