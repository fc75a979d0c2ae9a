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

#ifndef POVMSIM_POVM_HPP
#define POVMSIM_POVM_HPP

#include <optional>
#include <string>
#include <vector>

#include "povmsim/linalg.hpp"

namespace povmsim {

/// Reserved label for the failure outcome of postselected simulations.
inline const std::string kFailLabel = "∅";

/// Finite-outcome measurement on C^d: an ordered list of PSD effects
/// summing to the identity. Zero effects are retained so outcome labels
/// stay aligned through mixing; `compact` strips them explicitly.
struct Povm {
    int dim = 0;
    std::vector<Matrix> effects;
    std::vector<std::string> labels;  // optional; defaulted to "1".."n"

    int outcomes() const { return static_cast<int>(effects.size()); }
    std::string label(int i) const;

    static Povm computational_basis(int d);
    /// Coarsest measurement (I_d) padded with zero effects to n outcomes.
    static Povm trivial(int d, int n = 1);
};

/// Column-stochastic array q_{i|j}: rows index output outcomes, columns
/// input outcomes, every column sums to one.
struct StochasticMap {
    Eigen::MatrixXd m;

    int rows() const { return static_cast<int>(m.rows()); }
    int cols() const { return static_cast<int>(m.cols()); }

    static StochasticMap identity(int n);
    /// Deterministic relabeling: column j puts all mass on target[j].
    static StochasticMap relabel(int n_out, const std::vector<int>& target);
    /// Left-composition: apply `first`, then `second`.
    static StochasticMap compose(const StochasticMap& second, const StochasticMap& first);

    bool is_stochastic(double tolerance) const;
};

/// Finite convex decomposition into (weight, projective measurement,
/// post-processing) triples; certifies that a target POVM is a
/// randomization of post-processed projective measurements.
struct SpWitness {
    struct Component {
        double weight = 0.0;
        Povm projective;
        StochasticMap postproc;
    };
    int target_dim = 0;
    std::vector<Component> components;

    /// Drops components below the weight floor and renormalizes.
    void prune(double weight_floor = 1e-14);
};

struct Violation {
    std::string what;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::string summary() const;
};

/// Diagnostic check of the POVM invariants (PSD effects, completeness,
/// Hermiticity). Never throws; lists every violation with its magnitude.
ValidationReport validate(const Povm& m);

/// Same check with explicit PSD slack and per-dimension completeness
/// tolerance (defaults are tol::psd and tol::norm_per_dim).
ValidationReport validate(const Povm& m, double tol_psd, double tol_norm_per_dim);

/// Throws ValidationError unless `validate` passes.
void require_valid(const Povm& m);

/// Outcome distribution tr(rho M_i). Negative values within the PSD slack
/// are clipped to zero and the distribution renormalized.
/// Throws ValidationError for an invalid state.
Eigen::VectorXd born(const Povm& m, const Matrix& rho);

/// Throws ValidationError unless rho is a density matrix.
void require_state(const Matrix& rho, int dim);

/// Classical post-processing: effect i of the output is sum_j q_{i|j} M_j.
Povm post_process(const StochasticMap& q, const Povm& m);

/// Effect-wise convex combination. Outcome counts are aligned by padding
/// with zero effects.
Povm mix(const std::vector<double>& weights, const std::vector<Povm>& povms);

/// Depolarized measurement: effect i becomes t M_i + (1-t) (tr M_i / d) I.
Povm depolarize(const Povm& m, double t);

/// Depolarizing channel on a single operator.
Matrix depolarize_operator(const Matrix& x, double t);

/// True iff all pairwise products satisfy P_i P_j = delta_ij P_i within
/// tol::proj. Zero effects are allowed.
bool is_projective(const Povm& m);

/// max_i Frobenius distance between corresponding effects.
double effect_distance(const Povm& a, const Povm& b);

struct CompactResult {
    Povm povm;
    /// kept[i] = original index of compacted outcome i.
    std::vector<int> kept;
};

/// Removes effects with trace below tol::effect_floor.
CompactResult compact(const Povm& m);

struct WitnessReport {
    bool pass = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::vector<Violation> violations;
    std::string summary() const;
};

/// Independent verifier: recombines sum_k p_k Q_k(P_k) from scratch and
/// reports the largest Frobenius deviation per effect from the target,
/// along with structural violations (weights, projectivity, stochasticity).
WitnessReport verify_sp_witness(const SpWitness& w, const Povm& target,
                                double tolerance = 1e-8);

}  // namespace povmsim

#endif  // POVMSIM_POVM_HPP
