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

#include "povmsim/povm.hpp"

#include <cmath>
#include <sstream>

#include "povmsim/errors.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

std::string Povm::label(int i) const {
    if (i >= 0 && i < static_cast<int>(labels.size()) && !labels[i].empty()) return labels[i];
    return std::to_string(i + 1);
}

Povm Povm::computational_basis(int d) {
    Povm m;
    m.dim = d;
    for (int i = 0; i < d; ++i) {
        Matrix e = Matrix::Zero(d, d);
        e(i, i) = Complex(1.0, 0.0);
        m.effects.push_back(e);
    }
    return m;
}

Povm Povm::trivial(int d, int n) {
    Povm m;
    m.dim = d;
    m.effects.assign(static_cast<std::size_t>(n), Matrix::Zero(d, d));
    m.effects[0] = Matrix::Identity(d, d);
    return m;
}

StochasticMap StochasticMap::identity(int n) {
    return StochasticMap{Eigen::MatrixXd::Identity(n, n)};
}

StochasticMap StochasticMap::relabel(int n_out, const std::vector<int>& target) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_out, static_cast<int>(target.size()));
    for (std::size_t j = 0; j < target.size(); ++j) {
        if (target[j] < 0 || target[j] >= n_out) throw ValidationError("relabel target out of range");
        m(target[j], static_cast<int>(j)) = 1.0;
    }
    return StochasticMap{m};
}

StochasticMap StochasticMap::compose(const StochasticMap& second, const StochasticMap& first) {
    if (second.cols() != first.rows()) throw ValidationError("stochastic map shape mismatch in compose");
    return StochasticMap{second.m * first.m};
}

bool StochasticMap::is_stochastic(double tolerance) const {
    if (m.minCoeff() < -tolerance) return false;
    for (int j = 0; j < m.cols(); ++j) {
        if (std::abs(m.col(j).sum() - 1.0) > tolerance) return false;
    }
    return true;
}

void SpWitness::prune(double weight_floor) {
    std::vector<Component> kept;
    double total = 0.0;
    for (auto& c : components) {
        if (c.weight >= weight_floor) {
            total += c.weight;
            kept.push_back(std::move(c));
        }
    }
    if (total > 0.0) {
        for (auto& c : kept) c.weight /= total;
    }
    components = std::move(kept);
}

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.what << " (magnitude " << v.magnitude << ")\n";
    }
    return os.str();
}

ValidationReport validate(const Povm& m) {
    return validate(m, tol::psd, tol::norm_per_dim);
}

ValidationReport validate(const Povm& m, double tol_psd, double tol_norm_per_dim) {
    ValidationReport report;
    auto flag = [&](const std::string& what, double magnitude) {
        report.ok = false;
        report.violations.push_back({what, magnitude});
    };
    if (m.dim < 1) {
        flag("dimension must be positive", static_cast<double>(m.dim));
        return report;
    }
    if (m.effects.empty()) {
        flag("no effects", 0.0);
        return report;
    }
    Matrix sum = Matrix::Zero(m.dim, m.dim);
    for (int i = 0; i < m.outcomes(); ++i) {
        const Matrix& e = m.effects[i];
        if (e.rows() != m.dim || e.cols() != m.dim) {
            flag("effect " + m.label(i) + " has wrong shape", 0.0);
            return report;
        }
        if (!e.allFinite()) {
            flag("effect " + m.label(i) + " has non-finite entries", 0.0);
            return report;
        }
        const double herm = hermiticity_defect(e);
        if (herm > tol::herm) flag("effect " + m.label(i) + " not Hermitian", herm);
        const Eigen::VectorXd vals = eigvals_hermitian((e + e.adjoint()) / 2.0);
        if (vals(0) < -tol_psd) flag("effect " + m.label(i) + " not PSD", -vals(0));
        sum += e;
    }
    const double completeness = (sum - Matrix::Identity(m.dim, m.dim)).norm();
    if (completeness > tol_norm_per_dim * m.dim) flag("effects do not sum to identity", completeness);
    return report;
}

void require_valid(const Povm& m) {
    const ValidationReport report = validate(m);
    if (!report.ok) throw ValidationError("invalid POVM: " + report.summary());
}

void require_state(const Matrix& rho, int dim) {
    if (rho.rows() != dim || rho.cols() != dim) throw ValidationError("state has wrong shape");
    if (!rho.allFinite()) throw ValidationError("state has non-finite entries");
    if (hermiticity_defect(rho) > tol::herm) throw ValidationError("state not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol::norm_per_dim * dim) {
        throw ValidationError("state trace differs from 1");
    }
    const Eigen::VectorXd vals = eigvals_hermitian((rho + rho.adjoint()) / 2.0);
    if (vals(0) < -tol::psd) throw ValidationError("state not PSD");
}

Eigen::VectorXd born(const Povm& m, const Matrix& rho) {
    require_state(rho, m.dim);
    Eigen::VectorXd p(m.outcomes());
    for (int i = 0; i < m.outcomes(); ++i) {
        p(i) = (rho * m.effects[i]).trace().real();
    }
    double total = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p(i) < 0.0) {
            if (p(i) < -tol::psd) throw ValidationError("Born probability below PSD slack");
            p(i) = 0.0;
        }
        total += p(i);
    }
    if (total > 0.0) p /= total;
    return p;
}

Povm post_process(const StochasticMap& q, const Povm& m) {
    if (q.cols() != m.outcomes()) throw ValidationError("post-processing arity mismatch");
    if (!q.is_stochastic(tol::stoch)) throw ValidationError("map is not column-stochastic");
    Povm out;
    out.dim = m.dim;
    out.effects.assign(static_cast<std::size_t>(q.rows()), Matrix::Zero(m.dim, m.dim));
    for (int j = 0; j < q.cols(); ++j) {
        for (int i = 0; i < q.rows(); ++i) {
            const double w = q.m(i, j);
            if (w != 0.0) out.effects[i] += w * m.effects[j];
        }
    }
    return out;
}

Povm mix(const std::vector<double>& weights, const std::vector<Povm>& povms) {
    if (weights.size() != povms.size() || povms.empty()) {
        throw ValidationError("mix needs one weight per POVM");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < -tol::stoch) throw ValidationError("negative mixing weight");
        total += w;
    }
    if (std::abs(total - 1.0) > tol::stoch) throw ValidationError("mixing weights do not sum to 1");
    const int d = povms[0].dim;
    int n = 0;
    for (const auto& p : povms) {
        if (p.dim != d) throw ValidationError("mix dimension mismatch");
        n = std::max(n, p.outcomes());
    }
    Povm out;
    out.dim = d;
    out.effects.assign(static_cast<std::size_t>(n), Matrix::Zero(d, d));
    for (std::size_t k = 0; k < povms.size(); ++k) {
        for (int i = 0; i < povms[k].outcomes(); ++i) {
            out.effects[i] += weights[k] * povms[k].effects[i];
        }
    }
    out.labels = povms[0].labels;
    return out;
}

Matrix depolarize_operator(const Matrix& x, double t) {
    const int d = static_cast<int>(x.rows());
    return t * x + ((1.0 - t) * x.trace().real() / d) * Matrix::Identity(d, d);
}

Povm depolarize(const Povm& m, double t) {
    if (t < 0.0 || t > 1.0) throw ValidationError("visibility must lie in [0,1]");
    Povm out;
    out.dim = m.dim;
    out.labels = m.labels;
    out.effects.reserve(m.effects.size());
    for (const auto& e : m.effects) out.effects.push_back(depolarize_operator(e, t));
    return out;
}

bool is_projective(const Povm& m) {
    for (int i = 0; i < m.outcomes(); ++i) {
        for (int j = 0; j < m.outcomes(); ++j) {
            const Matrix prod = m.effects[i] * m.effects[j];
            const Matrix expect = (i == j) ? m.effects[i] : Matrix::Zero(m.dim, m.dim);
            if ((prod - expect).norm() > tol::proj) return false;
        }
    }
    return true;
}

double effect_distance(const Povm& a, const Povm& b) {
    if (a.dim != b.dim || a.outcomes() != b.outcomes()) {
        throw ValidationError("effect_distance needs equal shapes");
    }
    double dist = 0.0;
    for (int i = 0; i < a.outcomes(); ++i) {
        dist = std::max(dist, (a.effects[i] - b.effects[i]).norm());
    }
    return dist;
}

CompactResult compact(const Povm& m) {
    CompactResult out;
    out.povm.dim = m.dim;
    for (int i = 0; i < m.outcomes(); ++i) {
        if (m.effects[i].trace().real() >= tol::effect_floor) {
            out.povm.effects.push_back(m.effects[i]);
            out.povm.labels.push_back(m.label(i));
            out.kept.push_back(i);
        }
    }
    return out;
}

std::string WitnessReport::summary() const {
    std::ostringstream os;
    os << (pass ? "pass" : "FAIL") << ": max effect deviation " << max_deviation
       << " (tolerance " << tolerance << ")";
    for (const auto& v : violations) os << "\n  " << v.what << " (magnitude " << v.magnitude << ")";
    return os.str();
}

WitnessReport verify_sp_witness(const SpWitness& w, const Povm& target, double tolerance) {
    WitnessReport report;
    report.tolerance = tolerance;
    auto flag = [&](const std::string& what, double magnitude) {
        report.violations.push_back({what, magnitude});
    };
    if (w.target_dim != target.dim) {
        flag("witness dimension differs from target", std::abs(w.target_dim - target.dim));
        return report;
    }
    if (w.components.empty()) {
        flag("witness has no components", 0.0);
        return report;
    }
    double weight_sum = 0.0;
    std::vector<Matrix> recombined(static_cast<std::size_t>(target.outcomes()),
                                   Matrix::Zero(target.dim, target.dim));
    for (std::size_t k = 0; k < w.components.size(); ++k) {
        const auto& c = w.components[k];
        const std::string tag = "component " + std::to_string(k + 1);
        if (c.weight <= 0.0) flag(tag + " has nonpositive weight", c.weight);
        weight_sum += c.weight;
        if (c.projective.dim != target.dim) {
            flag(tag + " lives on the wrong dimension", 0.0);
            continue;
        }
        if (!is_projective(c.projective)) flag(tag + " measurement is not projective", 0.0);
        if (!c.postproc.is_stochastic(tol::stoch)) flag(tag + " post-processing not stochastic", 0.0);
        if (c.postproc.cols() != c.projective.outcomes() || c.postproc.rows() != target.outcomes()) {
            flag(tag + " post-processing arity mismatch", 0.0);
            continue;
        }
        for (int j = 0; j < c.postproc.cols(); ++j) {
            for (int i = 0; i < c.postproc.rows(); ++i) {
                const double q = c.postproc.m(i, j);
                if (q != 0.0) recombined[i] += c.weight * q * c.projective.effects[j];
            }
        }
    }
    if (std::abs(weight_sum - 1.0) > tol::stoch) flag("weights do not sum to 1", std::abs(weight_sum - 1.0));
    for (int i = 0; i < target.outcomes(); ++i) {
        report.max_deviation = std::max(report.max_deviation,
                                        (recombined[i] - target.effects[i]).norm());
    }
    report.pass = report.violations.empty() && report.max_deviation <= tolerance;
    return report;
}

}  // namespace povmsim
