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

#include "povmsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "povmsim/errors.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim {

namespace {

double off_diagonal_mass(const Matrix& a) {
    double sum = 0.0;
    for (int p = 0; p < a.rows(); ++p) {
        for (int q = 0; q < a.cols(); ++q) {
            if (p != q) sum += std::norm(a(p, q));
        }
    }
    return std::sqrt(sum);
}

// Phase so that the first component of largest modulus becomes real >= 0.
void normalize_phase(Eigen::Ref<Vector> v) {
    int idx = 0;
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        double m = std::abs(v(i));
        if (m > best + 1e-14) {
            best = m;
            idx = i;
        }
    }
    if (best == 0.0) return;
    Complex phase = std::conj(v(idx)) / best;
    v *= phase;
    v(idx) = Complex(std::abs(v(idx)), 0.0);
}

// Cyclic Jacobi for Hermitian matrices. Rotations annihilate one
// off-diagonal entry at a time; convergence is quadratic once the
// off-diagonal mass is small.
Spectrum jacobi(Matrix a, bool with_vectors) {
    const int n = static_cast<int>(a.rows());
    Matrix v;
    if (with_vectors) v = Matrix::Identity(n, n);

    const double scale = std::max(1.0, a.norm());
    const double target = 1e-13 * scale;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_mass(a) > target; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const Complex phase = apq / r;  // e^{i theta}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary differing from identity on the (p,q) block:
                //   U[p,p] = c, U[p,q] = s, U[q,p] = -s conj(phase), U[q,q] = c conj(phase)
                // A <- U^dag A U, columns first, then the conjugate row update.
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * akp + c * std::conj(phase) * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = Complex(0.0, 0.0);
                a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
                if (with_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                        v(k, q) = s * vkp + c * std::conj(phase) * vkq;
                    }
                }
            }
        }
    }

    Spectrum out;
    out.eigenvalues.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    for (int i = 0; i < n; ++i) out.eigenvalues(i) = a(order[i], order[i]).real();
    if (with_vectors) {
        out.eigenvectors.resize(n, n);
        for (int i = 0; i < n; ++i) out.eigenvectors.col(i) = v.col(order[i]);
        for (int i = 0; i < n; ++i) normalize_phase(out.eigenvectors.col(i));
    }
    return out;
}

void require_hermitian(const Matrix& h) {
    if (h.rows() != h.cols()) throw ValidationError("matrix is not square");
    if (h.rows() == 0) throw ValidationError("matrix is empty");
    const double defect = hermiticity_defect(h);
    if (defect > tol::herm) {
        throw ValidationError("matrix is not Hermitian: defect " + std::to_string(defect));
    }
}

}  // namespace

Matrix Spectrum::reconstruct() const {
    const int n = static_cast<int>(eigenvalues.size());
    Matrix out = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        out += eigenvalues(k) * eigenvectors.col(k) * eigenvectors.col(k).adjoint();
    }
    return out;
}

double hermiticity_defect(const Matrix& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& h, double tolerance) {
    return h.rows() == h.cols() && hermiticity_defect(h) <= tolerance;
}

Spectrum eig_hermitian(const Matrix& h) {
    require_hermitian(h);
    // Symmetrize so rounding in the input cannot leak into the rotations.
    return jacobi(((h + h.adjoint()) / 2.0).eval(), true);
}

Eigen::VectorXd eigvals_hermitian(const Matrix& h) {
    require_hermitian(h);
    return jacobi(((h + h.adjoint()) / 2.0).eval(), false).eigenvalues;
}

double op_norm(const Matrix& h) {
    const Eigen::VectorXd vals = eigvals_hermitian(h);
    return std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
}

int rank_hermitian(const Matrix& h) {
    const Eigen::VectorXd vals = eigvals_hermitian(h);
    const double top = vals.cwiseAbs().maxCoeff();
    const double cutoff = tol::rank_cut * std::max(top, 1.0);
    int rank = 0;
    for (int i = 0; i < vals.size(); ++i) {
        if (std::abs(vals(i)) > cutoff) ++rank;
    }
    return rank;
}

Matrix complete_isometry(const Matrix& v) {
    const int n = static_cast<int>(v.rows());
    const int d = static_cast<int>(v.cols());
    if (n < d) throw ValidationError("isometry has more columns than rows");
    const double defect = (v.adjoint() * v - Matrix::Identity(d, d)).norm();
    if (defect > tol::orth) {
        throw ValidationError("columns are not orthonormal: defect " + std::to_string(defect));
    }
    if (n == d) return v;

    // Householder QR spans col(V) with the first d factors, so the trailing
    // n-d columns of Q are an orthonormal basis of the complement.
    Eigen::HouseholderQR<Matrix> qr(v);
    Matrix q = qr.householderQ();
    Matrix u(n, n);
    u.leftCols(d) = v;
    u.rightCols(n - d) = q.rightCols(n - d);
    for (int j = d; j < n; ++j) normalize_phase(u.col(j));
    return u;
}

std::vector<Matrix> heisenberg_weyl(int k) {
    if (k < 1) throw ValidationError("heisenberg_weyl requires k >= 1");
    Matrix shift = Matrix::Zero(k, k);
    for (int j = 0; j < k; ++j) shift((j + 1) % k, j) = Complex(1.0, 0.0);
    Matrix clock = Matrix::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        const double angle = 2.0 * M_PI * j / k;
        clock(j, j) = Complex(std::cos(angle), std::sin(angle));
    }
    std::vector<Matrix> family;
    family.reserve(static_cast<std::size_t>(k) * k);
    Matrix xa = Matrix::Identity(k, k);
    for (int a = 0; a < k; ++a) {
        Matrix w = xa;
        for (int b = 0; b < k; ++b) {
            family.push_back(w);
            w = w * clock;
        }
        xa = shift * xa;
    }
    return family;
}

Matrix orthonormal_basis(int dim, const std::vector<Vector>& vectors) {
    if (dim < 1) throw ValidationError("dimension must be positive");
    if (vectors.empty()) return Matrix(dim, 0);
    Matrix a(dim, static_cast<int>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim) throw ValidationError("vector dimension mismatch");
        if (vectors[j].norm() <= 1e-300) throw ValidationError("zero vector in spanning set");
        a.col(static_cast<int>(j)) = vectors[j];
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const double cutoff = tol::rank_cut * std::max(svd.singularValues()(0), 1.0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > cutoff) ++rank;
    }
    Matrix basis = svd.matrixU().leftCols(rank);
    for (int j = 0; j < rank; ++j) normalize_phase(basis.col(j));
    return basis;
}

Matrix projector_onto(int dim, const std::vector<Vector>& vectors) {
    const Matrix basis = orthonormal_basis(dim, vectors);
    return basis * basis.adjoint();
}

}  // namespace povmsim
