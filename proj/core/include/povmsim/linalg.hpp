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

#ifndef POVMSIM_LINALG_HPP
#define POVMSIM_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace povmsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors the matching orthonormal columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    /// Sum of lambda_k v_k v_k^dag.
    Matrix reconstruct() const;
};

/// Max elementwise deviation from H = H^dag.
double hermiticity_defect(const Matrix& h);

bool is_hermitian(const Matrix& h, double tolerance);

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations, sweeping until
/// the off-diagonal Frobenius mass drops below 1e-13 (relative to the input
/// norm). Deterministic: eigenvalues ascending, ties kept in rotation order,
/// and each eigenvector is phased so that its first component of largest
/// modulus is real nonnegative.
///
/// Throws ValidationError if the input is not Hermitian within tolerance.
Spectrum eig_hermitian(const Matrix& h);

/// Eigenvalues only (ascending); skips eigenvector accumulation.
Eigen::VectorXd eigvals_hermitian(const Matrix& h);

/// Operator norm max |eigenvalue| of a Hermitian matrix.
double op_norm(const Matrix& h);

/// Rank with the relative eigenvalue cutoff tol::rank_cut.
int rank_hermitian(const Matrix& h);

/// Completes an n x d matrix with orthonormal columns to an n x n unitary
/// whose first d columns equal the input exactly. Appended columns carry the
/// deterministic phase convention of eig_hermitian.
Matrix complete_isometry(const Matrix& v);

/// Clock-and-shift unitaries W_ab = X^a Z^b on C^k, a,b in [0,k), in
/// lexicographic (a,b) order. The family averages any operator B to
/// (tr B / k) I, which is used for exact finite twirls.
std::vector<Matrix> heisenberg_weyl(int k);

/// Orthogonal projector onto the span of the given vectors, with rank
/// detected at the tol::rank_cut relative cutoff. An empty list yields the
/// zero matrix on C^dim.
Matrix projector_onto(int dim, const std::vector<Vector>& vectors);

/// Orthonormal basis of the span (columns), same rank rule as projector_onto.
Matrix orthonormal_basis(int dim, const std::vector<Vector>& vectors);

}  // namespace povmsim

#endif  // POVMSIM_LINALG_HPP
