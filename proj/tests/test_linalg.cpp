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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "povmsim/errors.hpp"
#include "povmsim/linalg.hpp"
#include "povmsim/random.hpp"

using namespace povmsim;

namespace {

Matrix trine_failure_complement() {
    // (2/3)(psi psi^dag + phi phi^dag) with psi = (1,0), phi = (-1/2, sqrt(3)/2):
    // the complement of the third trine effect.
    Vector psi(2), phi(2);
    psi << Complex(1, 0), Complex(0, 0);
    phi << Complex(-0.5, 0), Complex(std::sqrt(3.0) / 2.0, 0);
    return (2.0 / 3.0) * (psi * psi.adjoint() + phi * phi.adjoint());
}

}  // namespace

TEST_CASE("eig_hermitian on the identity") {
    const Spectrum s = eig_hermitian(Matrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(s.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("eig_hermitian on an already diagonal matrix") {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = -1.0;
    const Spectrum s = eig_hermitian(h);
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
}

TEST_CASE("eig_hermitian on the bit-flip matrix") {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const Spectrum s = eig_hermitian(x);
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
    const double inv = 1.0 / std::sqrt(2.0);
    // Phase convention: first component real nonnegative.
    CHECK(std::abs(s.eigenvectors(0, 0) - Complex(inv, 0)) < 1e-10);
    CHECK(std::abs(s.eigenvectors(1, 0) - Complex(-inv, 0)) < 1e-10);
    CHECK(std::abs(s.eigenvectors(0, 1) - Complex(inv, 0)) < 1e-10);
    CHECK(std::abs(s.eigenvectors(1, 1) - Complex(inv, 0)) < 1e-10);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = Complex(1.0, 0.0);
    h(1, 0) = Complex(0.5, 0.0);
    CHECK_THROWS_AS(eig_hermitian(h), ValidationError);
}

TEST_CASE("spectral reconstruction and orthonormality on random matrices") {
    for (int trial = 0; trial < 40; ++trial) {
        CounterRng rng(7, static_cast<std::uint64_t>(trial));
        const int d = 2 + static_cast<int>(rng.next_below(15));
        const Matrix h = random_hermitian(d, rng);
        const Spectrum s = eig_hermitian(h);
        CHECK((s.reconstruct() - h).norm() <= 1e-9 * std::max(1.0, h.norm()));
        CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(d, d)).norm() < 1e-10);
        for (int i = 0; i + 1 < d; ++i) CHECK(s.eigenvalues(i) <= s.eigenvalues(i + 1));
    }
}

TEST_CASE("eig_hermitian is deterministic") {
    CounterRng rng(11, 0);
    const Matrix h = random_hermitian(6, rng);
    const Spectrum a = eig_hermitian(h);
    const Spectrum b = eig_hermitian(h);
    CHECK((a.eigenvectors - b.eigenvectors).norm() == 0.0);
    CHECK((a.eigenvalues - b.eigenvalues).norm() == 0.0);
}

TEST_CASE("op_norm") {
    CHECK(op_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
    CHECK(op_norm(Matrix::Zero(3, 3)) == doctest::Approx(0.0));
    // Hand oracle: eigenvalues of the 2x2 trine complement are {1, 1/3}.
    CHECK(op_norm(trine_failure_complement()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complete_isometry on a square input returns it unchanged") {
    const Matrix u = complete_isometry(Matrix::Identity(3, 3));
    CHECK((u - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("complete_isometry on a single column") {
    Matrix v(2, 1);
    const double inv = 1.0 / std::sqrt(2.0);
    v(0, 0) = inv;
    v(1, 0) = inv;
    const Matrix u = complete_isometry(v);
    CHECK((u.col(0) - v.col(0)).norm() == 0.0);
    CHECK((u.adjoint() * u - Matrix::Identity(2, 2)).norm() < 1e-12);
    // Second column is (1/sqrt2, -1/sqrt2) up to phase; phase convention
    // makes the first component real positive.
    CHECK(std::abs(u(0, 1) - Complex(inv, 0)) < 1e-12);
    CHECK(std::abs(u(1, 1) - Complex(-inv, 0)) < 1e-12);
}

TEST_CASE("complete_isometry on the trine rows") {
    Matrix v(3, 2);
    for (int i = 0; i < 3; ++i) {
        const double angle = 2.0 * M_PI * i / 3.0;
        v(i, 0) = std::sqrt(2.0 / 3.0) * std::cos(angle);
        v(i, 1) = std::sqrt(2.0 / 3.0) * std::sin(angle);
    }
    const Matrix u = complete_isometry(v);
    CHECK((u.leftCols(2) - v).norm() == 0.0);
    CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("complete_isometry rejects non-orthonormal columns") {
    Matrix v(3, 2);
    v.setOnes();
    CHECK_THROWS_AS(complete_isometry(v), ValidationError);
}

TEST_CASE("unitarity of random completions") {
    for (int trial = 0; trial < 30; ++trial) {
        CounterRng rng(13, static_cast<std::uint64_t>(trial));
        const int d = 1 + static_cast<int>(rng.next_below(16));
        const int n = d + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(64 - d + 1)));
        Matrix g(n, d);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
        }
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix v = Matrix(qr.householderQ()).leftCols(d);
        const Matrix u = complete_isometry(v);
        CHECK((u.adjoint() * u - Matrix::Identity(n, n)).norm() <= 1e-10);
        CHECK((u.leftCols(d) - v).norm() == 0.0);
    }
}

TEST_CASE("heisenberg_weyl structure for k = 1 and k = 2") {
    const auto trivial = heisenberg_weyl(1);
    REQUIRE(trivial.size() == 1);
    CHECK(std::abs(trivial[0](0, 0) - Complex(1, 0)) < 1e-15);

    const auto family = heisenberg_weyl(2);
    REQUIRE(family.size() == 4);
    Matrix z = Matrix::Zero(2, 2), x = Matrix::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    x(0, 1) = 1;
    x(1, 0) = 1;
    CHECK((family[0] - Matrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((family[1] - z).norm() < 1e-12);
    CHECK((family[2] - x).norm() < 1e-12);
    CHECK((family[3] - x * z).norm() < 1e-12);
}

TEST_CASE("heisenberg_weyl twirl averages to the normalized trace") {
    for (int k = 1; k <= 8; ++k) {
        const auto family = heisenberg_weyl(k);
        REQUIRE(static_cast<int>(family.size()) == k * k);
        for (const auto& w : family) {
            CHECK((w * w.adjoint() - Matrix::Identity(k, k)).norm() < 1e-10);
        }
        for (int trial = 0; trial < 100; ++trial) {
            CounterRng rng(17, static_cast<std::uint64_t>(k * 1000 + trial));
            const Matrix b = random_hermitian(k, rng);
            Matrix avg = Matrix::Zero(k, k);
            for (const auto& w : family) avg += w * b * w.adjoint();
            avg /= static_cast<double>(k * k);
            const Matrix expect = (b.trace().real() / k) * Matrix::Identity(k, k);
            CHECK((avg - expect).norm() <= 1e-10);
        }
    }
}

TEST_CASE("projector_onto examples") {
    Vector e0(2);
    e0 << Complex(1, 0), Complex(0, 0);
    Matrix p = projector_onto(2, {e0});
    CHECK(std::abs(p(0, 0) - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(p(1, 1)) < 1e-12);

    Vector mixed(2);
    mixed << Complex(1 / std::sqrt(2.0), 0), Complex(1 / std::sqrt(2.0), 0);
    p = projector_onto(2, {e0, mixed});
    CHECK((p - Matrix::Identity(2, 2)).norm() < 1e-10);

    Vector diag3(3);
    diag3 << Complex(1 / std::sqrt(2.0), 0), Complex(1 / std::sqrt(2.0), 0), Complex(0, 0);
    p = projector_onto(3, {diag3});
    CHECK(std::abs(p(0, 0) - Complex(0.5, 0)) < 1e-12);
    CHECK(std::abs(p(0, 1) - Complex(0.5, 0)) < 1e-12);
    CHECK(std::abs(p(2, 2)) < 1e-15);
    CHECK(rank_hermitian(p) == 1);

    CHECK(projector_onto(3, {}).norm() == 0.0);
}

TEST_CASE("projectors are idempotent and Hermitian") {
    for (int trial = 0; trial < 20; ++trial) {
        CounterRng rng(23, static_cast<std::uint64_t>(trial));
        const int d = 2 + static_cast<int>(rng.next_below(6));
        const int count = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
        std::vector<Vector> vecs;
        for (int i = 0; i < count; ++i) vecs.push_back(haar_vector(d, rng));
        const Matrix p = projector_onto(d, vecs);
        CHECK((p * p - p).norm() < 1e-9);
        CHECK(hermiticity_defect(p) < 1e-10);
    }
}
