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
#include "povmsim/naimark.hpp"
#include "povmsim/partition.hpp"
#include "povmsim/random.hpp"
#include "test_helpers.hpp"

using namespace povmsim;
using povmsim::testing::nearly_projective;
using povmsim::testing::random_nearly_projective;
using povmsim::testing::trine;

TEST_CASE("dilate_rank_one of a basis measurement is the measurement itself") {
    const Povm basis = Povm::computational_basis(3);
    const NaimarkDilation dil = dilate_rank_one(basis, 3);
    CHECK(dil.ambient_dim == 3);
    CHECK(effect_distance(dil.projective, basis) < 1e-12);
    CHECK(verify_dilation(dil, basis, 20, 5) <= 1e-11);
}

TEST_CASE("dilate_rank_one of the scalar coin POVM") {
    Povm coin;
    coin.dim = 1;
    coin.effects = {Matrix::Identity(1, 1) * 0.5, Matrix::Identity(1, 1) * 0.5};
    const NaimarkDilation dil = dilate_rank_one(coin, 2);
    REQUIRE(dil.projective.outcomes() == 2);
    CHECK(is_projective(dil.projective));
    // Measurement vectors (1/sqrt2, +-1/sqrt2) up to phase.
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(dil.projective.effects[0](0, 1)) - 0.5) < 1e-12);
    CHECK(std::abs(dil.projective.effects[0](0, 0) - Complex(inv * inv, 0)) < 1e-12);
    CHECK(verify_dilation(dil, coin, 5, 3) <= 1e-12);
}

TEST_CASE("dilate_rank_one of the trine reproduces Born statistics") {
    const NaimarkDilation dil = dilate_rank_one(trine(), 3);
    CHECK(is_projective(dil.projective));
    CHECK(verify_dilation(dil, trine(), 100, 11) <= 1e-11);
}

TEST_CASE("dilate_rank_one pads leftover ambient dimensions") {
    const NaimarkDilation dil = dilate_rank_one(trine(), 5);
    CHECK(dil.projective.outcomes() == 4);  // extra projector merged into outcome 3
    CHECK(is_projective(dil.projective));
    CHECK(validate(dil.projective).ok);
    CHECK(verify_dilation(dil, trine(), 50, 13) <= 1e-11);
}

TEST_CASE("dilate_rank_one validates input") {
    CHECK_THROWS_AS(dilate_rank_one(trine(), 2), InfeasibleError);
    Povm full;
    full.dim = 2;
    full.effects = {Matrix::Identity(2, 2) / 2.0, Matrix::Identity(2, 2) / 2.0};
    CHECK_THROWS_AS(dilate_rank_one(full, 4), ValidationError);
}

TEST_CASE("dilate_with_ancilla k=1 on a basis is trivial") {
    const Povm basis = Povm::computational_basis(4);
    const NaimarkDilation dil = dilate_with_ancilla(basis, 1);
    CHECK(dil.ambient_dim == 4);
    CHECK(effect_distance(dil.projective, basis) < 1e-12);
}

TEST_CASE("dilate_with_ancilla of the trine on one qubit ancilla") {
    const NaimarkDilation dil = dilate_with_ancilla(trine(), 2);
    CHECK(dil.ambient_dim == 4);
    CHECK(dil.layout == DilationLayout::kTensor);
    CHECK(is_projective(dil.projective));
    CHECK(validate(dil.projective).ok);
    CHECK(verify_dilation(dil, trine(), 100, 17) <= 1e-10);
}

TEST_CASE("dilate_with_ancilla handles ensemble blocks with a full-rank remainder") {
    // A block measurement with d rank-one effects plus the failure effect
    // fits into C^{2d}.
    CounterRng rng(101, 0);
    const int d = 3;
    const Povm m = random_rank_one_povm(d, 3 * d, rng);
    Partition s;
    s.n = 3 * d;
    s.subsets.resize(3);
    for (int i = 0; i < 3 * d; ++i) s.subsets[static_cast<std::size_t>(i / d)].push_back(i);
    const SimulationEnsemble e = build_ensemble(m, s);
    for (const auto& sub : e.subs) {
        const NaimarkDilation dil = dilate_with_ancilla(sub, 2);
        CHECK(verify_dilation(dil, sub, 25, 19) <= 1e-10);
    }
}

TEST_CASE("dilate_with_ancilla rejects rank overflow") {
    Povm wide;
    wide.dim = 2;
    for (int i = 0; i < 5; ++i) wide.effects.push_back(Matrix::Identity(2, 2) / 5.0);
    CHECK_THROWS_AS(dilate_with_ancilla(wide, 2), InfeasibleError);
}

TEST_CASE("twirl_average closed form") {
    Vector e0(2);
    e0 << Complex(1, 0), Complex(0, 0);
    CHECK((twirl_average(Matrix::Identity(2, 2), {e0}) - Matrix::Identity(2, 2)).norm() < 1e-12);

    Matrix offdiag = Matrix::Zero(2, 2);
    offdiag(0, 1) = 1.0;
    offdiag(1, 0) = 1.0;
    CHECK(twirl_average(offdiag, {e0}).norm() < 1e-12);

    Vector e0_3(3);
    e0_3 << Complex(1, 0), Complex(0, 0), Complex(0, 0);
    Matrix e11 = Matrix::Zero(3, 3);
    e11(1, 1) = 1.0;
    const Matrix avg = twirl_average(e11, {e0_3});
    Matrix expect = Matrix::Zero(3, 3);
    expect(1, 1) = 0.5;
    expect(2, 2) = 0.5;
    CHECK((avg - expect).norm() < 1e-12);

    CHECK_THROWS_AS(twirl_average(Matrix::Identity(2, 2), {e0, offdiag.col(0)}), ValidationError);
}

TEST_CASE("deficient_naimark on the single half-magnitude qubit effect") {
    Vector e0(2);
    e0 << Complex(1, 0), Complex(0, 0);
    const Povm n = nearly_projective(2, {0.5}, {e0});
    const DeficientNaimarkResult res = deficient_naimark(n);

    // F_1 = F_2 = I/2.
    CHECK((res.f.effects[0] - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);
    CHECK((res.f.effects[1] - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);
    CHECK(res.wperp_dim == 1);
    CHECK(res.witness.components.size() == 2);  // phases only, trivial family on C^1
    CHECK(verify_sp_witness(res.witness, res.f, 1e-9).pass);
}

TEST_CASE("deficient_naimark with unit magnitudes reproduces the input exactly") {
    CounterRng rng(103, 2);
    const Matrix u = haar_unitary(4, rng);
    const Povm n = nearly_projective(4, {1.0, 1.0}, {u.col(0), u.col(1)});
    const DeficientNaimarkResult res = deficient_naimark(n);
    CHECK(effect_distance(res.f, n) <= 1e-10);
    CHECK(verify_sp_witness(res.witness, res.f, 1e-9).pass);
    // No Wperp leakage: every component measurement has the same first-l
    // effects.
    for (const auto& comp : res.witness.components) {
        CHECK((comp.projective.effects[0] - res.pw.effects[0]).norm() < 1e-10);
        CHECK((comp.projective.effects[1] - res.pw.effects[1]).norm() < 1e-10);
    }
}

TEST_CASE("deficient_naimark on a documented 4-dimensional instance") {
    CounterRng rng(107, 3);
    std::vector<Vector> states = {haar_vector(4, rng), haar_vector(4, rng)};
    const Povm n = nearly_projective(4, {0.6, 0.5}, states);
    REQUIRE(validate(n).ok);
    const DeficientNaimarkResult res = deficient_naimark(n);
    CHECK(res.witness.components.size() == 2u * static_cast<std::size_t>(res.wperp_dim) *
                                                static_cast<std::size_t>(res.wperp_dim));
    const WitnessReport report = verify_sp_witness(res.witness, res.f, 1e-9);
    CHECK(report.pass);
}

TEST_CASE("deficient_naimark invariants on random instances") {
    for (int trial = 0; trial < 25; ++trial) {
        CounterRng rng(109, static_cast<std::uint64_t>(trial));
        const int d = 2 + static_cast<int>(rng.next_below(9));  // up to 10
        const int l = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d / 2)));
        const Povm n = random_nearly_projective(d, l, 0.3, 1.0, rng);
        REQUIRE(validate(n).ok);
        const DeficientNaimarkResult res = deficient_naimark(n);
        const int w = res.w_dim;
        const int kp = res.wperp_dim;
        REQUIRE(w + kp == d);

        // Inner measurement is projective and complete.
        CHECK(is_projective(res.pw));
        CHECK(validate(res.pw).ok);

        // Compression identity and the trace normalizations.
        std::vector<Vector> states;
        for (int i = 0; i < l; ++i) {
            const Spectrum spec = eig_hermitian(n.effects[i]);
            states.push_back(spec.eigenvectors.col(d - 1));
        }
        const Matrix proj_w = projector_onto(d, states);
        const Matrix proj_perp = Matrix::Identity(d, d) - proj_w;
        for (int i = 0; i < l; ++i) {
            const Matrix compressed = proj_w * res.pw.effects[i] * proj_w;
            CHECK((compressed - n.effects[i]).norm() <= 1e-10);
            const double on_w = (res.pw.effects[i] * proj_w).trace().real();
            const double off_w = (res.pw.effects[i] * proj_perp).trace().real();
            CHECK(on_w == doctest::Approx(res.magnitudes[static_cast<std::size_t>(i)]).epsilon(1e-10));
            CHECK(off_w ==
                  doctest::Approx(1.0 - res.magnitudes[static_cast<std::size_t>(i)]).epsilon(1e-10));
        }

        // Finite average equals the closed-form twirl for every effect.
        for (int i = 0; i <= l; ++i) {
            Matrix avg = Matrix::Zero(d, d);
            for (const auto& comp : res.witness.components) {
                avg += comp.weight * comp.projective.effects[i];
            }
            const Matrix expect = proj_w * res.pw.effects[i] * proj_w +
                                  ((res.pw.effects[i] * proj_perp).trace().real() / kp) * proj_perp;
            CHECK((avg - expect).norm() <= 1e-10);
        }

        // Last effect of F: closed form and positivity.
        Matrix sum_rank_one = Matrix::Zero(d, d);
        double leak = 0.0;
        for (int i = 0; i < l; ++i) {
            sum_rank_one += n.effects[i];
            leak += 1.0 - res.magnitudes[static_cast<std::size_t>(i)];
        }
        const Matrix expected_last = proj_w - sum_rank_one + (1.0 - leak / kp) * proj_perp;
        CHECK((res.f.effects[l] - expected_last).norm() <= 1e-10);
        CHECK(eigvals_hermitian(res.f.effects[l])(0) >= -1e-10);

        CHECK(validate(res.f).ok);
        CHECK(verify_sp_witness(res.witness, res.f, 1e-9).pass);
    }
}

TEST_CASE("deficient_naimark rejects l above d/2") {
    CounterRng rng(113, 0);
    const Matrix u = haar_unitary(3, rng);
    const Povm n = nearly_projective(3, {0.5, 0.5}, {u.col(0), u.col(1)});
    CHECK_THROWS_AS(deficient_naimark(n), ValidationError);
}
