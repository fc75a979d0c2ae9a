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
#include "povmsim/povm.hpp"
#include "povmsim/random.hpp"
#include "povmsim/tolerances.hpp"
#include "test_helpers.hpp"

using namespace povmsim;
using povmsim::testing::trine;

TEST_CASE("validate accepts the computational basis and the trine") {
    CHECK(validate(Povm::computational_basis(2)).ok);
    CHECK(validate(trine()).ok);
}

TEST_CASE("validate flags a non-PSD effect") {
    Povm m;
    m.dim = 2;
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1.5;
    b(0, 0) = -0.5;
    b(1, 1) = 1.0;
    m.effects = {a, b};
    const ValidationReport report = validate(m);
    CHECK_FALSE(report.ok);
    bool saw_psd = false;
    for (const auto& v : report.violations) saw_psd |= v.what.find("PSD") != std::string::npos;
    CHECK(saw_psd);
}

TEST_CASE("born on symmetric inputs") {
    const Matrix mixed = Matrix::Identity(2, 2) / 2.0;
    const Eigen::VectorXd p = born(trine(), mixed);
    for (int i = 0; i < 3; ++i) CHECK(p(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    Matrix zero_state = Matrix::Zero(2, 2);
    zero_state(0, 0) = 1.0;
    const Eigen::VectorXd basis_p = born(Povm::computational_basis(2), zero_state);
    CHECK(basis_p(0) == doctest::Approx(1.0));
    CHECK(basis_p(1) == doctest::Approx(0.0));

    const Eigen::VectorXd trine_p = born(trine(), zero_state);
    CHECK(trine_p(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(trine_p(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(trine_p(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("born rejects invalid states") {
    CHECK_THROWS_AS(born(trine(), Matrix::Identity(2, 2)), ValidationError);
}

TEST_CASE("post_process identity, merge, and coarse-grain") {
    const Povm t = trine();
    const Povm same = post_process(StochasticMap::identity(3), t);
    CHECK(effect_distance(same, t) == 0.0);

    // Merge outcomes 1 and 2: result is (I - M_3, M_3).
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 3);
    q(0, 0) = 1.0;
    q(0, 1) = 1.0;
    q(1, 2) = 1.0;
    const Povm merged = post_process(StochasticMap{q}, t);
    CHECK(validate(merged).ok);
    CHECK((merged.effects[0] - (Matrix::Identity(2, 2) - t.effects[2])).norm() < 1e-12);

    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(1, 3);
    const Povm coarse = post_process(StochasticMap{ones}, t);
    CHECK((coarse.effects[0] - Matrix::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("mix edge cases") {
    const Povm basis = Povm::computational_basis(2);
    const Povm same = mix({1.0}, {basis});
    CHECK(effect_distance(same, basis) == 0.0);

    Povm anti = basis;
    std::swap(anti.effects[0], anti.effects[1]);
    const Povm half = mix({0.5, 0.5}, {basis, anti});
    CHECK((half.effects[0] - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);
    CHECK((half.effects[1] - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);

    // Unequal outcome counts are aligned by zero padding.
    const Povm padded = mix({0.5, 0.5}, {basis, trine()});
    CHECK(padded.outcomes() == 3);
    CHECK(validate(padded).ok);
    CHECK((padded.effects[2] - 0.5 * trine().effects[2]).norm() < 1e-12);
}

TEST_CASE("depolarize endpoints and the explicit half-noise case") {
    const Povm basis = Povm::computational_basis(2);
    CHECK(effect_distance(depolarize(basis, 1.0), basis) == 0.0);

    const Povm fully = depolarize(basis, 0.0);
    CHECK((fully.effects[0] - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);

    const Povm half = depolarize(basis, 0.5);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 0.75;
    expect(1, 1) = 0.25;
    CHECK((half.effects[0] - expect).norm() < 1e-12);
    CHECK_THROWS_AS(depolarize(basis, 1.5), ValidationError);
}

TEST_CASE("closure of classical operations on random POVMs") {
    for (int trial = 0; trial < 25; ++trial) {
        CounterRng rng(31, static_cast<std::uint64_t>(trial));
        const int d = 2 + static_cast<int>(rng.next_below(7));
        const int n = d + static_cast<int>(rng.next_below(9));
        const Povm m = (trial % 2 == 0) ? random_rank_one_povm(d, n, rng)
                                        : random_full_povm(d, n, rng);
        REQUIRE(validate(m).ok);

        const double t = rng.next_double();
        CHECK(validate(depolarize(m, t)).ok);

        Eigen::MatrixXd q(2, n);
        for (int j = 0; j < n; ++j) {
            const double u = rng.next_double();
            q(0, j) = u;
            q(1, j) = 1.0 - u;
        }
        CHECK(validate(post_process(StochasticMap{q}, m)).ok);

        const Povm other = random_full_povm(d, n, rng);
        CHECK(validate(mix({0.3, 0.7}, {m, other})).ok);
    }
}

TEST_CASE("depolarizing algebra: duality, semigroup, commutation") {
    for (int trial = 0; trial < 25; ++trial) {
        CounterRng rng(37, static_cast<std::uint64_t>(trial));
        const int d = 2 + static_cast<int>(rng.next_below(5));
        const int n = 2 + static_cast<int>(rng.next_below(8));
        const Povm m = random_full_povm(d, n, rng);
        const Matrix rho = random_density(d, rng);
        const double s = rng.next_double();
        const double t = rng.next_double();

        // Duality: measuring the noisy POVM equals measuring the noisy state.
        const Eigen::VectorXd lhs = born(depolarize(m, t), rho);
        const Eigen::VectorXd rhs = born(m, depolarize_operator(rho, t));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);

        // Semigroup composition.
        CHECK(effect_distance(depolarize(depolarize(m, s), t), depolarize(m, s * t)) <= 1e-10);

        // Post-processing commutes with the channel.
        Eigen::MatrixXd q(3, n);
        for (int j = 0; j < n; ++j) {
            const double u = rng.next_double(), v = rng.next_double() * (1.0 - u);
            q(0, j) = u;
            q(1, j) = v;
            q(2, j) = 1.0 - u - v;
        }
        const StochasticMap qm{q};
        CHECK(effect_distance(post_process(qm, depolarize(m, t)),
                              depolarize(post_process(qm, m), t)) <= 1e-10);
    }
}

TEST_CASE("is_projective") {
    CHECK(is_projective(Povm::computational_basis(3)));
    CHECK_FALSE(is_projective(trine()));

    // (P_W, P_Wperp) for a random subspace.
    CounterRng rng(41, 0);
    const Vector v = haar_vector(3, rng);
    Povm dichotomy;
    dichotomy.dim = 3;
    dichotomy.effects.push_back(v * v.adjoint());
    dichotomy.effects.push_back(Matrix::Identity(3, 3) - v * v.adjoint());
    CHECK(is_projective(dichotomy));

    // Zero effects are allowed.
    dichotomy.effects.push_back(Matrix::Zero(3, 3));
    CHECK(is_projective(dichotomy));
}

TEST_CASE("effect_distance") {
    const Povm basis = Povm::computational_basis(2);
    CHECK(effect_distance(basis, basis) == 0.0);
    Povm anti = basis;
    std::swap(anti.effects[0], anti.effects[1]);
    CHECK(effect_distance(basis, anti) == doctest::Approx(std::sqrt(2.0)));
    CHECK(effect_distance(basis, depolarize(basis, 1.0)) == 0.0);
}

TEST_CASE("compact strips zero effects and keeps the index map") {
    Povm padded = Povm::computational_basis(2);
    padded.effects.insert(padded.effects.begin() + 1, Matrix::Zero(2, 2));
    const CompactResult res = compact(padded);
    CHECK(res.povm.outcomes() == 2);
    CHECK(res.kept == std::vector<int>{0, 2});
    CHECK(validate(res.povm).ok);
}

TEST_CASE("verify_sp_witness accepts the trivial witness and rejects tampering") {
    const Povm basis = Povm::computational_basis(3);
    SpWitness w;
    w.target_dim = 3;
    w.components.push_back({1.0, basis, StochasticMap::identity(3)});
    const WitnessReport ok = verify_sp_witness(w, basis);
    CHECK(ok.pass);
    CHECK(ok.max_deviation == doctest::Approx(0.0));

    SpWitness tampered = w;
    tampered.components[0].weight += 0.01;
    CHECK_FALSE(verify_sp_witness(tampered, basis).pass);

    // Non-projective component measurement must be flagged.
    SpWitness wrong;
    wrong.target_dim = 2;
    wrong.components.push_back({1.0, trine(), StochasticMap::identity(3)});
    CHECK_FALSE(verify_sp_witness(wrong, trine()).pass);
}

TEST_CASE("witness pruning renormalizes") {
    const Povm basis = Povm::computational_basis(2);
    SpWitness w;
    w.target_dim = 2;
    w.components.push_back({0.5, basis, StochasticMap::identity(2)});
    w.components.push_back({1e-16, basis, StochasticMap::identity(2)});
    w.components.push_back({0.5, basis, StochasticMap::identity(2)});
    w.prune();
    CHECK(w.components.size() == 2);
    CHECK(w.components[0].weight == doctest::Approx(0.5));
    CHECK(verify_sp_witness(w, basis).pass);
}
