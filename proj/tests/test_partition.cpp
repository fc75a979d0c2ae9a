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

#include <algorithm>

#include "povmsim/errors.hpp"
#include "povmsim/partition.hpp"
#include "povmsim/random.hpp"
#include "test_helpers.hpp"

using namespace povmsim;
using povmsim::testing::trine;

TEST_CASE("ensemble on a trivial partition is the measurement itself") {
    const Povm basis = Povm::computational_basis(2);
    const SimulationEnsemble e = build_ensemble(basis, Partition::trivial(2));
    CHECK(e.q == doctest::Approx(1.0));
    REQUIRE(e.subs.size() == 1);
    CHECK(e.subs[0].effects.back().norm() < 1e-12);  // no failure mass
    CHECK(effect_distance(e.full_sub(0),
                          [&] {
                              Povm padded = basis;
                              padded.effects.push_back(Matrix::Zero(2, 2));
                              return padded;
                          }()) < 1e-12);
}

TEST_CASE("ensemble on singletons of the basis") {
    const Povm basis = Povm::computational_basis(2);
    const SimulationEnsemble e = build_ensemble(basis, Partition::singletons(2));
    CHECK(e.q == doctest::Approx(0.5));
    for (double l : e.lambdas) CHECK(l == doctest::Approx(1.0));
    const EnsembleCheck check = verify_ensemble(e, basis);
    CHECK(check.max_effect_deviation <= 1e-12);
    CHECK(check.fail_deviation <= 1e-12);
}

TEST_CASE("trine ensembles match the hand-computed norms") {
    const Povm t = trine();
    // Hand oracle: ||I - M_3|| has eigenvalues {1, 1/3}; each single effect
    // has norm 2/3.
    Partition pair;
    pair.n = 3;
    pair.subsets = {{0, 1}, {2}};
    const SimulationEnsemble e = build_ensemble(t, pair);
    CHECK(e.lambdas[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.lambdas[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(e.q == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(success_prob(t, pair) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(success_prob(t, Partition::singletons(3)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(success_prob(t, Partition::trivial(3)) == doctest::Approx(1.0).epsilon(1e-12));

    const EnsembleCheck check = verify_ensemble(e, t);
    CHECK(check.max_effect_deviation <= 1e-12);
    CHECK(check.fail_deviation <= 1e-12);
    for (const auto& sub : e.subs) CHECK(validate(sub).ok);
}

TEST_CASE("build_ensemble rejects blocks without effect mass") {
    Povm padded = Povm::computational_basis(2);
    padded.effects.push_back(Matrix::Zero(2, 2));
    Partition s;
    s.n = 3;
    s.subsets = {{0, 1}, {2}};
    CHECK_THROWS_AS(build_ensemble(padded, s), ValidationError);
}

TEST_CASE("postselection identity and probability ranges on random instances") {
    for (int trial = 0; trial < 20; ++trial) {
        CounterRng rng(67, static_cast<std::uint64_t>(trial));
        const int d = 2 + static_cast<int>(rng.next_below(7));
        const int n = d + static_cast<int>(rng.next_below(12));
        const Povm m = random_rank_one_povm(d, n, rng);
        const int r = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const Partition s = random_partition(n, r, rng.next_u64());
        const SimulationEnsemble e = build_ensemble(m, s);

        const EnsembleCheck check = verify_ensemble(e, m);
        CHECK(check.max_effect_deviation <= 1e-9);
        CHECK(check.fail_deviation <= 1e-9);

        CHECK(e.q > 0.0);
        CHECK(e.q <= 1.0 + 1e-12);
        for (double l : e.lambdas) {
            CHECK(l > 0.0);
            CHECK(l <= 1.0 + 1e-12);  // partial effect sums stay below identity
        }

        // Any single block's norm dominates the norms of its sub-blocks.
        for (const auto& subset : s.subsets) {
            if (subset.size() < 2) continue;
            Matrix whole = Matrix::Zero(d, d);
            for (int i : subset) whole += m.effects[i];
            Matrix part = Matrix::Zero(d, d);
            for (std::size_t k = 0; k + 1 < subset.size(); ++k) part += m.effects[subset[k]];
            CHECK(op_norm(part) <= op_norm(whole) + 1e-12);
        }
    }
}

TEST_CASE("ks_bound_check passes the trivial and flat cases") {
    const Povm t = trine();
    // r = 1: rhs = (1 + sqrt(eps))^2 >= 1 >= lambda.
    const KsReport whole = ks_bound_check(t, Partition::trivial(3), 2.0 / 3.0);
    CHECK(whole.pass);

    // Flat POVM with alpha = d/n, singleton partition: lhs = d/n,
    // rhs = (1/n)(1 + sqrt(d))^2, and d <= (1 + sqrt(d))^2 always.
    CounterRng rng(71, 0);
    const Povm flat = random_flat_rank_one_povm(3, 4, rng);
    const KsReport singles = ks_bound_check(flat, Partition::singletons(12), 0.25);
    CHECK(singles.pass);
    for (const auto& row : singles.rows) {
        CHECK(row.lhs == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(row.rhs == doctest::Approx((1.0 / 12.0) * std::pow(1.0 + std::sqrt(3.0), 2.0)));
    }
}

TEST_CASE("ks_bound_check flags an overloaded block") {
    // Small eps makes the r=2 bound sharp: rhs = 0.5 (1 + sqrt(1/16))^2 =
    // 0.78125, while the block holding all but one outcome has norm 1.
    CounterRng rng(73, 1);
    const Povm flat = random_flat_rank_one_povm(2, 32, rng);  // 64 outcomes, alpha = 1/32
    Partition lopsided;
    lopsided.n = 64;
    lopsided.subsets.resize(2);
    for (int i = 0; i < 63; ++i) lopsided.subsets[0].push_back(i);
    lopsided.subsets[1].push_back(63);
    const KsReport report = ks_bound_check(flat, lopsided, 1.0 / 32.0);
    CHECK(report.rhs == doctest::Approx(0.5 * std::pow(1.0 + std::sqrt(2.0 / 32.0), 2.0)));
    CHECK(report.rows[0].lhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(report.rows[0].pass);
    CHECK_FALSE(report.pass);
    CHECK(report.rows[1].pass);
}

TEST_CASE("ks_bound_check validates its preconditions") {
    Povm m;
    m.dim = 2;
    m.effects = {Matrix::Identity(2, 2) / 2.0, Matrix::Identity(2, 2) / 2.0};
    CHECK_THROWS_AS(ks_bound_check(m, Partition::singletons(2), 0.5), ValidationError);
    CHECK_THROWS_AS(ks_bound_check(trine(), Partition::singletons(3), 0.1), ValidationError);
}

TEST_CASE("predicted_bounds closed forms") {
    const PredictedBounds five = predicted_bounds(0.1, 0.1, 5.0, 7);
    CHECK(five.q_lower == doctest::Approx(1.0 / std::pow(1.0 + std::sqrt(5.0), 2.0)));
    CHECK(five.q_lower == doctest::Approx(0.0955).epsilon(1e-3));
    CHECK(five.size_upper == doctest::Approx(7 * std::pow(1.0 + 1.0 / std::sqrt(5.0), 2.0)));
    CHECK(five.size_upper == doctest::Approx(7 * 2.0944).epsilon(1e-4));

    const PredictedBounds one = predicted_bounds(0.2, 0.2, 1.0, 5);
    CHECK(one.q_lower == doctest::Approx(0.25));
    CHECK(one.size_upper == doctest::Approx(20.0));

    // Large C limit: q -> 0, size -> d * ratio.
    const PredictedBounds big = predicted_bounds(0.3, 0.1, 1e12, 4);
    CHECK(big.q_lower < 1e-11);
    CHECK(big.size_upper == doctest::Approx(12.0).epsilon(1e-5));
}

TEST_CASE("improved_bound reproduces the quoted constants") {
    CHECK(improved_bound(5.0, 0.5, 1.0) == doctest::Approx(0.068).epsilon(5e-3));
    CHECK(improved_bound(5.0, 0.5, 1.0) ==
          doctest::Approx(1.0 / (std::pow(1.0 + std::sqrt(5.0), 2.0) * 1.4)));
    CHECK(improved_bound(1.0, 1.0, 1.0) == doctest::Approx(0.125));
}

TEST_CASE("random_partition basics") {
    const Partition whole = random_partition(4, 1, 99);
    CHECK(whole.blocks() == 1);
    CHECK(whole.subsets[0] == std::vector<int>{0, 1, 2, 3});

    const Partition a = random_partition(50, 7, 1234);
    const Partition b = random_partition(50, 7, 1234);
    REQUIRE(a.blocks() == b.blocks());
    for (int i = 0; i < a.blocks(); ++i) CHECK(a.subsets[i] == b.subsets[i]);
    a.require_valid();
}

TEST_CASE("random_partition block sizes concentrate") {
    // n = 10^4, r = 100: every block within [60, 140] for at least 99% of seeds.
    int good = 0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) {
        const Partition p = random_partition(10000, 100, static_cast<std::uint64_t>(s));
        bool ok = p.blocks() == 100;
        for (const auto& block : p.subsets) {
            ok = ok && block.size() >= 60 && block.size() <= 140;
        }
        good += ok ? 1 : 0;
    }
    CHECK(good >= 990);
}

TEST_CASE("split_blocks and improved_subpartition") {
    const Povm t = trine();
    SUBCASE("already small blocks are untouched") {
        const Partition s = Partition::singletons(3);
        const SubpartitionResult res = improved_subpartition(t, s, 0.5, 2);
        CHECK(res.partition.blocks() == 3);
        CHECK(res.q == doctest::Approx(success_prob(t, s)));
    }
    SUBCASE("oversized blocks are split to the cap") {
        const SubpartitionResult res = improved_subpartition(t, Partition::trivial(3), 0.5, 2);
        CHECK(res.size_cap == 1);
        CHECK(res.partition.blocks() == 3);
        res.partition.require_valid();
    }
}

TEST_CASE("improved_subpartition meets its bound when the norm bound holds") {
    for (int trial = 0; trial < 10; ++trial) {
        CounterRng rng(79, static_cast<std::uint64_t>(trial));
        const int d = 4 + 2 * static_cast<int>(rng.next_below(3));  // even dims
        const int bases = 2 + static_cast<int>(rng.next_below(3));
        const Povm flat = random_flat_rank_one_povm(d, bases, rng);
        const int n = flat.outcomes();
        const double eps = 1.0 / bases;
        const int r = std::max(1, n / (2 * d));
        const Partition s = random_partition(n, r, rng.next_u64());
        if (!ks_bound_check(flat, s, eps).pass) continue;
        const SubpartitionResult res = improved_subpartition(flat, s, 0.5, d);
        CHECK(res.q >= res.bound - 1e-12);
        CHECK(res.partition.max_block() <= res.size_cap);
    }
}

TEST_CASE("optimize_partition finds the best trine pairing") {
    const Povm t = trine();
    // Exhaustive oracle over the three feasible 2-block partitions with
    // blocks of size <= 2: every pairing {i,j}+{k} has q = 1/(1 + 2/3) = 3/5.
    const Partition best = optimize_partition(t, 2, 2, 0, 7);
    CHECK(success_prob(t, best) == doctest::Approx(0.6).epsilon(1e-12));

    const Partition single = optimize_partition(Povm::computational_basis(4), 1, 4, 0, 0);
    CHECK(success_prob(Povm::computational_basis(4), single) == doctest::Approx(1.0));
}

TEST_CASE("optimize_partition respects constraints and beats random medians") {
    CounterRng rng(83, 0);
    const Povm m = random_flat_rank_one_povm(4, 2, rng);  // d=4, n=8
    const int r = 4, cap = 2;
    const Partition found = optimize_partition(m, r, cap, 0, 5);
    found.require_valid();
    CHECK(found.max_block() <= cap);
    const double q_found = success_prob(m, found);

    std::vector<double> random_qs;
    for (int s = 0; s < 50; ++s) {
        const Partition p = split_blocks(random_partition(8, r, static_cast<std::uint64_t>(s)), cap);
        random_qs.push_back(success_prob(m, p));
    }
    std::sort(random_qs.begin(), random_qs.end());
    CHECK(q_found >= random_qs[25] - 1e-12);
}

TEST_CASE("optimize_partition greedy handles larger instances deterministically") {
    CounterRng rng(89, 0);
    const Povm m = random_flat_rank_one_povm(4, 5, rng);  // n = 20 > exhaustive cutoff
    const Partition a = optimize_partition(m, 10, 2, 500, 42);
    const Partition b = optimize_partition(m, 10, 2, 500, 42);
    REQUIRE(a.blocks() == b.blocks());
    for (int i = 0; i < a.blocks(); ++i) CHECK(a.subsets[i] == b.subsets[i]);
    CHECK(a.max_block() <= 2);
    a.require_valid();
}

TEST_CASE("optimize_partition rejects infeasible constraints") {
    CHECK_THROWS_AS(optimize_partition(trine(), 1, 2, 0, 0), InfeasibleError);
}
