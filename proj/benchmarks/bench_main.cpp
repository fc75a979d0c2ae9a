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

#include <benchmark/benchmark.h>

#include "povmsim/finegrain.hpp"
#include "povmsim/naimark.hpp"
#include "povmsim/pipeline.hpp"
#include "povmsim/random.hpp"
#include "povmsim/sampler.hpp"

using namespace povmsim;

namespace {

Povm trine() {
    Povm m;
    m.dim = 2;
    for (int i = 0; i < 3; ++i) {
        const double angle = 2.0 * M_PI * i / 3.0;
        Vector psi(2);
        psi << Complex(std::cos(angle), 0), Complex(std::sin(angle), 0);
        m.effects.push_back((2.0 / 3.0) * psi * psi.adjoint());
    }
    return m;
}

void BM_EigHermitian(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    CounterRng rng(1, static_cast<std::uint64_t>(d));
    const Matrix h = random_hermitian(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_hermitian(h));
    }
    state.SetComplexityN(d);
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void BM_OpNorm(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    CounterRng rng(2, static_cast<std::uint64_t>(d));
    const Matrix h = random_hermitian(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(op_norm(h));
    }
}
BENCHMARK(BM_OpNorm)->Arg(8)->Arg(16);

void BM_HeisenbergWeylTwirl(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto family = heisenberg_weyl(k);
    CounterRng rng(3, static_cast<std::uint64_t>(k));
    const Matrix b = random_hermitian(k, rng);
    for (auto _ : state) {
        Matrix avg = Matrix::Zero(k, k);
        for (const auto& w : family) avg += w * b * w.adjoint();
        benchmark::DoNotOptimize(avg);
    }
}
BENCHMARK(BM_HeisenbergWeylTwirl)->Arg(4)->Arg(8);

void BM_SuccessProbRandomPartition(benchmark::State& state) {
    const int d = 16;
    CounterRng rng(4, 0);
    const Povm m = random_flat_rank_one_povm(d, 2 * d, rng);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const Partition p = random_partition(m.outcomes(), d, seed++);
        benchmark::DoNotOptimize(success_prob(m, p));
    }
}
BENCHMARK(BM_SuccessProbRandomPartition);

void BM_OptimizePartitionGreedy(benchmark::State& state) {
    CounterRng rng(5, 0);
    const Povm m = random_flat_rank_one_povm(4, 8, rng);  // n = 32
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_partition(m, 16, 2, 2000, 9));
    }
}
BENCHMARK(BM_OptimizePartitionGreedy);

void BM_FlatRefine(benchmark::State& state) {
    CounterRng rng(6, 0);
    const Povm m = depolarize(random_full_povm(4, 6, rng), 0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(flat_refine(m, 0.05, 0.1));
    }
}
BENCHMARK(BM_FlatRefine);

void BM_DeficientNaimark(benchmark::State& state) {
    CounterRng rng(7, 0);
    const int d = 8, l = 4;
    const Matrix u = haar_unitary(d, rng);
    Povm n;
    n.dim = d;
    Matrix sum = Matrix::Zero(d, d);
    for (int i = 0; i < l; ++i) {
        n.effects.push_back((0.4 + 0.1 * i) * u.col(i) * u.col(i).adjoint());
        sum += n.effects.back();
    }
    n.effects.push_back(Matrix::Identity(d, d) - sum);
    for (auto _ : state) {
        benchmark::DoNotOptimize(deficient_naimark(n));
    }
}
BENCHMARK(BM_DeficientNaimark);

void BM_CertifyTrine(benchmark::State& state) {
    const Povm t = trine();
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_sp(t, 0.3, 0.5, SearchMode::kExhaustive, 0));
    }
}
BENCHMARK(BM_CertifyTrine);

void BM_SampleMillion(benchmark::State& state) {
    const Povm t = trine();
    const Matrix mixed = Matrix::Identity(2, 2) / 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample(t, mixed, 100000, 3));
    }
}
BENCHMARK(BM_SampleMillion);

}  // namespace

BENCHMARK_MAIN();
