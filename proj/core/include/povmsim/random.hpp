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

#ifndef POVMSIM_RANDOM_HPP
#define POVMSIM_RANDOM_HPP

#include <cstdint>

#include "povmsim/linalg.hpp"
#include "povmsim/povm.hpp"

namespace povmsim {

/// Counter-based generator: every draw is a hash of (seed, stream, counter),
/// so independent streams can be derived for parallel trials or per-shot
/// sharding without sequence coupling. Bit-stable across platforms.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 significant bits.
    double next_double();
    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double next_gaussian();

    /// Deterministic sub-seed for trial/shot sharding.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-random unit vector on C^d.
Vector haar_vector(int d, CounterRng& rng);

/// Haar-distributed unitary on C^d (QR of a Ginibre matrix with the phase
/// correction that makes the distribution exactly invariant).
Matrix haar_unitary(int d, CounterRng& rng);

/// Random density matrix (normalized Ginibre square).
Matrix random_density(int d, CounterRng& rng);

/// Random Hermitian matrix with entries of order one.
Matrix random_hermitian(int d, CounterRng& rng);

/// Rank-one POVM from n Ginibre vectors, frame-corrected so the effects sum
/// to the identity exactly.
Povm random_rank_one_povm(int d, int n, CounterRng& rng);

/// Full-rank POVM from n Ginibre squares, normalized the same way.
Povm random_full_povm(int d, int n, CounterRng& rng);

/// Exactly flat rank-one POVM: the union of `bases` Haar-random orthonormal
/// bases, every magnitude equal to 1/bases. Outcome count is bases * d.
Povm random_flat_rank_one_povm(int d, int bases, CounterRng& rng);

}  // namespace povmsim

#endif  // POVMSIM_RANDOM_HPP
