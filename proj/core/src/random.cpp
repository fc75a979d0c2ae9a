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

#include "povmsim/random.hpp"

#include <cmath>

#include "povmsim/errors.hpp"

namespace povmsim {

namespace {

// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix2(seed, stream)) {}

std::uint64_t CounterRng::next_u64() { return mix2(key_, counter_++); }

double CounterRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
    if (n == 0) throw ValidationError("next_below(0)");
    // Rejection sampling on the top bits keeps the draw exactly uniform.
    const std::uint64_t threshold = (~std::uint64_t{0} - n + 1) % n;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

double CounterRng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t index) {
    return mix2(seed + 0x5851f42d4c957f2dULL, index);
}

Vector haar_vector(int d, CounterRng& rng) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
    v /= v.norm();
    return v;
}

Matrix haar_unitary(int d, CounterRng& rng) {
    Matrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) z(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double m = std::abs(rjj);
        q.col(j) *= (m > 0.0) ? rjj / m : Complex(1.0, 0.0);
    }
    return q;
}

Matrix random_density(int d, CounterRng& rng) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

Matrix random_hermitian(int d, CounterRng& rng) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
    return (g + g.adjoint()) / 2.0;
}

namespace {

// S^{-1/2} for a positive definite frame operator.
Matrix inverse_sqrt(const Matrix& s) {
    const Spectrum spec = eig_hermitian(s);
    if (spec.eigenvalues(0) <= 1e-12 * spec.eigenvalues(spec.eigenvalues.size() - 1)) {
        throw ValidationError("frame operator is singular");
    }
    Matrix out = Matrix::Zero(s.rows(), s.cols());
    for (int k = 0; k < spec.eigenvalues.size(); ++k) {
        out += (1.0 / std::sqrt(spec.eigenvalues(k))) * spec.eigenvectors.col(k) *
               spec.eigenvectors.col(k).adjoint();
    }
    return out;
}

}  // namespace

Povm random_rank_one_povm(int d, int n, CounterRng& rng) {
    if (n < d) throw ValidationError("rank-one POVM needs at least d outcomes");
    std::vector<Vector> vecs;
    Matrix frame = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        Vector g(d);
        for (int j = 0; j < d; ++j) g(j) = Complex(rng.next_gaussian(), rng.next_gaussian());
        frame += g * g.adjoint();
        vecs.push_back(std::move(g));
    }
    const Matrix correction = inverse_sqrt(frame);
    Povm m;
    m.dim = d;
    for (const auto& g : vecs) {
        const Vector v = correction * g;
        m.effects.push_back(v * v.adjoint());
    }
    return m;
}

Povm random_full_povm(int d, int n, CounterRng& rng) {
    std::vector<Matrix> raw;
    Matrix total = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        Matrix g(d, d);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
        }
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    const Matrix correction = inverse_sqrt(total);
    Povm m;
    m.dim = d;
    for (const auto& a : raw) m.effects.push_back(correction * a * correction);
    return m;
}

Povm random_flat_rank_one_povm(int d, int bases, CounterRng& rng) {
    Povm m;
    m.dim = d;
    const double alpha = 1.0 / bases;
    for (int b = 0; b < bases; ++b) {
        const Matrix u = haar_unitary(d, rng);
        for (int j = 0; j < d; ++j) {
            m.effects.push_back(alpha * u.col(j) * u.col(j).adjoint());
        }
    }
    return m;
}

}  // namespace povmsim
