// Copyright 2026 The eigenctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eigenctl/statevec.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "eigenctl/errors.hpp"

namespace eigenctl {

namespace {

std::atomic<std::uint64_t> g_renormalizations{0};

}  // namespace

QuantumState::QuantumState(Amplitudes amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw ValidationError("quantum state must have dimension >= 1");
    }
    if (!amplitudes_.allFinite()) {
        throw ValidationError("quantum state has non-finite amplitudes");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm * norm - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "quantum state is not normalized: sum |a_i|^2 = " << norm * norm;
        throw ValidationError(msg.str());
    }
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t label) {
    if (dim < 1 || label < 1 || label > dim) {
        throw DomainError("basis label out of range");
    }
    Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
    a(static_cast<Eigen::Index>(label - 1)) = 1.0;
    return QuantumState(std::move(a), Unchecked{});
}

QuantumState QuantumState::normalized(Amplitudes amplitudes) {
    const double norm = amplitudes.norm();
    if (amplitudes.size() < 1 || !(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return QuantumState(std::move(amplitudes), Unchecked{});
}

QuantumState QuantumState::from_evolution(Amplitudes amplitudes) {
    const double norm = amplitudes.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
        throw ValidationError("evolution produced a degenerate state");
    }
    if (std::abs(norm - 1.0) > kRenormalizeThreshold) {
        amplitudes /= norm;
        g_renormalizations.fetch_add(1, std::memory_order_relaxed);
    }
    return QuantumState(std::move(amplitudes), Unchecked{});
}

Complex QuantumState::amplitude(std::size_t label) const {
    if (label < 1 || label > dim()) {
        throw DomainError("basis label out of range");
    }
    return amplitudes_(static_cast<Eigen::Index>(label - 1));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::uint64_t renormalization_count() { return g_renormalizations.load(std::memory_order_relaxed); }

std::size_t num_qubits(std::size_t n) {
    if (n < 2) {
        throw DomainError("qubit embedding needs n >= 2 levels");
    }
    // int(log2(n - 1)) computed exactly on integers.
    std::size_t m = n - 1;
    std::size_t floor_log2 = 0;
    while (m >>= 1) {
        ++floor_log2;
    }
    return floor_log2 + 1;
}

HilbertEmbedding HilbertEmbedding::for_levels(std::size_t n) {
    const std::size_t qubits = num_qubits(n);
    return {n, qubits, std::size_t{1} << qubits};
}

QuantumState embed(const QuantumState& physical) {
    const auto emb = HilbertEmbedding::for_levels(physical.dim());
    Amplitudes padded = Amplitudes::Zero(static_cast<Eigen::Index>(emb.padded_dim));
    padded.head(physical.amplitudes().size()) = physical.amplitudes();
    return QuantumState(std::move(padded));
}

QuantumState project(const QuantumState& padded, std::size_t n, double leak_tol) {
    if (n < 1 || n > padded.dim()) {
        throw DomainError("projection size out of range");
    }
    const auto& a = padded.amplitudes();
    const auto n_idx = static_cast<Eigen::Index>(n);
    for (Eigen::Index i = n_idx; i < a.size(); ++i) {
        if (std::abs(a(i)) > leak_tol) {
            std::ostringstream msg;
            msg << "amplitude " << std::abs(a(i)) << " on padding slot |" << (i + 1)
                << "> outside the " << n << "-level physical subspace";
            throw LeakageError(msg.str());
        }
    }
    return QuantumState::normalized(a.head(n_idx));
}

std::vector<double> born_probabilities(const QuantumState& state) {
    const auto& a = state.amplitudes();
    std::vector<double> p(static_cast<std::size_t>(a.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(a(i));
    }
    return p;
}

Measurement measure(const QuantumState& state, Rng& rng) {
    const auto p = born_probabilities(state);
    double total = 0.0;
    for (double x : p) total += x;
    std::uniform_real_distribution<double> uniform(0.0, total);
    const double r = uniform(rng);

    std::size_t outcome = p.size();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        cumulative += p[i];
        if (r < cumulative && p[i] > 0.0) {
            outcome = i + 1;
            break;
        }
    }
    // r landed on the rounding tail: take the last outcome with weight.
    if (outcome == p.size() && p.back() == 0.0) {
        for (std::size_t i = p.size(); i-- > 0;) {
            if (p[i] > 0.0) {
                outcome = i + 1;
                break;
            }
        }
    }
    return {outcome, QuantumState::basis(state.dim(), outcome)};
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.dim() != b.dim()) {
        throw DomainError("fidelity of states with different dimensions");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace eigenctl
