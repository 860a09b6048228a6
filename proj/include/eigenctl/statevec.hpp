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

#pragma once

/**
 * @file
 * State vectors over n-level and 2^N-dimensional Hilbert spaces, the
 * zero-padded qubit embedding, Born-rule measurement and collapse.
 *
 * Basis labels exposed by the public API are 1-based (|1>..|dim>); the
 * underlying amplitude vector is indexed from 0.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace eigenctl {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Tolerance on |1 - ||psi||| accepted for user-supplied states.
inline constexpr double kNormTolerance = 1e-10;
/// Drift after a chain of unitary operations beyond which a state is
/// explicitly renormalized (and the diagnostic counter bumped).
inline constexpr double kRenormalizeThreshold = 1e-8;

class QuantumState {
 public:
    /// Validates normalization within kNormTolerance; throws ValidationError.
    explicit QuantumState(Amplitudes amplitudes);

    /// |label> in a dim-dimensional space, label 1-based.
    static QuantumState basis(std::size_t dim, std::size_t label);

    /// Scales an arbitrary non-zero vector to unit norm.
    static QuantumState normalized(Amplitudes amplitudes);

    /// Wraps the output of a unitary map. Renormalizes and counts the event
    /// when the norm drifted by more than kRenormalizeThreshold.
    static QuantumState from_evolution(Amplitudes amplitudes);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Amplitudes& amplitudes() const { return amplitudes_; }
    /// Amplitude of the 1-based basis label.
    Complex amplitude(std::size_t label) const;
    double norm() const { return amplitudes_.norm(); }

    friend bool operator==(const QuantumState& a, const QuantumState& b) {
        return a.amplitudes_ == b.amplitudes_;
    }

 private:
    struct Unchecked {};
    QuantumState(Amplitudes amplitudes, Unchecked) : amplitudes_(std::move(amplitudes)) {}

    Amplitudes amplitudes_;
};

/// Deterministic, platform-independent seed for sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Number of explicit renormalizations performed by from_evolution so far.
std::uint64_t renormalization_count();

/// N = int(log2(n - 1)) + 1, the qubit count whose register holds n levels.
/// Throws DomainError for n < 2.
std::size_t num_qubits(std::size_t n);

struct HilbertEmbedding {
    std::size_t levels = 0;
    std::size_t qubits = 0;
    std::size_t padded_dim = 0;

    static HilbertEmbedding for_levels(std::size_t n);
};

/// Places the n physical amplitudes in the first n slots of a 2^N register
/// and zeros the rest.
QuantumState embed(const QuantumState& physical);

/// Inverse of embed: keeps the first n amplitudes and renormalizes.
/// Throws LeakageError if any padding slot carries |a| above leak_tol.
QuantumState project(const QuantumState& padded, std::size_t n, double leak_tol = 1e-8);

/// p_k = |a_k|^2, indexed from 0.
std::vector<double> born_probabilities(const QuantumState& state);

struct Measurement {
    std::size_t outcome = 0;  // 1-based
    QuantumState collapsed;
};

/// Samples a basis outcome with Born probabilities and collapses onto it.
Measurement measure(const QuantumState& state, Rng& rng);

/// |<a|b>|^2. Throws DomainError on dimension mismatch.
double fidelity(const QuantumState& a, const QuantumState& b);

}  // namespace eigenctl
