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
 * Amplitude amplification toward a chosen basis label.
 *
 * U_k = I - 2|k><k| flips the sign of the target amplitude and
 * U_s = 2|s><s| - I inverts every amplitude about the mean. One Grover
 * round applies U_k first, then U_s. Both reflections act on the vector
 * in O(2^N); no dense matrix is ever built.
 */

#include <cstddef>

#include "eigenctl/statevec.hpp"

namespace eigenctl {

/// Equal superposition 2^{-N/2} sum_i |i> over N qubits.
QuantumState uniform_state(std::size_t qubits);

/// Inversion about the mean, a_i -> 2<a> - a_i. Throws DomainError unless
/// the dimension is a power of two.
QuantumState apply_us(const QuantumState& state);

/// Negates the amplitude of 1-based label k.
QuantumState apply_uk(const QuantumState& state, std::size_t k);

/// (U_s U_k)^rounds |state>.
QuantumState grover_iterate(const QuantumState& state, std::size_t k, std::size_t rounds);

struct GroverPlan {
    std::size_t qubits = 0;
    std::size_t target = 0;  // 1-based
    double theta = 0.0;      // sin^2(theta) = 2^-N
    std::size_t iterations = 0;
    double predicted_amplitude = 0.0;
};

/// theta = asin(2^{-N/2}), iterations = int(pi / (4 theta)) truncated.
GroverPlan make_plan(std::size_t qubits, std::size_t k);

/// sin((2j + 1) theta): the target amplitude after j rounds from |s>.
double predicted_amplitude_after(std::size_t rounds, double theta);

enum class IterationMode {
    kPlannedRounds,     // j = int(pi / 4 theta)
    kExactOptimal,  // argmax_j |a_k|^2 over 0 .. 2 int(pi / 4 theta) + 2
};

struct Amplification {
    std::size_t iterations = 0;
    /// Exact |a_k|^2 after the chosen number of rounds.
    double exact_probability = 0.0;
    /// sin^2((2j + 1) theta), only meaningful for a uniform start.
    double predicted_probability = 0.0;
    /// |exact - predicted| > 1e-6.
    bool diverges_from_prediction = false;
    QuantumState final_state;
};

/// Runs the rounds selected by mode from an arbitrary start state.
Amplification amplify(const QuantumState& initial, std::size_t k, IterationMode mode);

}  // namespace eigenctl
