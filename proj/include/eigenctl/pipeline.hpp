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
 * End-to-end control run: embed the initial state, certify which
 * eigenstates reach the target, amplify the chosen eigenstate's amplitude,
 * measure once, then steer from the collapsed eigenstate to the target.
 *
 * Register slot k holds the coefficient of the k-th eigenstate of H0
 * (ascending energy). The initial state is given in the physical basis and
 * expanded in the eigenbasis before embedding.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eigenctl/bilinear_system.hpp"
#include "eigenctl/controllability.hpp"
#include "eigenctl/grover.hpp"
#include "eigenctl/statevec.hpp"
#include "eigenctl/steering.hpp"

namespace eigenctl {

enum class PrepMode {
    kDirect,      // amplify the embedded initial state itself
    kUniformPrep,  // replace the register with the uniform superposition first
};

const char* to_string(PrepMode mode);
const char* to_string(IterationMode mode);
PrepMode parse_prep_mode(const std::string& text);
IterationMode parse_iteration_mode(const std::string& text);

struct ExperimentConfig {
    BilinearSystem system;
    QuantumState initial;  // physical basis, dim n
    QuantumState target;   // physical basis, dim n
    PrepMode prep = PrepMode::kDirect;
    IterationMode iterations = IterationMode::kPlannedRounds;
    SteeringConfig steering;
    /// Steering succeeds at fidelity >= 1 - epsilon; also the certificate threshold.
    double epsilon = kDefaultReachEpsilon;
    /// Seed the final steering with the reachability certificate.
    bool warm_start = true;
    double lie_tol = kDefaultLieTolerance;
    double rank_tol = kDefaultRankTolerance;
    std::uint64_t seed = 1;
};

struct ExperimentResult {
    std::size_t chosen_eigenstate = 0;  // 1-based
    std::size_t iterations = 0;
    double pre_measurement_probability = 0.0;
    double predicted_probability = 0.0;
    bool prediction_diverges = false;
    std::size_t outcome = 0;  // 1-based register label
    bool collapsed_correctly = false;
    /// Outcome fell on a padding slot (label > n).
    bool padding_outcome = false;
    double steering_fidelity = 0.0;
    bool success = false;
    /// Norms after embedding, amplification, collapse, and steering (when run).
    std::vector<double> norm_trace;
    std::optional<ControlSchedule> schedule;
};

/// Everything upstream of the measurement, which is deterministic in the
/// config: the reachability report, the chosen eigenstate, the amplified
/// register and the final steering solution.
struct PreparedExperiment {
    ExperimentConfig config;
    HilbertEmbedding embedding;
    EigenstateSet eigen;
    LieAlgebraBasis lie;
    ReachabilityReport report;
    QuantumState embedded_initial;
    std::size_t chosen = 0;
    Amplification amplification;
    SteeringResult steering;
    double steered_norm = 0.0;
};

/// Everything upstream of measurement, including the steering solve. Throws
/// NotSteerable when no eigenstate is certified to reach the target.
PreparedExperiment prepare_experiment(const ExperimentConfig& config);

/// Measurement and steering for one shot. Exactly one measurement is drawn from rng.
ExperimentResult execute_trial(const PreparedExperiment& prepared, Rng& rng);

ExperimentResult run_algorithm(const ExperimentConfig& config, Rng& rng);

struct TrialRow {
    std::size_t trial = 0;
    std::size_t outcome = 0;
    double pre_measurement_probability = 0.0;
    bool success = false;
};

struct MonteCarloSummary {
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::size_t measurement_successes = 0;
    std::size_t padding_outcomes = 0;
    std::size_t not_steerable = 0;
    double success_rate = 0.0;
    double measurement_success_rate = 0.0;
    double mean_pre_measurement_probability = 0.0;
    /// Analytic sin^2((2j+1) theta) for the chosen rounds.
    double predicted_probability = 0.0;
    double wall_clock_per_trial_s = 0.0;
    std::optional<std::size_t> chosen_eigenstate;
    std::size_t iterations = 0;
    std::vector<TrialRow> rows;
};

/// Trial t draws from Rng(derive_seed(config.seed, t)), so the summary does
/// not depend on the thread count.
MonteCarloSummary monte_carlo(const ExperimentConfig& config, std::size_t trials, std::size_t threads = 1);

}  // namespace eigenctl
