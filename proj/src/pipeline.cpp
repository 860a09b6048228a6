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

#include "eigenctl/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "eigenctl/errors.hpp"

namespace eigenctl {

const char* to_string(PrepMode mode) { return mode == PrepMode::kDirect ? "as_paper" : "uniform_prep"; }

const char* to_string(IterationMode mode) {
    return mode == IterationMode::kPlannedRounds ? "paper_j" : "exact_opt_j";
}

PrepMode parse_prep_mode(const std::string& text) {
    if (text == "as_paper") return PrepMode::kDirect;
    if (text == "uniform_prep") return PrepMode::kUniformPrep;
    throw ValidationError("prep_mode: expected as_paper or uniform_prep, got '" + text + "'");
}

IterationMode parse_iteration_mode(const std::string& text) {
    if (text == "paper_j") return IterationMode::kPlannedRounds;
    if (text == "exact_opt_j") return IterationMode::kExactOptimal;
    throw ValidationError("iteration_mode: expected paper_j or exact_opt_j, got '" + text + "'");
}

PreparedExperiment prepare_experiment(const ExperimentConfig& config) {
    const std::size_t n = config.system.levels();
    if (config.initial.dim() != n || config.target.dim() != n) {
        throw ValidationError("initial and target states must have the system dimension");
    }
    const auto embedding = HilbertEmbedding::for_levels(n);
    EigenstateSet eigen = eigenstates(config.system);
    LieAlgebraBasis lie = generate_lie_algebra(config.system, config.lie_tol);
    ReachabilityReport report =
        analyze_reachability(config.system, eigen, lie, config.target, config.steering, config.epsilon, config.rank_tol);

    // Expand in the eigenbasis and pad to 2^N.
    QuantumState embedded = embed(eigen.coefficients_of(config.initial));
    const std::size_t chosen = choose_eigenstate(embedded, report);
    const QuantumState reg = config.prep == PrepMode::kUniformPrep ? uniform_state(embedding.qubits) : embedded;
    Amplification amplification = amplify(reg, chosen, config.iterations);

    // The steering solve depends only on the config, so it runs once here.
    std::optional<ControlSchedule> warm;
    if (config.warm_start) {
        warm = report.entries[chosen - 1].verdict.certificate;
    }
    const QuantumState& start = eigen.states[chosen - 1];
    SteeringResult steering = optimize_controls(config.system, start, config.target, config.steering, warm);
    const double steered_norm = propagate(config.system, steering.schedule, start).norm();

    return PreparedExperiment{
        .config = config,
        .embedding = embedding,
        .eigen = std::move(eigen),
        .lie = std::move(lie),
        .report = std::move(report),
        .embedded_initial = std::move(embedded),
        .chosen = chosen,
        .amplification = std::move(amplification),
        .steering = std::move(steering),
        .steered_norm = steered_norm,
    };
}

ExperimentResult execute_trial(const PreparedExperiment& prepared, Rng& rng) {
    const auto& amp = prepared.amplification;
    ExperimentResult r;
    r.chosen_eigenstate = prepared.chosen;
    r.iterations = amp.iterations;
    r.pre_measurement_probability = amp.exact_probability;
    r.predicted_probability = amp.predicted_probability;
    r.prediction_diverges = amp.diverges_from_prediction;
    r.norm_trace = {prepared.embedded_initial.norm(), amp.final_state.norm()};

    const Measurement m = measure(amp.final_state, rng);
    r.norm_trace.push_back(m.collapsed.norm());
    r.outcome = m.outcome;
    r.padding_outcome = m.outcome > prepared.embedding.levels;
    r.collapsed_correctly = m.outcome == prepared.chosen;
    if (!r.collapsed_correctly) {
        return r;
    }

    // The collapsed slot k is eigenstate k of H0.
    project(m.collapsed, prepared.embedding.levels);
    r.steering_fidelity = prepared.steering.fidelity;
    r.schedule = prepared.steering.schedule;
    r.norm_trace.push_back(prepared.steered_norm);
    r.success = r.steering_fidelity >= 1.0 - prepared.config.epsilon;
    return r;
}

ExperimentResult run_algorithm(const ExperimentConfig& config, Rng& rng) {
    return execute_trial(prepare_experiment(config), rng);
}

MonteCarloSummary monte_carlo(const ExperimentConfig& config, std::size_t trials, std::size_t threads) {
    if (trials < 1) {
        throw DomainError("monte carlo needs at least one trial");
    }
    const auto t0 = std::chrono::steady_clock::now();
    MonteCarloSummary s;
    s.trials = trials;
    s.rows.resize(trials);

    std::optional<PreparedExperiment> prepared;
    try {
        prepared = prepare_experiment(config);
    } catch (const NotSteerable&) {
        s.not_steerable = trials;
        for (std::size_t t = 0; t < trials; ++t) s.rows[t].trial = t;
    }

    if (prepared) {
        s.chosen_eigenstate = prepared->chosen;
        s.iterations = prepared->amplification.iterations;
        s.predicted_probability = prepared->amplification.predicted_probability;

        std::vector<ExperimentResult> results(trials);
        auto work = [&](std::size_t begin, std::size_t stride) {
            for (std::size_t t = begin; t < trials; t += stride) {
                Rng rng(derive_seed(config.seed, t));
                results[t] = execute_trial(*prepared, rng);
            }
        };
        const std::size_t workers = std::clamp<std::size_t>(threads, 1, trials);
        if (workers == 1) {
            work(0, 1);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        }

        double p_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto& r = results[t];
            s.rows[t] = {t, r.outcome, r.pre_measurement_probability, r.success};
            s.successes += r.success ? 1 : 0;
            s.measurement_successes += r.collapsed_correctly ? 1 : 0;
            s.padding_outcomes += r.padding_outcome ? 1 : 0;
            p_sum += r.pre_measurement_probability;
        }
        s.mean_pre_measurement_probability = p_sum / static_cast<double>(trials);
    }

    const auto n = static_cast<double>(trials);
    s.success_rate = static_cast<double>(s.successes) / n;
    s.measurement_success_rate = static_cast<double>(s.measurement_successes) / n;
    s.wall_clock_per_trial_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / n;
    return s;
}

}  // namespace eigenctl
