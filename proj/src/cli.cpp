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

#include "eigenctl/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "eigenctl/controllability.hpp"
#include "eigenctl/errors.hpp"
#include "eigenctl/grover.hpp"
#include "eigenctl/pipeline.hpp"
#include "eigenctl/serialization.hpp"
#include "eigenctl/steering.hpp"

namespace eigenctl {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open file");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

namespace {

struct SteeringFlags {
    SteeringConfig cfg;
    double epsilon = kDefaultReachEpsilon;

    void attach(CLI::App* app) {
        app->add_option("--segments", cfg.segments, "Piecewise-constant segments M")->capture_default_str();
        app->add_option("--dt", cfg.dt, "Segment duration")->capture_default_str();
        app->add_option("--restarts", cfg.restarts, "Random restarts of the optimizer")->capture_default_str();
        app->add_option("--max-iters", cfg.max_iters, "Gradient steps per restart")->capture_default_str();
        app->add_option("--step-size", cfg.step_size, "Initial gradient step")->capture_default_str();
        app->add_option("--u-max", cfg.u_max, "Control amplitude bound")->capture_default_str();
        app->add_option("--init-scale", cfg.init_scale, "Half-width of random initial amplitudes")
            ->capture_default_str();
        app->add_option("--stop-fidelity", cfg.stop_fidelity, "Fidelity at which the search stops early")
            ->capture_default_str();
        app->add_option("--epsilon", epsilon, "Success/certificate threshold is fidelity >= 1 - epsilon")
            ->capture_default_str();
    }

    /// Copies only the flags given on the command line over base.
    SteeringConfig overlay(const CLI::App* app, SteeringConfig base) const {
        if (app->count("--segments")) base.segments = cfg.segments;
        if (app->count("--dt")) base.dt = cfg.dt;
        if (app->count("--restarts")) base.restarts = cfg.restarts;
        if (app->count("--max-iters")) base.max_iters = cfg.max_iters;
        if (app->count("--step-size")) base.step_size = cfg.step_size;
        if (app->count("--u-max")) base.u_max = cfg.u_max;
        if (app->count("--init-scale")) base.init_scale = cfg.init_scale;
        if (app->count("--stop-fidelity")) base.stop_fidelity = cfg.stop_fidelity;
        return base;
    }
};

struct Emitter {
    std::ostream& out;
    std::string output_path;
    std::string subcommand;
    std::map<std::string, std::string> digests;

    std::string track(const std::string& path) {
        digests[path] = file_digest(path);
        return path;
    }

    void emit(Json config, Json result, std::optional<std::uint64_t> seed, double elapsed_s) const {
        Json inputs = Json::object();
        for (const auto& [path, digest] : digests) inputs[path] = "fnv1a64:" + digest;
        Json manifest{{"tool", "eigenctl"},
                      {"version", kToolVersion},
                      {"subcommand", subcommand},
                      {"config", std::move(config)},
                      {"inputs", std::move(inputs)},
                      {"seed", seed ? Json(*seed) : Json(nullptr)},
                      {"wall_clock_s", elapsed_s}};
        const std::string text = Json{{"manifest", std::move(manifest)}, {"result", std::move(result)}}.dump(2) + "\n";
        if (output_path.empty()) {
            out << text;
        } else {
            std::ofstream file(output_path);
            if (!file) throw ValidationError(output_path + ": cannot open output file");
            file << text;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QuantumState load_state(Emitter& emitter, const std::string& path) {
    return state_from_json(read_json_file(emitter.track(path)), path);
}

BilinearSystem load_system(Emitter& emitter, const std::string& path) {
    try {
        return system_from_json(read_json_file(emitter.track(path)));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenstate control toolkit: Lie-rank analysis, Grover amplification, measurement and steering",
                 "eigenctl"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    std::string output_path;
    app.add_option("--output", output_path, "Write the JSON document here instead of stdout");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Lie algebra, controllability class and orbit dimensions");
    std::string a_system;
    std::string a_target;
    double lie_tol = kDefaultLieTolerance;
    double rank_tol = kDefaultRankTolerance;
    std::uint64_t a_seed = 1;
    SteeringFlags a_steer;
    analyze->add_option("--system", a_system, "System JSON {n, A, B}")->required();
    analyze->add_option("--target", a_target, "Optional target state JSON; adds per-eigenstate reachability");
    analyze->add_option("--lie-tol", lie_tol, "Commutator-closure tolerance")->capture_default_str();
    analyze->add_option("--rank-tol", rank_tol, "Relative singular-value cutoff")->capture_default_str();
    analyze->add_option("--seed", a_seed, "Optimizer seed for reachability")->capture_default_str();
    a_steer.attach(analyze);

    // grover
    auto* grover = app.add_subcommand("grover", "Plan and simulate amplitude amplification");
    std::size_t g_qubits = 0;
    std::size_t g_target = 0;
    std::size_t g_iterations = 0;
    std::string g_initial = "uniform";
    grover->add_option("--qubits", g_qubits, "Qubit count N")->required()->check(CLI::Range(1, 30));
    grover->add_option("--target", g_target, "Target label k (1-based)")->required();
    grover->add_option("--iterations", g_iterations, "Override the planned round count");
    grover->add_option("--initial", g_initial, "uniform | file:<path>")->capture_default_str();

    // steer
    auto* steer = app.add_subcommand("steer", "Optimize controls from an eigenstate to a target");
    std::string s_system;
    std::string s_target;
    std::string s_warm;
    std::size_t s_from = 1;
    SteeringFlags s_steer;
    steer->add_option("--system", s_system, "System JSON")->required();
    steer->add_option("--from-eigenstate", s_from, "Source eigenstate label (1-based, ascending energy)")
        ->capture_default_str();
    steer->add_option("--target", s_target, "Target state JSON")->required();
    steer->add_option("--warm-start", s_warm, "Schedule JSON (or a previous steer output) used as restart 0");
    steer->add_option("--seed", s_steer.cfg.seed, "Optimizer seed")->capture_default_str();
    s_steer.attach(steer);

    // run / montecarlo share their flags.
    struct RunFlags {
        std::string config_file, system, initial, target;
        std::string prep = "as_paper";
        std::string iteration_mode = "paper_j";
        std::uint64_t seed = 1;
        bool cold_start = false;
        double lie_tol = kDefaultLieTolerance;
        double rank_tol = kDefaultRankTolerance;
        SteeringFlags steer;
    };
    auto attach_run = [](CLI::App* sub, RunFlags& f) {
        sub->add_option("--config-file", f.config_file, "Experiment config JSON (or a previous run/montecarlo output)");
        sub->add_option("--system", f.system, "System JSON");
        sub->add_option("--initial", f.initial, "Initial state JSON (physical basis)");
        sub->add_option("--target", f.target, "Target state JSON (physical basis)");
        sub->add_option("--prep", f.prep, "Register start: as_paper (expanded initial state) or uniform_prep (uniform superposition)")
            ->check(CLI::IsMember({"as_paper", "uniform_prep"}))
            ->capture_default_str();
        sub->add_option("--iteration-mode", f.iteration_mode, "Rounds: paper_j (int(pi/4 theta)) or exact_opt_j (best exact probability)")
            ->check(CLI::IsMember({"paper_j", "exact_opt_j"}))
            ->capture_default_str();
        sub->add_option("--seed", f.seed, "Seed for measurement and optimizer")->capture_default_str();
        sub->add_flag("--cold-start", f.cold_start, "Do not warm-start steering with the certificate");
        sub->add_option("--lie-tol", f.lie_tol, "Commutator-closure tolerance")->capture_default_str();
        sub->add_option("--rank-tol", f.rank_tol, "Relative singular-value cutoff")->capture_default_str();
        f.steer.attach(sub);
    };
    auto* run = app.add_subcommand("run", "One shot of the full control algorithm");
    RunFlags r_flags;
    attach_run(run, r_flags);
    auto* mc = app.add_subcommand("montecarlo", "Repeated seeded shots of the control algorithm");
    RunFlags m_flags;
    std::size_t trials = 1000;
    std::size_t threads = 1;
    std::string csv_path;
    attach_run(mc, m_flags);
    mc->add_option("--trials", trials, "Number of shots")->capture_default_str()->check(CLI::PositiveNumber);
    mc->add_option("--threads", threads, "Worker threads (results do not depend on it)")->capture_default_str();
    mc->add_option("--csv", csv_path, "Write per-trial rows trial,outcome,p_pre,success here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        app.exit(e, err, err);
        return kExitUsage;
    }

    Emitter emitter{out, output_path, "", {}};
    const auto t0 = std::chrono::steady_clock::now();

    auto resolve_run = [&](CLI::App* sub, RunFlags& f) {
        std::optional<ExperimentConfig> cfg;
        if (!f.config_file.empty()) {
            cfg = experiment_config_from_json(read_json_file(emitter.track(f.config_file)));
        } else {
            if (f.system.empty() || f.initial.empty() || f.target.empty()) {
                throw CLI::RequiredError("--system, --initial and --target (or --config-file)");
            }
            cfg.emplace(ExperimentConfig{.system = load_system(emitter, f.system),
                                         .initial = load_state(emitter, f.initial),
                                         .target = load_state(emitter, f.target)});
        }
        if (!f.config_file.empty()) {
            if (!f.system.empty()) cfg->system = load_system(emitter, f.system);
            if (!f.initial.empty()) cfg->initial = load_state(emitter, f.initial);
            if (!f.target.empty()) cfg->target = load_state(emitter, f.target);
        }
        const bool fresh = f.config_file.empty();
        if (fresh || sub->count("--prep")) cfg->prep = parse_prep_mode(f.prep);
        if (fresh || sub->count("--iteration-mode")) cfg->iterations = parse_iteration_mode(f.iteration_mode);
        if (fresh || sub->count("--seed")) {
            cfg->seed = f.seed;
            cfg->steering.seed = f.seed;
        }
        if (fresh || sub->count("--cold-start")) cfg->warm_start = !f.cold_start;
        if (fresh || sub->count("--lie-tol")) cfg->lie_tol = f.lie_tol;
        if (fresh || sub->count("--rank-tol")) cfg->rank_tol = f.rank_tol;
        if (fresh || sub->count("--epsilon")) cfg->epsilon = f.steer.epsilon;
        cfg->steering = f.steer.overlay(sub, cfg->steering);
        return *cfg;
    };

    try {
        if (*analyze) {
            emitter.subcommand = "analyze";
            const BilinearSystem system = load_system(emitter, a_system);
            const EigenstateSet eigen = eigenstates(system);
            const LieAlgebraBasis lie = generate_lie_algebra(system, lie_tol);
            const Classification cls = classify(lie, lie_tol);
            Json orbits = Json::array();
            for (std::size_t k = 1; k <= eigen.states.size(); ++k) {
                orbits.push_back({{"eigenstate", k}, {"orbit_dimension", orbit_dimension(lie, eigen.states[k - 1], rank_tol)}});
            }
            Json result{{"n", system.levels()},
                        {"lie_dim", cls.lie_dim},
                        {"classification", to_string(cls.kind)},
                        {"closure_defect", closure_defect(lie, lie_tol)},
                        {"eigenstates", eigenstates_to_json(eigen)},
                        {"orbit_dimensions", std::move(orbits)}};
            SteeringConfig steering = a_steer.overlay(analyze, SteeringConfig{});
            steering.seed = a_seed;
            Json config{{"lie_tol", lie_tol}, {"rank_tol", rank_tol}};
            std::optional<std::uint64_t> seed;
            if (!a_target.empty()) {
                const QuantumState target = load_state(emitter, a_target);
                result["reachability"] =
                    reachability_to_json(analyze_reachability(system, eigen, lie, target, steering, a_steer.epsilon, rank_tol));
                config["steering"] = steering_config_to_json(steering);
                config["epsilon"] = a_steer.epsilon;
                seed = a_seed;
            }
            emitter.emit(std::move(config), std::move(result), seed, seconds_since(t0));
        } else if (*grover) {
            emitter.subcommand = "grover";
            const std::size_t dim = std::size_t{1} << g_qubits;
            QuantumState initial = uniform_state(g_qubits);
            if (g_initial.rfind("file:", 0) == 0) {
                const std::string path = g_initial.substr(5);
                initial = load_state(emitter, path);
                if (initial.dim() > dim) {
                    throw ValidationError(path + ": state dimension " + std::to_string(initial.dim()) +
                                          " exceeds the " + std::to_string(dim) + "-slot register");
                }
                if (initial.dim() < dim) {
                    // Zero-pad into the larger register.
                    Amplitudes padded = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
                    padded.head(initial.amplitudes().size()) = initial.amplitudes();
                    initial = QuantumState(std::move(padded));
                }
            } else if (g_initial != "uniform") {
                throw CLI::ValidationError("--initial", "expected 'uniform' or 'file:<path>'");
            }
            const GroverPlan plan = make_plan(g_qubits, g_target);
            const std::size_t rounds = grover->count("--iterations") ? g_iterations : plan.iterations;
            const QuantumState final_state = grover_iterate(initial, g_target, rounds);
            const double predicted = predicted_amplitude_after(rounds, plan.theta);
            const double exact = std::norm(final_state.amplitude(g_target));
            Json result{{"plan", plan_to_json(plan)},
                        {"iterations_used", rounds},
                        {"target_probability", exact},
                        {"predicted_probability", predicted * predicted},
                        {"prediction_diverges", std::abs(exact - predicted * predicted) > 1e-6},
                        {"final_state", state_to_json(final_state)}};
            const Complex a_k = final_state.amplitude(g_target);
            result["target_amplitude"] = Json::array({a_k.real(), a_k.imag()});
            Json config{{"qubits", g_qubits}, {"target", g_target}, {"iterations", rounds}, {"initial", g_initial}};
            emitter.emit(std::move(config), std::move(result), std::nullopt, seconds_since(t0));
        } else if (*steer) {
            emitter.subcommand = "steer";
            const BilinearSystem system = load_system(emitter, s_system);
            const QuantumState target = load_state(emitter, s_target);
            SteeringConfig cfg = s_steer.overlay(steer, SteeringConfig{});
            cfg.seed = s_steer.cfg.seed;
            const EigenstateSet eigen = eigenstates(system);
            if (s_from < 1 || s_from > eigen.states.size()) {
                throw CLI::ValidationError("--from-eigenstate", "label out of range 1.." + std::to_string(eigen.states.size()));
            }
            std::optional<ControlSchedule> warm;
            if (!s_warm.empty()) {
                const Json doc = read_json_file(emitter.track(s_warm));
                warm = schedule_from_json(doc.contains("result") ? doc["result"] : doc, cfg.u_max);
            }
            const SteeringResult found = optimize_controls(system, eigen.states[s_from - 1], target, cfg, warm);
            Json result{{"from_eigenstate", s_from},
                        {"fidelity", found.fidelity},
                        {"reachable", found.fidelity >= 1.0 - s_steer.epsilon},
                        {"iterations", found.iterations},
                        {"schedule", schedule_to_json(found.schedule)}};
            Json config{{"from_eigenstate", s_from}, {"steering", steering_config_to_json(cfg)}, {"epsilon", s_steer.epsilon}};
            emitter.emit(std::move(config), std::move(result), cfg.seed, seconds_since(t0));
        } else if (*run) {
            emitter.subcommand = "run";
            const ExperimentConfig cfg = resolve_run(run, r_flags);
            Json result;
            try {
                Rng rng(derive_seed(cfg.seed, 0));
                result = experiment_result_to_json(run_algorithm(cfg, rng));
                result["status"] = "completed";
            } catch (const NotSteerable& e) {
                result = Json{{"status", "not_steerable"}, {"message", e.what()}};
            }
            emitter.emit(experiment_config_to_json(cfg), std::move(result), cfg.seed, seconds_since(t0));
        } else if (*mc) {
            emitter.subcommand = "montecarlo";
            const ExperimentConfig cfg = resolve_run(mc, m_flags);
            const MonteCarloSummary summary = monte_carlo(cfg, trials, threads);
            Json config = experiment_config_to_json(cfg);
            config["trials"] = trials;
            Json result = monte_carlo_to_json(summary);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw ValidationError(csv_path + ": cannot open CSV output");
                csv << monte_carlo_rows_csv(summary);
            }
            emitter.emit(std::move(config), std::move(result), cfg.seed, seconds_since(t0));
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

}  // namespace eigenctl
