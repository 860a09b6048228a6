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

#include "eigenctl/serialization.hpp"

#include <fstream>
#include <sstream>

#include "eigenctl/errors.hpp"

namespace eigenctl {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

Complex complex_from(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected an [re, im] pair");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Json complex_to(Complex z) { return Json::array({z.real(), z.imag()}); }

template <typename T, typename Read>
void optional_field(const Json& j, const char* key, T& out, Read read) {
    auto it = j.find(key);
    if (it != j.end()) out = read(*it, std::string(key));
}

}  // namespace

Json state_to_json(const QuantumState& state) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
        out.push_back(complex_to(state.amplitudes()(i)));
    }
    return out;
}

QuantumState state_from_json(const Json& j, const std::string& path) {
    if (j.is_object()) {
        for (const char* key : {"state", "final_state", "result"}) {
            if (j.contains(key)) return state_from_json(j.at(key), path + "." + key);
        }
        fail(path, "expected an amplitude array or an object with a 'state' field");
    }
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of [re, im] pairs");
    Amplitudes a(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        a(static_cast<Eigen::Index>(i)) = complex_from(j[i], path + "[" + std::to_string(i) + "]");
    }
    try {
        return QuantumState(std::move(a));
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != rows) fail(rp, "expected a row of " + std::to_string(rows) + " entries");
        for (std::size_t c = 0; c < rows; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from(j[r][c], rp + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

Json system_to_json(const BilinearSystem& system) {
    Json b = Json::array();
    for (const auto& m : system.controls()) b.push_back(matrix_to_json(m));
    return Json{{"n", system.levels()}, {"A", matrix_to_json(system.drift())}, {"B", std::move(b)}};
}

BilinearSystem system_from_json(const Json& j) {
    const std::size_t n = count(field(j, "n", "system"), "system.n");
    Matrix a = matrix_from_json(field(j, "A", "system"), "A");
    if (static_cast<std::size_t>(a.rows()) != n) fail("A", "dimension does not match n = " + std::to_string(n));
    const Json& bj = field(j, "B", "system");
    if (!bj.is_array()) fail("B", "expected an array of matrices");
    std::vector<Matrix> b;
    for (std::size_t i = 0; i < bj.size(); ++i) {
        const std::string p = "B[" + std::to_string(i) + "]";
        b.push_back(matrix_from_json(bj[i], p));
        if (static_cast<std::size_t>(b.back().rows()) != n) fail(p, "dimension does not match n = " + std::to_string(n));
    }
    return BilinearSystem(std::move(a), std::move(b));
}

Json plan_to_json(const GroverPlan& plan) {
    return Json{{"N", plan.qubits},
                {"k", plan.target},
                {"theta", plan.theta},
                {"iterations", plan.iterations},
                {"predicted_amplitude", plan.predicted_amplitude}};
}

Json schedule_to_json(const ControlSchedule& schedule) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < schedule.amplitudes().rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < schedule.amplitudes().cols(); ++c) row.push_back(schedule.amplitudes()(r, c));
        rows.push_back(std::move(row));
    }
    return Json{{"M", schedule.segments()}, {"dt", schedule.dt()}, {"amplitudes", std::move(rows)}};
}

ControlSchedule schedule_from_json(const Json& j, double u_max) {
    if (j.is_object() && j.contains("schedule") && !j.contains("M")) {
        return schedule_from_json(j.at("schedule"), u_max);
    }
    const std::size_t m = count(field(j, "M", "schedule"), "schedule.M");
    const double dt = number(field(j, "dt", "schedule"), "schedule.dt");
    const Json& rows = field(j, "amplitudes", "schedule");
    if (!rows.is_array() || rows.size() != m) fail("schedule.amplitudes", "expected M rows");
    if (m == 0) fail("schedule.M", "must be positive");
    const std::size_t controls = rows[0].is_array() ? rows[0].size() : 0;
    Eigen::MatrixXd u(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(controls));
    for (std::size_t r = 0; r < m; ++r) {
        const std::string rp = "schedule.amplitudes[" + std::to_string(r) + "]";
        if (!rows[r].is_array() || rows[r].size() != controls) fail(rp, "ragged amplitude rows");
        for (std::size_t c = 0; c < controls; ++c) {
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                number(rows[r][c], rp + "[" + std::to_string(c) + "]");
        }
    }
    try {
        return ControlSchedule(dt, std::move(u), u_max);
    } catch (const ValidationError& e) {
        fail("schedule", e.what());
    }
}

Json steering_config_to_json(const SteeringConfig& c) {
    return Json{{"segments", c.segments},   {"dt", c.dt},       {"restarts", c.restarts},
                {"max_iters", c.max_iters}, {"step_size", c.step_size}, {"u_max", c.u_max},
                {"seed", c.seed},           {"init_scale", c.init_scale}, {"stop_fidelity", c.stop_fidelity}};
}

SteeringConfig steering_config_from_json(const Json& j, SteeringConfig c) {
    if (!j.is_object()) fail("steering", "expected an object");
    auto num = [](const Json& v, const std::string& k) { return number(v, "steering." + k); };
    auto cnt = [](const Json& v, const std::string& k) { return count(v, "steering." + k); };
    optional_field(j, "segments", c.segments, cnt);
    optional_field(j, "dt", c.dt, num);
    optional_field(j, "restarts", c.restarts, cnt);
    optional_field(j, "max_iters", c.max_iters, cnt);
    optional_field(j, "step_size", c.step_size, num);
    optional_field(j, "u_max", c.u_max, num);
    optional_field(j, "init_scale", c.init_scale, num);
    optional_field(j, "stop_fidelity", c.stop_fidelity, num);
    optional_field(j, "seed", c.seed, [](const Json& v, const std::string&) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            fail("steering.seed", "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    });
    return c;
}

Json eigenstates_to_json(const EigenstateSet& eigen) {
    Json states = Json::array();
    for (const auto& s : eigen.states) states.push_back(state_to_json(s));
    return Json{{"energies", eigen.energies}, {"states", std::move(states)}, {"degenerate", eigen.degenerate}};
}

Json reachability_to_json(const ReachabilityReport& report) {
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json v{{"eigenstate", e.eigenstate},
               {"orbit_dimension", e.orbit_dimension},
               {"verdict", e.verdict.reachable ? "Reachable" : "Unknown"},
               {"fidelity", e.verdict.fidelity}};
        if (e.verdict.certificate) v["certificate"] = schedule_to_json(*e.verdict.certificate);
        entries.push_back(std::move(v));
    }
    return entries;
}

Json experiment_config_to_json(const ExperimentConfig& c) {
    return Json{{"system", system_to_json(c.system)},
                {"initial", state_to_json(c.initial)},
                {"target", state_to_json(c.target)},
                {"prep_mode", to_string(c.prep)},
                {"iteration_mode", to_string(c.iterations)},
                {"steering", steering_config_to_json(c.steering)},
                {"epsilon", c.epsilon},
                {"warm_start", c.warm_start},
                {"lie_tol", c.lie_tol},
                {"rank_tol", c.rank_tol},
                {"seed", c.seed}};
}

ExperimentConfig experiment_config_from_json(const Json& j) {
    if (j.is_object() && j.contains("manifest") && j["manifest"].contains("config")) {
        return experiment_config_from_json(j["manifest"]["config"]);
    }
    ExperimentConfig c{
        .system = system_from_json(field(j, "system", "config")),
        .initial = state_from_json(field(j, "initial", "config"), "config.initial"),
        .target = state_from_json(field(j, "target", "config"), "config.target"),
    };
    auto str = [](const Json& v, const std::string& k) {
        if (!v.is_string()) fail("config." + k, "expected a string");
        return v.get<std::string>();
    };
    if (j.contains("prep_mode")) c.prep = parse_prep_mode(str(j["prep_mode"], "prep_mode"));
    if (j.contains("iteration_mode")) c.iterations = parse_iteration_mode(str(j["iteration_mode"], "iteration_mode"));
    if (j.contains("steering")) c.steering = steering_config_from_json(j["steering"]);
    auto num = [](const Json& v, const std::string& k) { return number(v, "config." + k); };
    optional_field(j, "epsilon", c.epsilon, num);
    optional_field(j, "lie_tol", c.lie_tol, num);
    optional_field(j, "rank_tol", c.rank_tol, num);
    optional_field(j, "warm_start", c.warm_start, [](const Json& v, const std::string&) {
        if (!v.is_boolean()) fail("config.warm_start", "expected a boolean");
        return v.get<bool>();
    });
    optional_field(j, "seed", c.seed, [](const Json& v, const std::string&) {
        if (!v.is_number_integer() || v.get<long long>() < 0) fail("config.seed", "expected a non-negative integer");
        return v.get<std::uint64_t>();
    });
    return c;
}

Json experiment_result_to_json(const ExperimentResult& r) {
    Json out{{"chosen_eigenstate", r.chosen_eigenstate},
             {"iterations", r.iterations},
             {"pre_measurement_probability", r.pre_measurement_probability},
             {"predicted_probability", r.predicted_probability},
             {"prediction_diverges", r.prediction_diverges},
             {"outcome", r.outcome},
             {"collapsed_correctly", r.collapsed_correctly},
             {"padding_outcome", r.padding_outcome},
             {"steering_fidelity", r.steering_fidelity},
             {"success", r.success},
             {"norm_trace", r.norm_trace}};
    out["schedule"] = r.schedule ? schedule_to_json(*r.schedule) : Json(nullptr);
    return out;
}

Json monte_carlo_to_json(const MonteCarloSummary& s) {
    return Json{{"trials", s.trials},
                {"chosen_eigenstate", s.chosen_eigenstate ? Json(*s.chosen_eigenstate) : Json(nullptr)},
                {"iterations", s.iterations},
                {"successes", s.successes},
                {"success_rate", s.success_rate},
                {"measurement_successes", s.measurement_successes},
                {"measurement_success_rate", s.measurement_success_rate},
                {"padding_outcomes", s.padding_outcomes},
                {"not_steerable", s.not_steerable},
                {"mean_pre_measurement_probability", s.mean_pre_measurement_probability},
                {"predicted_probability", s.predicted_probability}};
}

std::string monte_carlo_rows_csv(const MonteCarloSummary& s) {
    std::ostringstream out;
    out.precision(17);
    out << "trial,outcome,p_pre,success\n";
    for (const auto& r : s.rows) {
        out << r.trial << ',' << r.outcome << ',' << r.pre_measurement_probability << ',' << (r.success ? 1 : 0) << '\n';
    }
    return out.str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace eigenctl
