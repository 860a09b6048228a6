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
 * JSON encodings. Complex numbers are [re, im] pairs; matrices are arrays of
 * rows. Every reader validates as it goes and names the offending path in
 * the ValidationError it throws.
 */

#include <string>

#include <json.hpp>

#include "eigenctl/bilinear_system.hpp"
#include "eigenctl/controllability.hpp"
#include "eigenctl/grover.hpp"
#include "eigenctl/pipeline.hpp"
#include "eigenctl/statevec.hpp"
#include "eigenctl/steering.hpp"

namespace eigenctl {

using Json = nlohmann::ordered_json;

Json state_to_json(const QuantumState& state);
/// Accepts a bare [[re, im], ...] array, or an object carrying it under
/// "state" or "final_state".
QuantumState state_from_json(const Json& j, const std::string& path = "state");

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path);

Json system_to_json(const BilinearSystem& system);
/// {n, A, B}. Skew-Hermiticity errors name the entry, e.g. "B[1][0][1]".
BilinearSystem system_from_json(const Json& j);

Json plan_to_json(const GroverPlan& plan);

Json schedule_to_json(const ControlSchedule& schedule);
/// {M, dt, amplitudes}, or an object carrying it under "schedule".
ControlSchedule schedule_from_json(const Json& j, double u_max = kDefaultAmplitudeBound);

Json steering_config_to_json(const SteeringConfig& config);
/// Missing fields keep their defaults.
SteeringConfig steering_config_from_json(const Json& j, SteeringConfig base = {});

Json eigenstates_to_json(const EigenstateSet& eigen);
Json reachability_to_json(const ReachabilityReport& report);

Json experiment_config_to_json(const ExperimentConfig& config);
/// Accepts the object written by experiment_config_to_json, or any output
/// whose manifest carries it under manifest.config.
ExperimentConfig experiment_config_from_json(const Json& j);

Json experiment_result_to_json(const ExperimentResult& result);
/// Summary without the wall-clock figure, which belongs to the manifest.
Json monte_carlo_to_json(const MonteCarloSummary& summary);
std::string monte_carlo_rows_csv(const MonteCarloSummary& summary);

/// Reads and parses a JSON file; IO and syntax errors become ValidationError.
Json read_json_file(const std::string& path);

}  // namespace eigenctl
