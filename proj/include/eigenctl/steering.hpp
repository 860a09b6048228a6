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
 * Piecewise-constant propagation and a fidelity-maximizing control search.
 *
 * A schedule holds M segments of duration dt; on segment j the generator is
 * G_j = A + sum_i u_{j,i} B_i and the segment propagator exp(G_j dt) is taken
 * through the eigen-decomposition of the Hermitian matrix iG_j, so every
 * segment is unitary to rounding.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "eigenctl/bilinear_system.hpp"
#include "eigenctl/statevec.hpp"

namespace eigenctl {

inline constexpr double kDefaultAmplitudeBound = 10.0;

class ControlSchedule {
 public:
    /// amplitudes is M x m (segment, control). Throws ValidationError when
    /// M = 0, dt <= 0, or any amplitude is non-finite or exceeds u_max.
    ControlSchedule(double dt, Eigen::MatrixXd amplitudes, double u_max = kDefaultAmplitudeBound);

    static ControlSchedule zero(std::size_t segments, std::size_t controls, double dt);

    std::size_t segments() const { return static_cast<std::size_t>(amplitudes_.rows()); }
    std::size_t controls() const { return static_cast<std::size_t>(amplitudes_.cols()); }
    double dt() const { return dt_; }
    double total_time() const { return dt_ * static_cast<double>(segments()); }
    const Eigen::MatrixXd& amplitudes() const { return amplitudes_; }

    /// This schedule followed by next (same dt and control count).
    ControlSchedule then(const ControlSchedule& next) const;

 private:
    double dt_;
    Eigen::MatrixXd amplitudes_;
};

/// exp((A + sum_i u_i B_i) dt).
Matrix segment_propagator(const BilinearSystem& system, const Eigen::VectorXd& u, double dt);

/// U_M ... U_1 |psi>.
QuantumState propagate(const BilinearSystem& system, const ControlSchedule& schedule, const QuantumState& psi);

/// |<target| propagate(start)>|^2.
double fidelity_objective(const BilinearSystem& system, const ControlSchedule& schedule,
                          const QuantumState& start, const QuantumState& target);

/// Central finite-difference gradient of fidelity_objective with respect to
/// every amplitude, step h. Each perturbation touches one segment only, so
/// the forward states and backward co-states are cached once per call.
Eigen::MatrixXd objective_gradient(const BilinearSystem& system, const ControlSchedule& schedule,
                                   const QuantumState& start, const QuantumState& target, double h = 1e-6);

struct SteeringConfig {
    std::size_t segments = 40;
    double dt = 0.2;
    std::size_t restarts = 8;
    std::size_t max_iters = 300;
    double step_size = 1.0;
    double u_max = kDefaultAmplitudeBound;
    std::uint64_t seed = 1;
    /// Random initial amplitudes are drawn uniformly from [-init_scale, init_scale].
    double init_scale = 1.0;
    /// A restart stops once it reaches this fidelity, and no further restarts run.
    double stop_fidelity = 1.0 - 1e-6;
    /// Keep the per-iteration best-so-far fidelity of every restart.
    bool record_history = false;
};

struct SteeringResult {
    ControlSchedule schedule;
    /// Re-verified with an independent propagate call.
    double fidelity = 0.0;
    std::size_t iterations = 0;
    std::vector<std::vector<double>> history;
};

/// Gradient ascent on fidelity_objective with seeded random restarts. The
/// step is halved on every rejected move and grown by half on accepted ones;
/// a restart ends at max_iters, gradient norm < 1e-8, or stop_fidelity.
/// A warm start, when given, replaces the random draw of restart 0.
SteeringResult optimize_controls(const BilinearSystem& system, const QuantumState& start,
                                 const QuantumState& target, const SteeringConfig& config,
                                 const std::optional<ControlSchedule>& warm_start = std::nullopt);

}  // namespace eigenctl
