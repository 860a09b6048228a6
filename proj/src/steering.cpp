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

#include "eigenctl/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "eigenctl/errors.hpp"

namespace eigenctl {

namespace {

void check_state(const BilinearSystem& system, const QuantumState& psi) {
    if (psi.dim() != system.levels()) {
        throw DomainError("state dimension does not match the system");
    }
}

void check_schedule(const BilinearSystem& system, const ControlSchedule& schedule) {
    if (schedule.controls() != system.control_count()) {
        throw DomainError("schedule control count does not match the system");
    }
}

Complex overlap(const Amplitudes& bra, const Amplitudes& ket) { return bra.dot(ket); }

class Propagator {
 public:
    Propagator(const BilinearSystem& system, const Eigen::MatrixXd& amplitudes, double dt)
        : system_(system), amplitudes_(amplitudes), dt_(dt) {}

    Amplitudes apply(const Amplitudes& psi) const {
        Amplitudes out = psi;
        for (Eigen::Index j = 0; j < amplitudes_.rows(); ++j) {
            out = segment_propagator(system_, amplitudes_.row(j).transpose(), dt_) * out;
        }
        return out;
    }

    double objective(const Amplitudes& start, const Amplitudes& target) const {
        return std::norm(overlap(target, apply(start)));
    }

 private:
    const BilinearSystem& system_;
    const Eigen::MatrixXd& amplitudes_;
    double dt_;
};

}  // namespace

ControlSchedule::ControlSchedule(double dt, Eigen::MatrixXd amplitudes, double u_max)
    : dt_(dt), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.rows() < 1) {
        throw ValidationError("schedule needs at least one segment");
    }
    if (amplitudes_.cols() < 1) {
        throw ValidationError("schedule needs at least one control");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw ValidationError("schedule segment duration dt must be positive");
    }
    for (Eigen::Index j = 0; j < amplitudes_.rows(); ++j) {
        for (Eigen::Index i = 0; i < amplitudes_.cols(); ++i) {
            const double u = amplitudes_(j, i);
            if (!std::isfinite(u) || std::abs(u) > u_max) {
                std::ostringstream msg;
                msg << "amplitudes[" << j << "][" << i << "] = " << u << " outside [-" << u_max << ", " << u_max << "]";
                throw ValidationError(msg.str());
            }
        }
    }
}

ControlSchedule ControlSchedule::zero(std::size_t segments, std::size_t controls, double dt) {
    return ControlSchedule(dt, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(segments),
                                                     static_cast<Eigen::Index>(controls)));
}

ControlSchedule ControlSchedule::then(const ControlSchedule& next) const {
    if (next.dt_ != dt_ || next.controls() != controls()) {
        throw DomainError("concatenated schedules need equal dt and control count");
    }
    Eigen::MatrixXd joined(amplitudes_.rows() + next.amplitudes_.rows(), amplitudes_.cols());
    joined << amplitudes_, next.amplitudes_;
    return ControlSchedule(dt_, std::move(joined), std::numeric_limits<double>::infinity());
}

Matrix segment_propagator(const BilinearSystem& system, const Eigen::VectorXd& u, double dt) {
    // G = -iH with H = iG Hermitian, so exp(G dt) = V exp(-i D dt) V^dagger.
    Matrix h = Complex(0.0, 1.0) * system.generator(u);
    h = (0.5 * (h + h.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Eigen::VectorXd& energies = solver.eigenvalues();
    Amplitudes phases(energies.size());
    for (Eigen::Index i = 0; i < energies.size(); ++i) {
        phases(i) = std::polar(1.0, -energies(i) * dt);
    }
    const Matrix& v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

QuantumState propagate(const BilinearSystem& system, const ControlSchedule& schedule, const QuantumState& psi) {
    check_state(system, psi);
    check_schedule(system, schedule);
    return QuantumState::from_evolution(Propagator(system, schedule.amplitudes(), schedule.dt()).apply(psi.amplitudes()));
}

double fidelity_objective(const BilinearSystem& system, const ControlSchedule& schedule, const QuantumState& start,
                          const QuantumState& target) {
    check_state(system, target);
    return fidelity(target, propagate(system, schedule, start));
}

namespace {

Eigen::MatrixXd gradient_of(const BilinearSystem& system, const Eigen::MatrixXd& u, double dt, const Amplitudes& start,
                            const Amplitudes& target, double h) {
    const Eigen::Index segments = u.rows();
    const Eigen::Index controls = u.cols();

    std::vector<Matrix> props;
    props.reserve(static_cast<std::size_t>(segments));
    for (Eigen::Index j = 0; j < segments; ++j) {
        props.push_back(segment_propagator(system, u.row(j).transpose(), dt));
    }
    // forward[j] is the state entering segment j, costate[j] the target pulled
    // back through segments after j.
    std::vector<Amplitudes> forward(static_cast<std::size_t>(segments));
    std::vector<Amplitudes> costate(static_cast<std::size_t>(segments));
    Amplitudes psi = start;
    for (Eigen::Index j = 0; j < segments; ++j) {
        forward[static_cast<std::size_t>(j)] = psi;
        psi = props[static_cast<std::size_t>(j)] * psi;
    }
    Amplitudes chi = target;
    for (Eigen::Index j = segments; j-- > 0;) {
        costate[static_cast<std::size_t>(j)] = chi;
        chi = props[static_cast<std::size_t>(j)].adjoint() * chi;
    }

    Eigen::MatrixXd grad(segments, controls);
    for (Eigen::Index j = 0; j < segments; ++j) {
        const auto& in = forward[static_cast<std::size_t>(j)];
        const auto& out = costate[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < controls; ++i) {
            Eigen::VectorXd up = u.row(j).transpose();
            Eigen::VectorXd down = up;
            up(i) += h;
            down(i) -= h;
            const double f_up = std::norm(overlap(out, segment_propagator(system, up, dt) * in));
            const double f_down = std::norm(overlap(out, segment_propagator(system, down, dt) * in));
            grad(j, i) = (f_up - f_down) / (2.0 * h);
        }
    }
    return grad;
}

}  // namespace

Eigen::MatrixXd objective_gradient(const BilinearSystem& system, const ControlSchedule& schedule,
                                   const QuantumState& start, const QuantumState& target, double h) {
    check_state(system, start);
    check_state(system, target);
    check_schedule(system, schedule);
    return gradient_of(system, schedule.amplitudes(), schedule.dt(), start.amplitudes(), target.amplitudes(), h);
}

SteeringResult optimize_controls(const BilinearSystem& system, const QuantumState& start, const QuantumState& target,
                                 const SteeringConfig& config, const std::optional<ControlSchedule>& warm_start) {
    check_state(system, start);
    check_state(system, target);
    if (config.segments < 1 || !(config.dt > 0.0) || !(config.u_max > 0.0)) {
        throw ValidationError("steering config needs segments >= 1, dt > 0 and u_max > 0");
    }
    const auto segments = static_cast<Eigen::Index>(config.segments);
    const auto controls = static_cast<Eigen::Index>(system.control_count());
    if (warm_start && (warm_start->segments() != config.segments || warm_start->controls() != system.control_count() ||
                       warm_start->dt() != config.dt)) {
        throw ValidationError("warm-start schedule shape does not match the steering config");
    }

    const Amplitudes& a_start = start.amplitudes();
    const Amplitudes& a_target = target.amplitudes();
    const double dt = config.dt;
    auto objective = [&](const Eigen::MatrixXd& u) { return Propagator(system, u, dt).objective(a_start, a_target); };
    auto clamp = [&](Eigen::MatrixXd u) { return u.cwiseMax(-config.u_max).cwiseMin(config.u_max).eval(); };

    SteeringResult result{.schedule = ControlSchedule::zero(config.segments, system.control_count(), dt)};
    Eigen::MatrixXd best_u = Eigen::MatrixXd::Zero(segments, controls);
    double best_f = objective(best_u);

    if (best_f < config.stop_fidelity) {
        for (std::size_t r = 0; r < config.restarts; ++r) {
            Eigen::MatrixXd u;
            if (r == 0 && warm_start) {
                u = clamp(warm_start->amplitudes());
            } else {
                Rng rng(derive_seed(config.seed, r));
                std::uniform_real_distribution<double> draw(-config.init_scale, config.init_scale);
                u.resize(segments, controls);
                for (Eigen::Index j = 0; j < segments; ++j) {
                    for (Eigen::Index i = 0; i < controls; ++i) {
                        u(j, i) = draw(rng);
                    }
                }
                u = clamp(std::move(u));
            }
            double f = objective(u);
            double step = config.step_size;
            std::vector<double> trace{f};
            for (std::size_t it = 0; it < config.max_iters && f < config.stop_fidelity; ++it) {
                const Eigen::MatrixXd g = gradient_of(system, u, dt, a_start, a_target, 1e-6);
                if (g.norm() < 1e-8) break;
                ++result.iterations;
                Eigen::MatrixXd trial = clamp(u + step * g);
                const double f_trial = objective(trial);
                if (f_trial > f) {
                    u = std::move(trial);
                    f = f_trial;
                    step *= 1.5;
                } else {
                    step *= 0.5;
                    if (step < 1e-12) break;
                }
                if (config.record_history) trace.push_back(f);
            }
            if (config.record_history) result.history.push_back(std::move(trace));
            if (f > best_f) {
                best_f = f;
                best_u = std::move(u);
            }
            if (best_f >= config.stop_fidelity) break;
        }
    }

    result.schedule = ControlSchedule(dt, std::move(best_u), config.u_max);
    result.fidelity = fidelity(target, propagate(system, result.schedule, start));
    return result;
}

}  // namespace eigenctl
