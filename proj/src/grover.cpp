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

#include "eigenctl/grover.hpp"

#include <cmath>
#include <numbers>

#include "eigenctl/errors.hpp"

namespace eigenctl {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

void require_register(std::size_t dim) {
    if (!is_power_of_two(dim) || dim < 2) {
        throw DomainError("uniform reflection needs a 2^N-dimensional register");
    }
}

void reflect_about_mean(Amplitudes& a) {
    const Complex mean = a.mean();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = 2.0 * mean - a(i);
    }
}

void check_label(std::size_t k, std::size_t dim) {
    if (k < 1 || k > dim) {
        throw DomainError("target label out of range");
    }
}

std::size_t qubits_of(std::size_t dim) {
    std::size_t q = 0;
    while ((std::size_t{1} << q) < dim) ++q;
    return q;
}

}  // namespace

QuantumState uniform_state(std::size_t qubits) {
    if (qubits < 1 || qubits >= 8 * sizeof(std::size_t) - 1) {
        throw DomainError("qubit count out of range");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
    return QuantumState::normalized(Amplitudes::Constant(dim, Complex(1.0, 0.0)));
}

QuantumState apply_us(const QuantumState& state) {
    require_register(state.dim());
    Amplitudes a = state.amplitudes();
    reflect_about_mean(a);
    return QuantumState::from_evolution(std::move(a));
}

QuantumState apply_uk(const QuantumState& state, std::size_t k) {
    check_label(k, state.dim());
    Amplitudes a = state.amplitudes();
    a(static_cast<Eigen::Index>(k - 1)) *= -1.0;
    return QuantumState::from_evolution(std::move(a));
}

QuantumState grover_iterate(const QuantumState& state, std::size_t k, std::size_t rounds) {
    require_register(state.dim());
    check_label(k, state.dim());
    Amplitudes a = state.amplitudes();
    const auto target = static_cast<Eigen::Index>(k - 1);
    for (std::size_t r = 0; r < rounds; ++r) {
        a(target) *= -1.0;
        reflect_about_mean(a);
    }
    return QuantumState::from_evolution(std::move(a));
}

GroverPlan make_plan(std::size_t qubits, std::size_t k) {
    if (qubits < 1 || qubits >= 8 * sizeof(std::size_t) - 1) {
        throw DomainError("qubit count out of range");
    }
    check_label(k, std::size_t{1} << qubits);
    GroverPlan plan;
    plan.qubits = qubits;
    plan.target = k;
    plan.theta = std::asin(std::pow(2.0, -0.5 * static_cast<double>(qubits)));
    // int() truncates toward zero. At N = 1, pi/(4 theta) is 1 up to rounding.
    const double ratio = std::numbers::pi / (4.0 * plan.theta);
    const double nearest = std::round(ratio);
    plan.iterations = static_cast<std::size_t>(std::abs(ratio - nearest) < 1e-12 ? nearest : std::trunc(ratio));
    plan.predicted_amplitude = predicted_amplitude_after(plan.iterations, plan.theta);
    return plan;
}

double predicted_amplitude_after(std::size_t rounds, double theta) {
    return std::sin((2.0 * static_cast<double>(rounds) + 1.0) * theta);
}

Amplification amplify(const QuantumState& initial, std::size_t k, IterationMode mode) {
    require_register(initial.dim());
    check_label(k, initial.dim());
    const GroverPlan plan = make_plan(qubits_of(initial.dim()), k);

    Amplification out{.final_state = initial};
    if (mode == IterationMode::kPlannedRounds) {
        out.iterations = plan.iterations;
        out.final_state = grover_iterate(initial, k, plan.iterations);
    } else {
        const std::size_t scan_end = 2 * plan.iterations + 2;
        QuantumState current = initial;
        double best = std::norm(current.amplitude(k));
        out.iterations = 0;
        out.final_state = current;
        for (std::size_t j = 1; j <= scan_end; ++j) {
            current = grover_iterate(current, k, 1);
            const double p = std::norm(current.amplitude(k));
            // Ties within rounding keep the smaller round count.
            if (p > best + 1e-12) {
                best = p;
                out.iterations = j;
                out.final_state = current;
            }
        }
    }
    out.exact_probability = std::norm(out.final_state.amplitude(k));
    const double predicted = predicted_amplitude_after(out.iterations, plan.theta);
    out.predicted_probability = predicted * predicted;
    out.diverges_from_prediction = std::abs(out.exact_probability - out.predicted_probability) > 1e-6;
    return out;
}

}  // namespace eigenctl
