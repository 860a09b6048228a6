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

#include "eigenctl/controllability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "eigenctl/errors.hpp"

namespace eigenctl {

namespace {

void check_skew_hermitian(const Matrix& x, const std::string& name, std::size_t n) {
    if (static_cast<std::size_t>(x.rows()) != n || static_cast<std::size_t>(x.cols()) != n) {
        std::ostringstream msg;
        msg << name << ": expected a " << n << "x" << n << " matrix, got " << x.rows() << "x" << x.cols();
        throw ValidationError(msg.str());
    }
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const Complex sum = x(i, j) + std::conj(x(j, i));
            if (!std::isfinite(std::abs(x(i, j))) || std::abs(sum) > kSkewTolerance) {
                std::ostringstream msg;
                msg << name << "[" << i << "][" << j << "]: generator is not skew-Hermitian (|X + X^dagger| = "
                    << std::abs(sum) << ")";
                throw ValidationError(msg.str());
            }
        }
    }
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

/// Orthogonalizes candidate against basis (two Gram-Schmidt sweeps) and
/// appends it normalized when the residual norm reaches tol.
bool try_append(std::vector<Matrix>& basis, Matrix candidate, double tol) {
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (const Matrix& b : basis) {
            candidate -= hs_inner(b, candidate) * b;
        }
    }
    const double norm = std::sqrt(std::max(0.0, hs_inner(candidate, candidate)));
    if (norm < tol) {
        return false;
    }
    candidate /= norm;
    // Re-skew against accumulated rounding.
    candidate = 0.5 * (candidate - candidate.adjoint()).eval();
    basis.push_back(std::move(candidate));
    return true;
}

void close_under_commutators(std::vector<Matrix>& basis, std::size_t n, double tol) {
    const std::size_t max_dim = n * n;
    for (std::size_t p = 0; p < basis.size() && basis.size() < max_dim; ++p) {
        for (std::size_t q = 0; q < p && basis.size() < max_dim; ++q) {
            try_append(basis, commutator(basis[q], basis[p]), tol);
        }
    }
}

}  // namespace

BilinearSystem::BilinearSystem(Matrix drift, std::vector<Matrix> controls)
    : drift_(std::move(drift)), controls_(std::move(controls)) {
    const auto n = static_cast<std::size_t>(drift_.rows());
    if (n < 2) {
        throw ValidationError("A: system needs n >= 2 levels");
    }
    if (controls_.empty()) {
        throw ValidationError("B: system needs at least one control generator");
    }
    check_skew_hermitian(drift_, "A", n);
    for (std::size_t i = 0; i < controls_.size(); ++i) {
        check_skew_hermitian(controls_[i], "B[" + std::to_string(i) + "]", n);
    }
}

Matrix EigenstateSet::basis_matrix() const {
    const auto n = static_cast<Eigen::Index>(states.size());
    Matrix v(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        v.col(c) = states[static_cast<std::size_t>(c)].amplitudes();
    }
    return v;
}

QuantumState EigenstateSet::coefficients_of(const QuantumState& psi) const {
    if (psi.dim() != states.size()) {
        throw DomainError("state dimension does not match the system");
    }
    return QuantumState::from_evolution(basis_matrix().adjoint() * psi.amplitudes());
}

EigenstateSet eigenstates(const BilinearSystem& system, double degeneracy_tol) {
    Matrix h = Complex(0.0, 1.0) * system.drift();
    h = (0.5 * (h + h.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);

    EigenstateSet out;
    const Eigen::Index n = h.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        Amplitudes v = solver.eigenvectors().col(c);
        Eigen::Index lead = 0;
        const double vmax = v.cwiseAbs().maxCoeff();
        while (std::abs(v(lead)) < vmax - 1e-12) ++lead;
        v *= std::conj(v(lead)) / std::abs(v(lead));
        v(lead) = std::abs(v(lead));
        out.states.push_back(QuantumState::normalized(std::move(v)));
        out.energies.push_back(solver.eigenvalues()(c));
    }
    for (std::size_t i = 1; i < out.energies.size(); ++i) {
        if (out.energies[i] - out.energies[i - 1] < degeneracy_tol) {
            out.degenerate = true;
        }
    }
    return out;
}

double hs_inner(const Matrix& x, const Matrix& y) { return (x.adjoint() * y).trace().real(); }

LieAlgebraBasis generate_lie_algebra(const BilinearSystem& system, double tol) {
    if (!(tol > 0.0) || tol > 1e-4) {
        throw DomainError("Lie closure tolerance must lie in (0, 1e-4]");
    }
    const std::size_t n = system.levels();
    LieAlgebraBasis out{.levels = n, .generators = {}};
    try_append(out.generators, system.drift(), tol);
    for (const Matrix& b : system.controls()) {
        try_append(out.generators, b, tol);
    }
    close_under_commutators(out.generators, n, tol);
    return out;
}

std::size_t closure_defect(const LieAlgebraBasis& basis, double tol) {
    std::vector<Matrix> extended = basis.generators;
    const std::size_t d = basis.generators.size();
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = 0; q < p; ++q) {
            try_append(extended, commutator(basis.generators[q], basis.generators[p]), tol);
        }
    }
    return extended.size() - d;
}

Classification classify(const LieAlgebraBasis& basis, double tol) {
    const std::size_t n = basis.levels;
    Classification out{.kind = ControllabilityClass::kNotFull, .lie_dim = basis.dim()};
    if (basis.dim() == n * n) {
        out.kind = ControllabilityClass::kFullUn;
    } else if (basis.dim() + 1 == n * n) {
        const double trace_tol = std::max(tol, 1e-8);
        const bool traceless = std::all_of(basis.generators.begin(), basis.generators.end(),
                                           [&](const Matrix& x) { return std::abs(x.trace()) < trace_tol; });
        if (traceless) {
            out.kind = ControllabilityClass::kFullSUn;
        }
    }
    return out;
}

Classification is_completely_controllable(const BilinearSystem& system, double tol) {
    return classify(generate_lie_algebra(system, tol), tol);
}

const char* to_string(ControllabilityClass kind) {
    switch (kind) {
        case ControllabilityClass::kFullUn:
            return "FullUn";
        case ControllabilityClass::kFullSUn:
            return "FullSUn";
        case ControllabilityClass::kNotFull:
            return "NotFull";
    }
    return "NotFull";
}

std::size_t orbit_dimension(const LieAlgebraBasis& basis, const QuantumState& psi, double rank_tol) {
    if (psi.dim() != basis.levels) {
        throw DomainError("state dimension does not match the Lie algebra");
    }
    if (basis.generators.empty()) {
        return 0;
    }
    const auto n = static_cast<Eigen::Index>(basis.levels);
    Eigen::MatrixXd tangent(2 * n, static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t l = 0; l < basis.dim(); ++l) {
        const Amplitudes v = basis.generators[l] * psi.amplitudes();
        const auto col = static_cast<Eigen::Index>(l);
        tangent.block(0, col, n, 1) = v.real();
        tangent.block(n, col, n, 1) = v.imag();
    }
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(tangent).singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    const double cutoff = rank_tol * sv(0);
    return static_cast<std::size_t>((sv.array() > cutoff).count());
}

bool ReachabilityReport::any_reachable() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.verdict.reachable; });
}

ReachVerdict reachable_membership(const BilinearSystem& system, const EigenstateSet& eigen, std::size_t source,
                                  const QuantumState& target, const SteeringConfig& budget, double epsilon) {
    if (source < 1 || source > eigen.states.size()) {
        throw DomainError("source eigenstate label out of range");
    }
    if (target.dim() != system.levels()) {
        throw DomainError("target dimension does not match the system");
    }
    const QuantumState& start = eigen.states[source - 1];
    const double threshold = 1.0 - epsilon;

    std::optional<ControlSchedule> candidate;
    double claimed = 0.0;
    if (fidelity(start, target) >= threshold) {
        // Zero controls keep an eigenstate in place up to a phase.
        candidate = ControlSchedule::zero(budget.segments, system.control_count(), budget.dt);
        claimed = fidelity_objective(system, *candidate, start, target);
    } else {
        SteeringConfig cfg = budget;
        cfg.stop_fidelity = std::min(budget.stop_fidelity, 1.0 - 0.1 * epsilon);
        SteeringResult found = optimize_controls(system, start, target, cfg);
        claimed = found.fidelity;
        candidate = std::move(found.schedule);
    }

    ReachVerdict verdict;
    verdict.fidelity = claimed;
    if (claimed >= threshold) {
        const double check = fidelity(propagate(system, *candidate, start), target);
        if (std::abs(check - claimed) <= 1e-6 && check >= threshold) {
            verdict.reachable = true;
            verdict.certificate = std::move(candidate);
        }
    }
    return verdict;
}

ReachabilityReport analyze_reachability(const BilinearSystem& system, const EigenstateSet& eigen,
                                        const LieAlgebraBasis& lie, const QuantumState& target,
                                        const SteeringConfig& budget, double epsilon, double rank_tol) {
    ReachabilityReport report;
    for (std::size_t k = 1; k <= eigen.states.size(); ++k) {
        ReachabilityEntry entry;
        entry.eigenstate = k;
        entry.orbit_dimension = orbit_dimension(lie, eigen.states[k - 1], rank_tol);
        entry.verdict = reachable_membership(system, eigen, k, target, budget, epsilon);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::size_t choose_eigenstate(const QuantumState& psi0_embedded, const ReachabilityReport& report) {
    std::optional<std::size_t> best;
    double best_mag = -1.0;
    for (const auto& e : report.entries) {
        if (!e.verdict.reachable) continue;
        const double mag = std::abs(psi0_embedded.amplitude(e.eigenstate));
        if (mag > best_mag + 1e-12 || (std::abs(mag - best_mag) <= 1e-12 && e.eigenstate < *best)) {
            best = e.eigenstate;
            best_mag = mag;
        }
    }
    if (!best) {
        throw NotSteerable("target is not certified reachable from any eigenstate");
    }
    return *best;
}

}  // namespace eigenctl
