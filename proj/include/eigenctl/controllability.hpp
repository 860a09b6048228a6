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
 * Dynamical Lie algebra of a bilinear system, the Lie-rank classification,
 * orbit dimensions, and certificate-backed reachability from eigenstates.
 *
 * Skew-Hermitian n x n matrices are handled as vectors in R^{2n^2} under
 * the real Hilbert-Schmidt inner product <X, Y> = Re tr(X^dagger Y).
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "eigenctl/bilinear_system.hpp"
#include "eigenctl/statevec.hpp"
#include "eigenctl/steering.hpp"

namespace eigenctl {

inline constexpr double kDefaultLieTolerance = 1e-9;
inline constexpr double kDefaultRankTolerance = 1e-8;
inline constexpr double kDefaultReachEpsilon = 1e-3;

/// Re tr(X^dagger Y).
double hs_inner(const Matrix& x, const Matrix& y);

struct LieAlgebraBasis {
    std::size_t levels = 0;
    /// HS-orthonormal skew-Hermitian generators.
    std::vector<Matrix> generators;

    std::size_t dim() const { return generators.size(); }
};

/// Smallest real Lie algebra containing A and every B_i. Seeds with the
/// generators, then appends orthonormalized commutators of basis pairs until
/// a full pass adds nothing with residual norm >= tol. tol must lie in (0, 1e-4].
LieAlgebraBasis generate_lie_algebra(const BilinearSystem& system, double tol = kDefaultLieTolerance);

/// Number of new directions a further commutator pass would add (0 for a
/// closed basis).
std::size_t closure_defect(const LieAlgebraBasis& basis, double tol = kDefaultLieTolerance);

enum class ControllabilityClass { kFullUn, kFullSUn, kNotFull };

struct Classification {
    ControllabilityClass kind = ControllabilityClass::kNotFull;
    std::size_t lie_dim = 0;
};

Classification classify(const LieAlgebraBasis& basis, double tol = kDefaultLieTolerance);
Classification is_completely_controllable(const BilinearSystem& system, double tol = kDefaultLieTolerance);

const char* to_string(ControllabilityClass kind);

/// Real dimension of {X|psi> : X in L} inside R^{2n}, by SVD with cutoff
/// rank_tol * sigma_max.
std::size_t orbit_dimension(const LieAlgebraBasis& basis, const QuantumState& psi,
                            double rank_tol = kDefaultRankTolerance);

struct ReachVerdict {
    bool reachable = false;
    /// Present iff reachable.
    std::optional<ControlSchedule> certificate;
    /// Best fidelity the search achieved (re-propagated).
    double fidelity = 0.0;
};

struct ReachabilityEntry {
    std::size_t eigenstate = 0;  // 1-based, ascending energy
    std::size_t orbit_dimension = 0;
    ReachVerdict verdict;
};

struct ReachabilityReport {
    std::vector<ReachabilityEntry> entries;

    bool any_reachable() const;
};

/// Sound-but-incomplete membership test of target in the reachable set of
/// eigenstate source (1-based). Returns Reachable only with a certificate
/// that an independent re-propagation confirms to 1e-6; otherwise Unknown.
ReachVerdict reachable_membership(const BilinearSystem& system, const EigenstateSet& eigen,
                                  std::size_t source, const QuantumState& target,
                                  const SteeringConfig& budget, double epsilon = kDefaultReachEpsilon);

/// One reachable_membership per eigenstate, plus its orbit dimension.
ReachabilityReport analyze_reachability(const BilinearSystem& system, const EigenstateSet& eigen,
                                        const LieAlgebraBasis& lie, const QuantumState& target,
                                        const SteeringConfig& budget, double epsilon = kDefaultReachEpsilon,
                                        double rank_tol = kDefaultRankTolerance);

/// Among Reachable entries, the label whose slot in psi0_embedded carries the
/// largest |amplitude|; ties go to the smallest label. Throws NotSteerable
/// when no entry is Reachable.
std::size_t choose_eigenstate(const QuantumState& psi0_embedded, const ReachabilityReport& report);

}  // namespace eigenctl
