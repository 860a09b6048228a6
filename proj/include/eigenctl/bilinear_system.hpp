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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "eigenctl/statevec.hpp"

namespace eigenctl {

using Matrix = Eigen::MatrixXcd;

/// Tolerance on ||X + X^dagger|| entries for a generator to count as skew-Hermitian.
inline constexpr double kSkewTolerance = 1e-10;

/// d|psi>/dt = (A + sum_i u_i(t) B_i)|psi>, with hbar = 1 so that the
/// internal Hamiltonian is H0 = iA.
class BilinearSystem {
 public:
    /// Throws ValidationError naming the offending entry when a generator is
    /// not skew-Hermitian, and when n < 2 or there are no controls.
    BilinearSystem(Matrix drift, std::vector<Matrix> controls);

    std::size_t levels() const { return static_cast<std::size_t>(drift_.rows()); }
    std::size_t control_count() const { return controls_.size(); }
    const Matrix& drift() const { return drift_; }
    const std::vector<Matrix>& controls() const { return controls_; }

    /// A + sum_i u_i B_i.
    template <typename Vec>
    Matrix generator(const Vec& u) const {
        Matrix g = drift_;
        for (std::size_t i = 0; i < controls_.size(); ++i) {
            g += u[static_cast<Eigen::Index>(i)] * controls_[i];
        }
        return g;
    }

 private:
    Matrix drift_;
    std::vector<Matrix> controls_;
};

struct EigenstateSet {
    std::vector<QuantumState> states;  // physical basis, dim n
    std::vector<double> energies;      // ascending
    bool degenerate = false;

    /// Columns are the eigenstates.
    Matrix basis_matrix() const;
    /// Coefficients c_i = <e_i|psi> of psi in the eigenbasis.
    QuantumState coefficients_of(const QuantumState& psi) const;
};

/// Orthonormal eigenbasis of H0 = iA, energies ascending. Each eigenvector is
/// phase-fixed so its largest-magnitude component is real and positive.
/// Spectra with gaps below degeneracy_tol are flagged degenerate.
EigenstateSet eigenstates(const BilinearSystem& system, double degeneracy_tol = 1e-8);

}  // namespace eigenctl
