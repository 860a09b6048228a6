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

// Random generators and brute-force oracles shared by the test binaries.
// Nothing here calls into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "eigenctl/bilinear_system.hpp"
#include "eigenctl/statevec.hpp"

namespace eigenctl::testutil {

inline const Complex kI{0.0, 1.0};

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}
inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return v.cast<Complex>().asDiagonal();
}

/// -i sigma_z drift with a -i sigma_x control: the su(2) pair.
inline BilinearSystem su2_system() { return BilinearSystem(-kI * pauli_z(), {-kI * pauli_x()}); }

/// Drift and one control, both diagonal and independent.
inline BilinearSystem diagonal_system() { return BilinearSystem(-kI * diag({0.0, 1.0}), {-kI * diag({1.0, -0.5})}); }

/// Drift proportional to the identity (a pure global phase) with a -i sigma_x control.
inline BilinearSystem rabi_system() { return BilinearSystem(-kI * Matrix::Identity(2, 2), {-kI * pauli_x()}); }

inline Amplitudes random_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Amplitudes v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
    return v;
}

/// Haar-random pure state.
inline QuantumState random_state(std::size_t dim, std::mt19937_64& rng) {
    return QuantumState::normalized(random_vector(dim, rng));
}

inline Matrix random_skew_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(g(rng), g(rng));
    }
    return 0.5 * (m - m.adjoint());
}

/// Haar-random unitary via QR of a Ginibre matrix.
inline Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(g(rng), g(rng));
    }
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex d = qr.matrixQR()(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

/// Dense 2|s><s| - I.
inline Matrix dense_us(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Matrix::Constant(d, d, Complex(2.0 / static_cast<double>(dim), 0.0)) - Matrix::Identity(d, d);
}

/// Dense I - 2|k><k|, k 1-based.
inline Matrix dense_uk(std::size_t dim, std::size_t k) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix m = Matrix::Identity(d, d);
    m(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k - 1)) = -1.0;
    return m;
}

/// Textbook triple loop y = M x.
inline Amplitudes naive_matvec(const Matrix& m, const Amplitudes& x) {
    Amplitudes y = Amplitudes::Zero(m.rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Complex acc = 0.0;
        for (Eigen::Index c = 0; c < m.cols(); ++c) acc += m(r, c) * x(c);
        y(r) = acc;
    }
    return y;
}

/// Propagation through Eigen's Pade matrix exponential, independent of the
/// eigen-decomposition route used by the library.
inline Amplitudes pade_propagate(const BilinearSystem& sys, const Eigen::MatrixXd& u, double dt, const Amplitudes& psi) {
    Amplitudes out = psi;
    for (Eigen::Index j = 0; j < u.rows(); ++j) {
        Matrix g = sys.drift();
        for (std::size_t i = 0; i < sys.control_count(); ++i) g += u(j, static_cast<Eigen::Index>(i)) * sys.controls()[i];
        out = Matrix((g * dt).exp()) * out;
    }
    return out;
}

}  // namespace eigenctl::testutil

namespace eigenctl::testutil {

/// Four-level ladder: non-degenerate drift, one control coupling neighbours.
inline BilinearSystem ladder4_system() {
    Matrix b = Matrix::Zero(4, 4);
    for (Eigen::Index i = 0; i + 1 < 4; ++i) {
        b(i, i + 1) = 1.0;
        b(i + 1, i) = 1.0;
    }
    return BilinearSystem(-kI * diag({0.0, 1.0, 2.3, 3.7}), {-kI * b});
}

/// Three levels where level 1 is decoupled: the control only mixes levels 2
/// and 3, so nothing leaves |1> and nothing enters it.
inline BilinearSystem split3_system() {
    Matrix b = Matrix::Zero(3, 3);
    b(1, 2) = 1.0;
    b(2, 1) = 1.0;
    return BilinearSystem(-kI * diag({0.0, 1.0, 1.6}), {-kI * b});
}

}  // namespace eigenctl::testutil
