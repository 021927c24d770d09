// Copyright 2026 The nsbasis Authors
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

#include <complex>
#include <Eigen/Dense>

namespace nsbasis {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

namespace pauli {
Mat2 I();
Mat2 X();
Mat2 Y();
Mat2 Z();
/// Pauli by axis index 0=X, 1=Y, 2=Z.
Mat2 axis(int k);
}  // namespace pauli

Mat4 kron(const Mat2 &a, const Mat2 &b);

/// Largest absolute entry of a - b.
double max_abs_diff(const MatX &a, const MatX &b);

/// Largest absolute entry of u^dagger u - 1.
double unitarity_defect(const MatX &u);

/// Trace infidelity 1 - |tr(a^dagger b)|^2 / d^2, insensitive to global phase.
double trace_infidelity(const MatX &a, const MatX &b);

/// True when a and b agree up to a global phase within tol (entrywise).
bool equal_up_to_phase(const MatX &a, const MatX &b, double tol);

/// exp(-i h dt) for a Hermitian h, by scaled Taylor series with squaring.
MatX expm_hermitian(const MatX &h, double dt);

/// Unitary polar factor of a square matrix.
MatX polar_unitary(const MatX &m);

Mat2 rz(double angle);
Mat2 ry(double angle);
Mat2 rx(double angle);

/// Rz(a) Ry(b) Rz(c).
Mat2 euler_zyz(double a, double b, double c);

/// Angles (a, b, c) and phase p with u = exp(i p) Rz(a) Ry(b) Rz(c).
struct ZyzAngles {
    double a, b, c, phase;
};
ZyzAngles zyz_angles(const Mat2 &u);

}  // namespace nsbasis
