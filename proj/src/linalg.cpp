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

#include "nsbasis/linalg.h"

#include <algorithm>
#include <cmath>

namespace nsbasis {

namespace pauli {
Mat2 I() {
    return Mat2::Identity();
}
Mat2 X() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}
Mat2 Y() {
    Mat2 m;
    m << 0, -kI, kI, 0;
    return m;
}
Mat2 Z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}
Mat2 axis(int k) {
    switch (k) {
        case 0:
            return X();
        case 1:
            return Y();
        default:
            return Z();
    }
}
}  // namespace pauli

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs_diff(const MatX &a, const MatX &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const MatX &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    return (u.adjoint() * u - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double trace_infidelity(const MatX &a, const MatX &b) {
    double d = (double)a.rows();
    double t = std::abs((a.adjoint() * b).trace());
    return std::max(0.0, 1.0 - t * t / (d * d));
}

bool equal_up_to_phase(const MatX &a, const MatX &b, double tol) {
    cplx overlap = (a.adjoint() * b).trace();
    if (std::abs(overlap) < 1e-300) {
        return false;
    }
    cplx phase = overlap / std::abs(overlap);
    return max_abs_diff(a * phase, b) <= tol;
}

MatX expm_hermitian(const MatX &h, double dt) {
    const Eigen::Index n = h.rows();
    MatX a = h * cplx(0.0, -dt);
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm > 0.25) {
        norm *= 0.5;
        squarings++;
    }
    a /= std::ldexp(1.0, squarings);
    MatX result = MatX::Identity(n, n);
    MatX term = MatX::Identity(n, n);
    for (int k = 1; k < 30; k++) {
        term = term * a / (double)k;
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) {
            break;
        }
    }
    for (int s = 0; s < squarings; s++) {
        result = result * result;
    }
    return result;
}

MatX polar_unitary(const MatX &m) {
    Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Mat2 rz(double angle) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::exp(cplx(0, -angle / 2));
    m(1, 1) = std::exp(cplx(0, angle / 2));
    return m;
}

Mat2 ry(double angle) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

Mat2 rx(double angle) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    Mat2 m;
    m << c, cplx(0, -s), cplx(0, -s), c;
    return m;
}

Mat2 euler_zyz(double a, double b, double c) {
    return rz(a) * ry(b) * rz(c);
}

ZyzAngles zyz_angles(const Mat2 &u) {
    cplx det = u.determinant();
    double phase = std::arg(det) / 2;
    Mat2 v = u * std::exp(cplx(0, -phase));
    // v = [[e^{-i(a+c)/2} cos(b/2), -e^{-i(a-c)/2} sin(b/2)], [e^{i(a-c)/2} sin(b/2), e^{i(a+c)/2} cos(b/2)]]
    double b = 2 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
    double sum = 2 * std::arg(v(1, 1));
    double diff = 2 * std::arg(v(1, 0));
    if (std::abs(v(0, 0)) < 1e-12) {
        sum = 0;
    }
    if (std::abs(v(1, 0)) < 1e-12) {
        diff = 0;
    }
    double a = (sum + diff) / 2;
    double c = (sum - diff) / 2;
    Mat2 w = euler_zyz(a, b, c);
    cplx overlap = (w.adjoint() * u).trace() / 2.0;
    return {a, b, c, std::arg(overlap)};
}

}  // namespace nsbasis
