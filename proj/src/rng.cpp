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

#include "nsbasis/rng.h"

#include <cmath>

namespace nsbasis {

double CounterRng::normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) {
        u1 = 1e-300;
    }
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Mat2 random_su2(CounterRng &rng) {
    double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
    double n = std::sqrt(a * a + b * b + c * c + d * d);
    cplx alpha(a / n, b / n), beta(c / n, d / n);
    Mat2 m;
    m << alpha, -std::conj(beta), beta, std::conj(alpha);
    return m;
}

Mat4 random_unitary4(CounterRng &rng) {
    Mat4 g;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            g(i, j) = cplx(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<Mat4> qr(g);
    Mat4 q = qr.householderQ();
    Mat4 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 4; j++) {
        cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace nsbasis
