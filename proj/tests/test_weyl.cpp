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

#include "nsbasis/weyl.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "nsbasis/errors.h"
#include "nsbasis/rng.h"

using namespace nsbasis;

namespace {

void expect_coord(const CanonicalCoordinate &c, double x, double y, double z, double tol = 1e-9) {
    EXPECT_NEAR(c.tx, x, tol);
    EXPECT_NEAR(c.ty, y, tol);
    EXPECT_NEAR(c.tz, z, tol);
}

/// Chamber representative found by scanning the Weyl-group orbit directly.
std::array<double, 3> orbit_oracle(double x, double y, double z) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static const int signs[4][3] = {{1, 1, 1}, {-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}};
    const double v[3] = {x, y, z};
    const double tol = 1e-12;
    std::vector<std::array<double, 3>> hits;
    for (const auto &p : perms) {
        for (const auto &s : signs) {
            double base[3] = {s[0] * v[p[0]], s[1] * v[p[1]], s[2] * v[p[2]]};
            for (int a = -3; a <= 3; a++) {
                for (int b = -3; b <= 3; b++) {
                    for (int c = -3; c <= 3; c++) {
                        std::array<double, 3> w{base[0] + a, base[1] + b, base[2] + c};
                        bool in = w[2] >= -tol && w[1] >= w[2] - tol && w[0] >= w[1] - tol &&
                                  w[0] <= 1 - w[1] + tol && !(w[2] <= tol && w[0] > 0.5 + tol);
                        if (in) {
                            hits.push_back(w);
                        }
                    }
                }
            }
        }
    }
    EXPECT_FALSE(hits.empty());
    for (const auto &h : hits) {
        EXPECT_NEAR(h[0], hits[0][0], 1e-9);
        EXPECT_NEAR(h[1], hits[0][1], 1e-9);
        EXPECT_NEAR(h[2], hits[0][2], 1e-9);
    }
    return hits.empty() ? std::array<double, 3>{NAN, NAN, NAN} : hits[0];
}

/// LogSpec from eigenphases of the magic-basis invariant, lifted to sum zero.
std::array<double, 4> eigenphase_logspec(const Mat4 &u) {
    const double s = 1 / std::sqrt(2.0);
    Mat4 m;
    m << s, 0, 0, kI * s, 0, kI * s, s, 0, 0, kI * s, -s, 0, s, 0, 0, -kI * s;
    Mat4 v = u / std::pow(u.determinant(), 0.25);
    Mat4 ub = m.adjoint() * v * m;
    Mat4 gamma = ub * ub.transpose();
    Eigen::ComplexEigenSolver<Mat4> es(gamma);
    std::array<double, 4> ph;
    for (int j = 0; j < 4; j++) {
        ph[j] = -std::arg(es.eigenvalues()(j)) / (2 * kPi);
    }
    std::sort(ph.begin(), ph.end(), std::greater<>());
    long lift = std::lround(ph[0] + ph[1] + ph[2] + ph[3]);
    for (long i = 0; i < lift; i++) {
        ph[i] -= 1;
    }
    for (long i = 0; i < -lift; i++) {
        ph[3 - i] += 1;
    }
    std::sort(ph.begin(), ph.end(), std::greater<>());
    return ph;
}

Mat4 random_local(CounterRng &rng) {
    return kron(random_su2(rng), random_su2(rng));
}

}  // namespace

TEST(weyl, named_gate_coordinates) {
    expect_coord(cartan_coordinate(gates::identity()), 0, 0, 0);
    expect_coord(cartan_coordinate(gates::cnot()), 0.5, 0, 0);
    expect_coord(cartan_coordinate(gates::cz()), 0.5, 0, 0);
    expect_coord(cartan_coordinate(gates::swap()), 0.5, 0.5, 0.5);
    expect_coord(cartan_coordinate(gates::iswap()), 0.5, 0.5, 0);
    expect_coord(cartan_coordinate(gates::sqrt_iswap()), 0.25, 0.25, 0);
    expect_coord(cartan_coordinate(gates::sqrt_swap()), 0.25, 0.25, 0.25);
    expect_coord(cartan_coordinate(gates::sqrt_swap().adjoint()), 0.75, 0.25, 0.25);
    expect_coord(cartan_coordinate(gates::b_gate()), 0.5, 0.25, 0);
}

TEST(weyl, local_dressing_of_cnot) {
    CounterRng rng(11, 0);
    for (int i = 0; i < 50; i++) {
        Mat4 u = random_local(rng) * gates::cnot() * random_local(rng);
        expect_coord(cartan_coordinate(u), 0.5, 0, 0, 1e-8);
    }
}

TEST(weyl, rejects_non_unitary) {
    Mat4 m = gates::cnot();
    m(0, 0) = 1.01;
    EXPECT_THROW(kak_decompose(m), NonUnitaryInput);
    EXPECT_THROW(Unitary2Q{m}, NonUnitaryInput);
}

TEST(weyl, random_round_trip) {
    CounterRng rng(2024, 0);
    for (int i = 0; i < 2000; i++) {
        Mat4 u = random_unitary4(rng);
        KakFactorization k = kak_decompose(u);
        ASSERT_LE(max_abs_diff(k.reassemble(), u), 1e-8) << "sample " << i;
        ASSERT_TRUE(k.coordinate.in_chamber()) << k.coordinate.tx << " " << k.coordinate.ty << " " << k.coordinate.tz;
    }
}

TEST(weyl, round_trip_on_chamber_boundaries) {
    CounterRng rng(5, 1);
    const std::vector<std::array<double, 3>> pts = {
        {0, 0, 0},       {0.5, 0, 0},     {0.5, 0.5, 0.5}, {0.5, 0.5, 0},   {0.25, 0.25, 0},
        {0.75, 0.25, 0.25}, {0.3, 0.3, 0.3}, {0.6, 0.4, 0.2}, {0.3, 0.2, 0},   {0.7, 0.3, 0.1},
        {0.9, 0.1, 0.1}, {1.0, 0, 0},     {0.25, 0.25, 0.25},
    };
    for (const auto &p : pts) {
        for (int rep = 0; rep < 10; rep++) {
            Mat4 u = random_local(rng) * canonical_gate(p[0], p[1], p[2]) * random_local(rng);
            KakFactorization k = kak_decompose(u);
            ASSERT_LE(max_abs_diff(k.reassemble(), u), 1e-8);
            CanonicalCoordinate want = canonicalize(p);
            EXPECT_LE(weyl_distance(k.coordinate, want), 1e-7);
        }
    }
}

TEST(weyl, local_invariance) {
    CounterRng rng(99, 0);
    for (int i = 0; i < 200; i++) {
        Mat4 u = random_unitary4(rng);
        CanonicalCoordinate a = cartan_coordinate(u);
        CanonicalCoordinate b = cartan_coordinate(random_local(rng) * u * random_local(rng));
        EXPECT_LE(weyl_distance(a, b), 1e-8);
        EXPECT_NEAR(a.tx, b.tx, 1e-8);
        EXPECT_NEAR(a.ty, b.ty, 1e-8);
        EXPECT_NEAR(a.tz, b.tz, 1e-8);
    }
}

TEST(weyl, canonicalize_examples) {
    expect_coord(canonicalize(0, 0.5, 0.5), 0.5, 0.5, 0);
    expect_coord(canonicalize(0.5, 0, 0), 0.5, 0, 0);
    expect_coord(canonicalize(0.7, 0.2, 0), 0.3, 0.2, 0);
}

TEST(weyl, canonicalize_matches_orbit_oracle_on_grid) {
    for (int i = 0; i <= 20; i++) {
        for (int j = 0; j <= 20; j++) {
            for (int k = 0; k <= 20; k++) {
                double x = -1 + 0.1 * i, y = -1 + 0.1 * j, z = -1 + 0.1 * k;
                CanonicalCoordinate c = canonicalize(x, y, z);
                ASSERT_TRUE(c.in_chamber()) << x << " " << y << " " << z;
                auto want = orbit_oracle(x, y, z);
                ASSERT_NEAR(c.tx, want[0], 1e-9) << x << " " << y << " " << z;
                ASSERT_NEAR(c.ty, want[1], 1e-9) << x << " " << y << " " << z;
                ASSERT_NEAR(c.tz, want[2], 1e-9) << x << " " << y << " " << z;
                CanonicalCoordinate again = canonicalize(c.as_array());
                ASSERT_EQ(again, c);
            }
        }
    }
}

TEST(weyl, canonicalize_matches_gate_coordinates) {
    CounterRng rng(3, 3);
    for (int i = 0; i < 300; i++) {
        double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2), z = rng.uniform(-2, 2);
        CanonicalCoordinate c = canonicalize(x, y, z);
        CanonicalCoordinate from_gate = cartan_coordinate(canonical_gate(x, y, z));
        EXPECT_LE(weyl_distance(c, from_gate), 1e-8);
        EXPECT_NEAR(c.tx, from_gate.tx, 1e-8);
    }
}

TEST(weyl, logspec_examples) {
    LogSpec cnot = to_logspec(points::kCnot);
    EXPECT_NEAR(cnot.v[0], 0.25, 1e-12);
    EXPECT_NEAR(cnot.v[1], 0.25, 1e-12);
    EXPECT_NEAR(cnot.v[2], -0.25, 1e-12);
    EXPECT_NEAR(cnot.v[3], -0.25, 1e-12);
    LogSpec r = rho(cnot);
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(r.v[i], cnot.v[i], 1e-12);
    }
    LogSpec id = to_logspec(points::kIdentity);
    for (double v : id.v) {
        EXPECT_NEAR(v, 0, 1e-15);
    }
    LogSpec isw = to_logspec(points::kIswap);
    LogSpec risw = rho(isw);
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(risw.v[i], isw.v[i], 1e-12);
    }
}

TEST(weyl, logspec_matches_eigenphase_oracle) {
    CounterRng rng(8, 0);
    std::vector<Mat4> us = {gates::cnot(), gates::iswap(), gates::swap(), gates::sqrt_swap(), gates::b_gate()};
    for (int i = 0; i < 200; i++) {
        us.push_back(random_unitary4(rng));
    }
    for (const Mat4 &u : us) {
        // The fourth-root branch of det(u) selects l or rho(l).
        LogSpec l = to_logspec(cartan_coordinate(u));
        LogSpec r = rho(l);
        auto oracle = eigenphase_logspec(u);
        double dl = 0, dr = 0;
        for (int j = 0; j < 4; j++) {
            dl = std::max(dl, std::abs(l.v[j] - oracle[j]));
            dr = std::max(dr, std::abs(r.v[j] - oracle[j]));
        }
        EXPECT_LE(std::min(dl, dr), 1e-8);
    }
}

TEST(weyl, logspec_round_trip_and_rho) {
    CounterRng rng(4, 4);
    for (int i = 0; i < 500; i++) {
        CanonicalCoordinate c = canonicalize(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        LogSpec l = to_logspec(c);
        double sum = l.v[0] + l.v[1] + l.v[2] + l.v[3];
        EXPECT_NEAR(sum, std::round(sum), 1e-9);
        EXPECT_GE(l.v[0], l.v[1]);
        EXPECT_GE(l.v[1], l.v[2]);
        EXPECT_GE(l.v[2], l.v[3]);
        EXPECT_LE(weyl_distance(from_logspec(l), c), 1e-12);
        // rho is an involution and preserves the class.
        LogSpec rr = rho(rho(l));
        for (int j = 0; j < 4; j++) {
            EXPECT_NEAR(rr.v[j], l.v[j], 1e-12);
        }
        EXPECT_LE(weyl_distance(from_logspec(rho(l)), c), 1e-12);
    }
}

TEST(weyl, entangling_power_values) {
    EXPECT_NEAR(entangling_power(points::kCnot), 2.0 / 9, 1e-12);
    EXPECT_NEAR(entangling_power(points::kIswap), 2.0 / 9, 1e-12);
    EXPECT_NEAR(entangling_power(points::kB), 2.0 / 9, 1e-12);
    EXPECT_NEAR(entangling_power(points::kSwap), 0, 1e-12);
    EXPECT_NEAR(entangling_power(points::kIdentity), 0, 1e-12);
    EXPECT_NEAR(entangling_power(points::kSqrtSwap), 1.0 / 6, 1e-12);
    EXPECT_NEAR(entangling_power(points::kSqrtSwapDag), 1.0 / 6, 1e-12);
    EXPECT_NEAR(entangling_power(points::kSqrtIswap), 1.0 / 6, 1e-12);
}

TEST(weyl, entangling_power_is_orbit_invariant) {
    CounterRng rng(12, 0);
    for (int i = 0; i < 200; i++) {
        CanonicalCoordinate c = canonicalize(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1));
        double e = entangling_power(c);
        EXPECT_GE(e, -1e-15);
        EXPECT_LE(e, 2.0 / 9 + 1e-15);
        for (const auto &img : orbit_images(c)) {
            CanonicalCoordinate raw{img[0], img[1], img[2]};
            EXPECT_NEAR(entangling_power(raw), e, 1e-12);
        }
    }
}

TEST(weyl, perfect_entangler_membership) {
    EXPECT_TRUE(is_perfect_entangler(points::kCnot));
    EXPECT_TRUE(is_perfect_entangler(points::kIswap));
    EXPECT_TRUE(is_perfect_entangler(points::kB));
    EXPECT_TRUE(is_perfect_entangler(points::kSqrtSwap));
    EXPECT_TRUE(is_perfect_entangler(points::kSqrtSwapDag));
    EXPECT_TRUE(is_perfect_entangler(points::kSqrtIswap));
    EXPECT_TRUE(is_perfect_entangler({0.75, 0.25, 0}));
    EXPECT_FALSE(is_perfect_entangler(points::kIdentity));
    EXPECT_FALSE(is_perfect_entangler(points::kSwap));
    EXPECT_FALSE(is_perfect_entangler({0.15, 0.05, 0.02}));
    EXPECT_LT(entangling_power({0.15, 0.05, 0.02}), 1.0 / 6);
}

TEST(weyl, perfect_entanglers_reach_one_sixth) {
    CounterRng rng(13, 0);
    int checked = 0;
    while (checked < 2000) {
        CanonicalCoordinate c{rng.uniform(0, 1), rng.uniform(0, 0.5), rng.uniform(0, 0.5)};
        if (!c.in_chamber()) {
            continue;
        }
        checked++;
        if (is_perfect_entangler(c)) {
            EXPECT_GE(entangling_power(c), 1.0 / 6 - 1e-12);
        }
    }
}

TEST(weyl, distance_examples) {
    EXPECT_NEAR(weyl_distance(points::kIdentity, points::kIdentity), 0, 1e-15);
    EXPECT_NEAR(weyl_distance(points::kCnot, points::kIswap), 0.5, 1e-12);
    EXPECT_NEAR(weyl_distance({0.3, 0.2, 0}, {0.7, 0.2, 0}), 0, 1e-12);
    CounterRng rng(14, 0);
    for (int i = 0; i < 100; i++) {
        CanonicalCoordinate a = canonicalize(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1));
        CanonicalCoordinate b = canonicalize(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1));
        EXPECT_NEAR(weyl_distance(a, b), weyl_distance(b, a), 1e-12);
    }
}

TEST(weyl, convention_conversion_round_trip) {
    auto v = to_convention(points::kCnot, kPi / 2);
    EXPECT_NEAR(v[0], kPi / 4, 1e-15);
    CanonicalCoordinate back = from_convention(v, kPi / 2);
    EXPECT_NEAR(back.tx, 0.5, 1e-12);
}

TEST(weyl, batch_matches_serial) {
    CounterRng rng(21, 0);
    std::vector<Mat4> us;
    for (int i = 0; i < 64; i++) {
        us.push_back(random_unitary4(rng));
    }
    auto a = batch_coordinates(us);
    auto b = batch_coordinates_serial(us);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i], b[i]);
    }
}
