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

#include "nsbasis/feasibility.h"

#include <cmath>

#include "gtest/gtest.h"
#include "nsbasis/errors.h"
#include "nsbasis/inequality_table.h"
#include "nsbasis/rng.h"
#include "nsbasis/synth.h"

using namespace nsbasis;

namespace {

CanonicalCoordinate random_chamber_point(CounterRng &rng) {
    for (;;) {
        double x = rng.uniform(), y = 0.5 * rng.uniform(), z = 0.5 * rng.uniform();
        if (z <= y && y <= x && x <= 1 - y) {
            return canonicalize(x, y, z);
        }
    }
}

/// Numerical two-layer oracle: success iff some restart converges to an exact decomposition.
bool numeric_two_layer(const CanonicalCoordinate &target, const CanonicalCoordinate &b1, const CanonicalCoordinate &b2,
                       uint64_t seed) {
    SynthesisOptions o;
    o.restarts = 32;
    o.seed = seed;
    o.threshold = 1e-12;
    GateDecomposition d = synthesize_best(canonical_gate(target), {canonical_gate(b1), canonical_gate(b2)}, o);
    return d.infidelity < 1e-12;
}

Trajectory ideal(std::function<std::array<double, 3>(double)> path, double t_end, int n) {
    std::vector<std::array<double, 3>> pts;
    for (int k = 0; k <= n; k++) {
        pts.push_back(path(t_end * k / n));
    }
    return trajectory_from_coordinates(pts, 1e-9);
}

}  // namespace

TEST(feasibility, inequality_table_self_check) {
    EXPECT_NO_THROW(verify_phase_inequalities());
    EXPECT_EQ(phase_inequalities().size(), 72u);
}

TEST(feasibility, mirror_examples) {
    CanonicalCoordinate m = mirror_point(points::kCnot);
    EXPECT_NEAR(m.tx, 0.5, 1e-12);
    EXPECT_NEAR(m.ty, 0.5, 1e-12);
    EXPECT_NEAR(m.tz, 0, 1e-12);
    CanonicalCoordinate s = mirror_point(points::kSqrtSwap);
    EXPECT_NEAR(weyl_distance(s, points::kSqrtSwap), 0, 1e-12);
    CounterRng rng(1, 0);
    for (int i = 0; i < 1000; i++) {
        CanonicalCoordinate c = random_chamber_point(rng);
        EXPECT_LE(weyl_distance(mirror_point(mirror_point(c)), c), 1e-12);
    }
}

TEST(feasibility, mirror_preserves_b_to_sqrt_swap_segment) {
    for (int k = 0; k <= 20; k++) {
        double s = k / 20.0;
        for (const auto &end : {points::kSqrtSwap, points::kSqrtSwapDag}) {
            CanonicalCoordinate p = canonicalize(points::kB.tx + s * (end.tx - points::kB.tx),
                                                 points::kB.ty + s * (end.ty - points::kB.ty),
                                                 points::kB.tz + s * (end.tz - points::kB.tz));
            EXPECT_LE(weyl_distance(mirror_point(p), p), 1e-12);
            EXPECT_EQ(swap_min_layers(p), SwapLayers::Two);
            EXPECT_TRUE(two_layer_feasible(points::kSwap, p, p));
        }
    }
}

TEST(feasibility, two_layer_examples) {
    EXPECT_FALSE(two_layer_feasible(points::kSwap, points::kCnot, points::kCnot));
    EXPECT_TRUE(two_layer_feasible(points::kSwap, points::kCnot, points::kIswap));
    EXPECT_TRUE(two_layer_feasible(points::kCnot, points::kSqrtIswap, points::kSqrtIswap));
    EXPECT_FALSE(two_layer_feasible(points::kSwap, points::kSqrtIswap, points::kSqrtIswap));
    CounterRng rng(2, 0);
    for (int i = 0; i < 500; i++) {
        EXPECT_TRUE(two_layer_feasible(random_chamber_point(rng), points::kB, points::kB));
    }
}

TEST(feasibility, swap_min_layers_examples) {
    EXPECT_EQ(swap_min_layers(points::kSwap), SwapLayers::One);
    EXPECT_EQ(swap_min_layers(points::kB), SwapLayers::Two);
    EXPECT_EQ(swap_min_layers(points::kSqrtSwap), SwapLayers::Two);
    EXPECT_EQ(swap_min_layers(points::kCnot), SwapLayers::Three);
    EXPECT_EQ(swap_min_layers(points::kSqrtIswap), SwapLayers::Three);
    EXPECT_EQ(swap_min_layers({0.125, 0.0625, 0}), SwapLayers::MoreThan3);
    EXPECT_EQ(swap_min_layers(points::kIdentity), SwapLayers::MoreThan3);
}

TEST(feasibility, cnot_two_layer_examples) {
    EXPECT_TRUE(cnot_two_layer(points::kSqrtIswap));
    EXPECT_TRUE(cnot_two_layer(points::kCnot));
    EXPECT_FALSE(cnot_two_layer({0.15, 0.05, 0.02}));
    EXPECT_FALSE(cnot_two_layer({1.0 / 6, 1.0 / 6, 1.0 / 6}));
    EXPECT_TRUE(swap3_region().contains({1.0 / 6, 1.0 / 6, 1.0 / 6}));
}

TEST(feasibility, region_boundaries_on_chamber_faces) {
    // Edges of excluded tetrahedra lying on chamber faces stay excluded.
    EXPECT_FALSE(swap3_region().contains({0.1, 0.1, 0}));
    EXPECT_FALSE(swap3_region().contains({0.2, 0, 0}));
    EXPECT_TRUE(swap3_region().contains({0.3, 0.3, 0}));
    EXPECT_TRUE(swap3_region().contains(points::kB));
    EXPECT_FALSE(cnot2_region().contains({0.2, 0.2, 0}));
    EXPECT_TRUE(cnot2_region().contains({0.25, 0.25, 0}));
}

TEST(feasibility, swap3_agrees_with_mirror_feasibility) {
    CounterRng rng(3, 0);
    for (int i = 0; i < 2000; i++) {
        CanonicalCoordinate g = random_chamber_point(rng);
        bool three = swap_min_layers(g) == SwapLayers::Three;
        EXPECT_EQ(three, two_layer_feasible(mirror_point(g), g, g)) << g.tx << " " << g.ty << " " << g.tz;
    }
}

TEST(feasibility, cnot2_agrees_with_inequalities) {
    CounterRng rng(4, 0);
    for (int i = 0; i < 2000; i++) {
        CanonicalCoordinate g = random_chamber_point(rng);
        EXPECT_EQ(cnot_two_layer(g), two_layer_feasible(points::kCnot, g, g)) << g.tx << " " << g.ty << " " << g.tz;
    }
}

TEST(feasibility, perfect_entangler_region_matches_half_spaces) {
    CounterRng rng(5, 0);
    for (int i = 0; i < 5000; i++) {
        CanonicalCoordinate g = random_chamber_point(rng);
        EXPECT_EQ(perfect_entangler_region().contains(g, 0.0), is_perfect_entangler(g, 0.0));
    }
}

TEST(feasibility, half_space_matches_barycentric) {
    CounterRng rng(6, 0);
    for (const Region *r : {&swap3_region(), &cnot2_region(), &perfect_entangler_region()}) {
        for (const Tetrahedron &t : r->complement) {
            for (int i = 0; i < 10000 / 10; i++) {
                std::array<double, 3> v{rng.uniform(), rng.uniform(0, 0.5), rng.uniform(0, 0.5)};
                EXPECT_EQ(t.contains(v, 0.0), t.contains_barycentric(v, 0.0));
            }
        }
    }
}

TEST(feasibility, degenerate_tetrahedron_rejected) {
    std::array<std::array<double, 3>, 4> v{{{0, 0, 0}, {0.25, 0.25, 0}, {0.25, 0.25, 0}, {0.25, 0.25, 0.25}}};
    EXPECT_THROW(Tetrahedron{v}, std::invalid_argument);
}

TEST(feasibility, volumes) {
    VolumeEstimate pe = region_volume(perfect_entangler_region(), 200000, 7);
    VolumeEstimate s3 = region_volume(swap3_region(), 200000, 7);
    VolumeEstimate c2 = region_volume(cnot2_region(), 200000, 7);
    EXPECT_NEAR(pe.fraction, 0.5, 0.01);
    EXPECT_NEAR(s3.fraction, 0.685, 0.015);
    EXPECT_NEAR(c2.fraction, 0.75, 0.015);
    EXPECT_GT(s3.standard_error, 0);
    EXPECT_LT(s3.standard_error, 0.002);
}

TEST(feasibility, exact_complement_volumes) {
    const double chamber = 1.0 / 24;
    double s3 = 0, c2 = 0, pe = 0;
    for (const auto &t : swap3_region().complement) {
        s3 += t.volume();
    }
    for (const auto &t : cnot2_region().complement) {
        c2 += t.volume();
    }
    for (const auto &t : perfect_entangler_region().complement) {
        pe += t.volume();
    }
    EXPECT_NEAR(1 - s3 / chamber, 0.685, 0.002);
    EXPECT_NEAR(1 - c2 / chamber, 0.75, 1e-12);
    EXPECT_NEAR(1 - pe / chamber, 0.5, 1e-12);
}

TEST(feasibility, volume_is_deterministic_and_worker_independent) {
    VolumeEstimate a = region_volume(swap3_region(), 100000, 11);
    VolumeEstimate b = region_volume_serial(swap3_region(), 100000, 11);
    EXPECT_EQ(a.fraction, b.fraction);
    EXPECT_EQ(a.standard_error, b.standard_error);
}

TEST(feasibility, first_hit_on_ideal_xy_trajectory) {
    Trajectory t = ideal([](double s) { return std::array<double, 3>{s, s, 0}; }, 0.5, 100);
    HitResult h = first_hit(t, criterion1());
    EXPECT_NEAR(h.sample.coordinate.tx, 0.25, 1e-12);
    EXPECT_NEAR(h.sample.coordinate.ty, 0.25, 1e-12);
    HitResult h2 = first_hit(t, criterion2());
    EXPECT_NEAR(h2.sample.coordinate.tx, 0.25, 1e-12);
}

TEST(feasibility, first_hit_on_ideal_xx_trajectory) {
    Trajectory t = ideal([](double s) { return std::array<double, 3>{s, 0, 0}; }, 0.7, 70);
    HitResult h = first_hit(t, criterion1());
    EXPECT_NEAR(h.sample.coordinate.tx, 0.5, 1e-12);
    EXPECT_NEAR(h.sample.coordinate.ty, 0, 1e-12);
}

TEST(feasibility, first_hit_interpolates_between_samples) {
    // Entry into the swap3 region through the plane x + y + z = 1/2.
    Trajectory t = ideal([](double s) { return std::array<double, 3>{s, s, 0.1 * s}; }, 0.4, 37);
    HitResult h = first_hit(t, criterion1());
    EXPECT_TRUE(h.interpolated);
    double entry = 0.5 / 2.1;
    EXPECT_GE(h.sample.coordinate.tx, entry - 1e-9);
    EXPECT_LE(h.crossing_duration, h.sample.duration);
    EXPECT_GE(h.crossing_duration, h.sample.duration - t.spacing);
}

TEST(feasibility, first_hit_errors_inside_complement) {
    Trajectory t = ideal([](double s) { return std::array<double, 3>{s, s / 2, 0}; }, 0.1, 10);
    try {
        first_hit(t, criterion1());
        FAIL();
    } catch (const NoIntersection &e) {
        EXPECT_NEAR(e.max_duration, 10e-9, 1e-18);
    }
}

TEST(feasibility, first_hit_is_monotone_under_extension) {
    auto path = [](double s) { return std::array<double, 3>{s, 0.8 * s, 0.2 * s}; };
    Trajectory shortt = ideal(path, 0.35, 35);
    Trajectory longt = ideal(path, 0.5, 50);
    HitResult a = first_hit(shortt, criterion2());
    HitResult b = first_hit(longt, criterion2());
    EXPECT_EQ(a.index, b.index);
    EXPECT_EQ(a.sample.duration, b.sample.duration);
}

TEST(feasibility, criterion2_never_earlier_than_criterion1) {
    CounterRng rng(8, 0);
    for (int i = 0; i < 50; i++) {
        double ry = rng.uniform(0.5, 1.0), rz = rng.uniform(0, 0.5) * ry;
        auto path = [&](double s) { return std::array<double, 3>{s, ry * s, rz * s}; };
        Trajectory t = ideal(path, 0.5, 200);
        HitResult a = first_hit(t, criterion1());
        HitResult b = first_hit(t, criterion2());
        EXPECT_GE(b.sample.duration, a.sample.duration);
    }
}

TEST(feasibility, oracle_equivalence_with_numerical_synthesis) {
    CounterRng rng(2026, 0);
    int disagreements = 0, feasible = 0;
    const int n = 500;
    for (int i = 0; i < n; i++) {
        CanonicalCoordinate target = random_chamber_point(rng);
        CanonicalCoordinate b1 = random_chamber_point(rng);
        CanonicalCoordinate b2 = (i % 2 == 0) ? b1 : random_chamber_point(rng);
        bool theory = two_layer_feasible(target, b1, b2);
        bool numeric = numeric_two_layer(target, b1, b2, 1000 + i);
        feasible += theory;
        if (theory != numeric) {
            disagreements++;
            ADD_FAILURE() << "instance " << i << " theory=" << theory;
        }
    }
    EXPECT_EQ(disagreements, 0);
    EXPECT_GT(feasible, n / 10);
    EXPECT_LT(feasible, n - n / 10);
}
