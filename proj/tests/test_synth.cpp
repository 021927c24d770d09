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

#include "nsbasis/synth.h"

#include "gtest/gtest.h"
#include "nsbasis/errors.h"
#include "nsbasis/rng.h"

using namespace nsbasis;

namespace {

SynthesisOptions opts(uint64_t seed, int restarts = 32) {
    SynthesisOptions o;
    o.seed = seed;
    o.restarts = restarts;
    return o;
}

Mat4 random_local(CounterRng &rng) {
    return kron(random_su2(rng), random_su2(rng));
}

}  // namespace

TEST(synth, swap_from_three_cnots) {
    GateDecomposition d = synthesize(gates::swap(), gates::cnot(), 3, opts(1));
    EXPECT_LT(d.infidelity, 1e-8);
    EXPECT_EQ(d.depth(), 3);
    EXPECT_LE(trace_infidelity(gates::swap(), d.reassemble()), 1e-8);
}

TEST(synth, swap_from_two_cnots_fails) {
    GateDecomposition d = synthesize_best(gates::swap(), {gates::cnot(), gates::cnot()}, opts(2, 64));
    EXPECT_GT(d.infidelity, 1e-3);
    EXPECT_EQ(d.restarts_used, 64);
    try {
        synthesize(gates::swap(), gates::cnot(), 2, opts(2, 8));
        FAIL();
    } catch (const SynthesisFailed &e) {
        EXPECT_GT(e.best_infidelity, 1e-3);
        EXPECT_EQ(e.restarts, 8);
    }
}

TEST(synth, random_targets_from_two_b_layers) {
    CounterRng rng(3, 0);
    const Mat4 b = gates::b_gate();
    for (int i = 0; i < 100; i++) {
        Mat4 target = random_unitary4(rng);
        GateDecomposition d = synthesize(target, b, 2, opts(100 + i));
        EXPECT_LT(d.infidelity, 1e-8) << i;
    }
}

TEST(synth, reassembly_matches_reported_infidelity) {
    CounterRng rng(4, 0);
    for (int i = 0; i < 10; i++) {
        Mat4 target = random_unitary4(rng);
        GateDecomposition d = synthesize(target, gates::cnot(), 3, opts(200 + i));
        EXPECT_NEAR(trace_infidelity(target, d.reassemble()), d.infidelity, 1e-10);
        EXPECT_TRUE(equal_up_to_phase(target, d.reassemble(), 1e-3));
        for (const auto &l : d.locals) {
            EXPECT_LT(unitarity_defect(l[0]), 1e-12);
            EXPECT_LT(unitarity_defect(l[1]), 1e-12);
        }
    }
}

TEST(synth, min_layers_examples) {
    EXPECT_EQ(min_layers(points::kIdentity, points::kCnot).layers, 0);
    EXPECT_EQ(min_layers(points::kCnot, points::kCnot).layers, 1);
    EXPECT_EQ(min_layers(points::kSwap, points::kSwap).layers, 1);
    EXPECT_EQ(min_layers(points::kCnot, points::kSqrtIswap).layers, 2);
    EXPECT_EQ(min_layers(points::kSwap, points::kB).layers, 2);
    LayerCount s = min_layers(points::kSwap, points::kCnot);
    EXPECT_EQ(s.layers, 3);
    EXPECT_TRUE(s.analytic);
    EXPECT_EQ(min_layers(points::kSwap, points::kSqrtIswap).layers, 3);
}

TEST(synth, min_layers_numeric_search) {
    // A weak entangler that needs more than three layers for SWAP.
    LayerCount lc = min_layers(points::kSwap, canonicalize(0.25, 0.1, 0), opts(5, 16), 6);
    EXPECT_FALSE(lc.analytic);
    EXPECT_GE(lc.layers, 4);
    GateDecomposition d = synthesize(gates::swap(), canonical_gate(canonicalize(0.25, 0.1, 0)), lc.layers, opts(5, 16));
    EXPECT_LT(d.infidelity, 1e-8);
}

TEST(synth, min_layers_throws_when_depth_cap_too_small) {
    EXPECT_THROW(min_layers(points::kSwap, canonicalize(0.05, 0.01, 0), opts(6, 4), 3), SynthesisFailed);
}

TEST(synth, local_equivalence_is_invariant) {
    CounterRng rng(7, 0);
    const Mat4 basis = gates::sqrt_iswap();
    for (int i = 0; i < 5; i++) {
        Mat4 dressed = random_local(rng) * gates::cnot() * random_local(rng);
        GateDecomposition a = synthesize(gates::cnot(), basis, 2, opts(300 + i));
        GateDecomposition b = synthesize(dressed, basis, 2, opts(300 + i));
        EXPECT_LT(a.infidelity, 1e-8);
        EXPECT_LT(b.infidelity, 1e-8);
    }
}

TEST(synth, more_restarts_never_worse) {
    CounterRng rng(8, 0);
    Mat4 target = random_unitary4(rng);
    double prev = 1.0;
    for (int r : {1, 2, 4, 8, 16}) {
        SynthesisOptions o = opts(9, r);
        o.stop_at_success = false;
        GateDecomposition d = synthesize_best(target, {gates::cnot(), gates::cnot()}, o);
        EXPECT_LE(d.infidelity, prev);
        prev = d.infidelity;
    }
}

TEST(synth, parallel_matches_serial) {
    CounterRng rng(10, 0);
    for (int i = 0; i < 3; i++) {
        Mat4 target = random_unitary4(rng);
        for (bool stop : {true, false}) {
            SynthesisOptions o = opts(400 + i, 12);
            o.stop_at_success = stop;
            GateDecomposition a = synthesize_best(target, {gates::cnot(), gates::cnot()}, o);
            GateDecomposition b = synthesize_best_serial(target, {gates::cnot(), gates::cnot()}, o);
            EXPECT_EQ(a.infidelity, b.infidelity);
            EXPECT_EQ(a.restarts_used, b.restarts_used);
            EXPECT_EQ(max_abs_diff(a.reassemble(), b.reassemble()), 0.0);
        }
    }
}

TEST(synth, invalid_options_rejected) {
    EXPECT_THROW(synthesize_best(gates::cnot(), {gates::cnot()}, opts(1, 0)), std::invalid_argument);
    EXPECT_THROW(synthesize(gates::cnot(), gates::cnot(), -1, opts(1)), std::invalid_argument);
}

TEST(synth, build_cache_covers_targets_and_edges) {
    std::vector<EdgeBasis> edges{{"0-1", "sqrt_iswap", gates::sqrt_iswap()},
                                 {"1-2", "b", gates::b_gate()},
                                 {"2-3", "cnot", gates::cnot()}};
    CacheBuild build = build_cache(edges, default_targets(), opts(11), "2026-01-01T00:00:00Z");
    EXPECT_TRUE(build.failures.empty());
    EXPECT_EQ(build.cache.entries.size(), 6u);
    EXPECT_EQ(build.cache.timestamp, "2026-01-01T00:00:00Z");
    const GateDecomposition *s = build.cache.find("0-1", "swap");
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->depth(), 3);
    EXPECT_EQ(s->layer_ids.size(), 3u);
    EXPECT_EQ(s->layer_ids[0], "sqrt_iswap");
    EXPECT_EQ(build.cache.find("1-2", "swap")->depth(), 2);
    EXPECT_EQ(build.cache.find("2-3", "cnot")->depth(), 1);
    EXPECT_EQ(build.cache.find("0-1", "cnot")->depth(), 2);
    for (const auto &[key, d] : build.cache.entries) {
        EXPECT_LT(d.infidelity, 1e-8) << key.first << " " << key.second;
    }
    EXPECT_EQ(build.cache.find("9-9", "swap"), nullptr);
}

TEST(synth, build_cache_with_no_targets_is_empty) {
    std::vector<EdgeBasis> edges{{"0-1", "cnot", gates::cnot()}};
    CacheBuild build = build_cache(edges, {}, opts(12), "t");
    EXPECT_TRUE(build.cache.entries.empty());
    EXPECT_TRUE(build.failures.empty());
}

TEST(synth, build_cache_records_failures) {
    std::vector<EdgeBasis> edges{{"0-1", "weak", canonical_gate(canonicalize(0.02, 0.01, 0))}};
    SynthesisOptions o = opts(13, 2);
    CacheBuild build = build_cache(edges, {{"swap", gates::swap()}}, o, "t");
    ASSERT_EQ(build.failures.size(), 1u);
    EXPECT_EQ(build.failures[0].edge_id, "0-1");
    EXPECT_EQ(build.failures[0].target_id, "swap");
    EXPECT_GT(build.failures[0].best_infidelity, 1e-8);
}
