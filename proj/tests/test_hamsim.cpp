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

#include "nsbasis/hamsim.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"
#include "nsbasis/device.h"
#include "nsbasis/errors.h"
#include "nsbasis/rng.h"
#include "nsbasis/weyl.h"

using namespace nsbasis;

namespace {

constexpr double kTwoPi = 2 * kPi;
constexpr double kGHz = kTwoPi * 1e9;
constexpr double kMHz = kTwoPi * 1e6;

/// Drive frequencies are expensive to search, so each amplitude is searched once.
double drive_frequency(double xi) {
    static std::map<double, double> cache;
    auto it = cache.find(xi);
    if (it == cache.end()) {
        it = cache.emplace(xi, find_drive_frequency(PairParams::defaults(), xi)).first;
    }
    return it->second;
}

const Trajectory &default_trajectory(double xi, double t_max) {
    static std::map<std::pair<double, double>, Trajectory> cache;
    auto key = std::make_pair(xi, t_max);
    auto it = cache.find(key);
    if (it == cache.end()) {
        DrivePulse d = DrivePulse::from_xi(xi, drive_frequency(xi));
        it = cache.emplace(key, sample_trajectory(PairParams::defaults(), d, t_max)).first;
    }
    return it->second;
}

double xy_deviation(const Trajectory &t) {
    double worst = 0;
    for (const auto &s : t.samples) {
        worst = std::max(worst, weyl_segment_distance(s.coordinate, {0, 0, 0}, {0.5, 0.5, 0}));
    }
    return worst;
}

double first_perfect_entangler(const Trajectory &t) {
    for (const auto &s : t.samples) {
        if (is_perfect_entangler(s.coordinate)) {
            return s.duration;
        }
    }
    return -1;
}

/// Dressed energies found by diagonalizing the whole Hamiltonian at once.
std::array<double, 4> full_space_dressed_energies(const PairParams &p) {
    Eigen::SelfAdjointEigenSolver<MatX> es(build_hamiltonian(p));
    const int bare[4] = {p.index(0, 0, 0), p.index(0, 1, 0), p.index(1, 0, 0), p.index(1, 1, 0)};
    std::array<double, 4> e{};
    for (int k = 0; k < 4; k++) {
        Eigen::Index col;
        es.eigenvectors().row(bare[k]).cwiseAbs2().maxCoeff(&col);
        e[k] = es.eigenvalues()(col);
    }
    return e;
}

}  // namespace

TEST(hamsim, dimension_and_truncation) {
    PairParams p = PairParams::defaults();
    EXPECT_EQ(build_hamiltonian(p).rows(), 36);
    p.levels_c = 3;
    EXPECT_THROW(build_hamiltonian(p), TruncationTooSmall);
    p.levels_c = 4;
    p.levels_q = 2;
    EXPECT_THROW(build_hamiltonian(p), TruncationTooSmall);
}

TEST(hamsim, decoupled_spectrum_is_ladder_sums) {
    PairParams p = PairParams::defaults();
    p.g_ab = p.g_bc = p.g_ca = 0;
    Eigen::SelfAdjointEigenSolver<MatX> es(build_hamiltonian(p));
    std::vector<double> expected;
    for (int na = 0; na < 3; na++) {
        for (int nb = 0; nb < 3; nb++) {
            for (int nc = 0; nc < 4; nc++) {
                expected.push_back(p.omega_a * na + p.alpha_a * na * (na - 1) / 2 + p.omega_b * nb +
                                   p.alpha_b * nb * (nb - 1) / 2 + p.omega_c0 * nc + p.alpha_c * nc * (nc - 1) / 2);
            }
        }
    }
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 36; i++) {
        EXPECT_NEAR(es.eigenvalues()(i), expected[i], 1e-12 * std::abs(expected.back()));
    }
}

TEST(hamsim, hamiltonian_is_hermitian) {
    CounterRng rng(1, 0);
    for (int i = 0; i < 20; i++) {
        PairParams p = PairParams::for_qubits(rng.uniform(4, 6) * kGHz, rng.uniform(2, 4) * kGHz);
        p.omega_c0 = rng.uniform(3, 5) * kGHz;
        p.g_ab = std::polar(rng.uniform(0, 20) * kMHz, rng.uniform(0, kTwoPi));
        p.g_bc = std::polar(rng.uniform(0, 200) * kMHz, rng.uniform(0, kTwoPi));
        p.g_ca = std::polar(rng.uniform(0, 200) * kMHz, rng.uniform(0, kTwoPi));
        MatX h = build_hamiltonian(p, DrivePulse{0, rng.uniform(0, 500) * kMHz, 2 * kGHz, 0}, rng.uniform(0, 1e-7));
        EXPECT_LT(max_abs_diff(h, h.adjoint()), 1e-9 * h.cwiseAbs().maxCoeff());
    }
}

TEST(hamsim, static_zz_vanishes_without_coupling) {
    PairParams p = PairParams::defaults();
    p.g_ab = p.g_bc = p.g_ca = 0;
    EXPECT_EQ(static_zz(p), 0.0);
}

TEST(hamsim, static_zz_matches_full_diagonalization) {
    PairParams p = PairParams::defaults();
    p.omega_c0 = 4.2 * kGHz;
    std::array<double, 4> e = full_space_dressed_energies(p);
    EXPECT_NEAR(static_zz(p), e[3] - e[2] - e[1] + e[0], 1e-6 * std::abs(e[3]));
}

TEST(hamsim, direct_coupling_zz_is_perturbative) {
    PairParams p = PairParams::defaults();
    p.g_bc = p.g_ca = 0;
    const double g = std::abs(p.g_ab);
    const double delta = p.omega_a - p.omega_b;
    // Second-order shifts of |11> through |20> and |02>.
    const double leading = 2 * g * g * (p.alpha_a + p.alpha_b) / ((delta + p.alpha_a) * (delta - p.alpha_b));
    const double zz = static_zz(p);
    EXPECT_LT(std::abs(zz), g * g / std::abs(delta));
    EXPECT_NEAR(zz, leading, 0.05 * std::abs(leading));
}

TEST(hamsim, zero_zz_bias_properties) {
    PairParams p = PairParams::defaults();
    EXPECT_GT(p.omega_c0, p.omega_b);
    EXPECT_LT(p.omega_c0, p.omega_a);
    EXPECT_LT(std::abs(static_zz(p)) / kTwoPi, 1e3);
    const double root = zero_zz_bias(p, p.omega_c0 - 2 * kMHz, p.omega_c0 + 3 * kMHz);
    EXPECT_NEAR(root, p.omega_c0, kTwoPi * 200);
    EXPECT_THROW(zero_zz_bias(p, p.omega_c0 + 2 * kMHz, p.omega_c0 + 3 * kMHz), NoSignChange);
}

TEST(hamsim, zero_zz_bias_moves_continuously) {
    PairParams p = PairParams::defaults();
    PairParams q = p;
    q.g_bc *= 1.01;
    const double shifted = zero_zz_bias(q, p.omega_c0 - 50 * kMHz, p.omega_c0 + 50 * kMHz);
    EXPECT_LT(std::abs(shifted - p.omega_c0), 0.01 * p.omega_c0);
    EXPECT_NE(shifted, p.omega_c0);
}

TEST(hamsim, drive_frequency_at_low_and_high_amplitude) {
    const DressedBasis d = dressed_basis(PairParams::defaults());
    const double detuning = d.energies[2] - d.energies[1];
    EXPECT_LT(std::abs(drive_frequency(0.005) - detuning), 1 * kMHz);
    EXPECT_GT(std::abs(drive_frequency(0.04) - detuning), 1 * kMHz);
}

TEST(hamsim, drive_frequency_is_local_maximum) {
    const PairParams p = PairParams::defaults();
    const double xi = 0.04;
    const double w = drive_frequency(xi);
    const double g = effective_coupling(p, DrivePulse::kappa * xi);
    const double probe = 1.2 * kPi / (2 * g);
    const double at = population_transfer(p, DrivePulse::from_xi(xi, w), probe);
    EXPECT_GT(at, 0.9);
    EXPECT_GE(at, population_transfer(p, DrivePulse::from_xi(xi, w + 0.5 * g), probe));
    EXPECT_GE(at, population_transfer(p, DrivePulse::from_xi(xi, w - 0.5 * g), probe));
}

TEST(hamsim, flat_landscape_without_drive) {
    EXPECT_THROW(find_drive_frequency(PairParams::defaults(), 0.0), FlatLandscape);
}

TEST(hamsim, zero_duration_is_identity) {
    MatX u = propagate(PairParams::defaults(), DrivePulse::from_xi(0.04, 2 * kGHz), 0.0);
    EXPECT_LT(max_abs_diff(u, MatX::Identity(36, 36)), 1e-15);
}

TEST(hamsim, propagator_is_unitary) {
    MatX u = propagate(PairParams::defaults(), DrivePulse::from_xi(0.04, drive_frequency(0.04)), 20e-9);
    EXPECT_LT(unitarity_defect(u), 1e-8);
}

TEST(hamsim, propagation_composes) {
    const PairParams p = PairParams::defaults();
    const DrivePulse d = DrivePulse::from_xi(0.04, drive_frequency(0.04));
    MatX whole = propagate(p, d, 0.0, 7e-9, 2e-12);
    MatX parts = propagate(p, d, 3e-9, 7e-9, 2e-12) * propagate(p, d, 0.0, 3e-9, 2e-12);
    EXPECT_LT(max_abs_diff(whole, parts), 1e-8);
}

TEST(hamsim, sector_stepping_matches_full_space_exponential) {
    const PairParams p = PairParams::defaults();
    const DrivePulse d = DrivePulse::from_xi(0.04, drive_frequency(0.04));
    const double dt = 2e-12;
    MatX full = MatX::Identity(36, 36);
    for (int s = 0; s < 200; s++) {
        full = expm_hermitian(build_hamiltonian(p, d, (s + 0.5) * dt), dt) * full;
    }
    EXPECT_LT(max_abs_diff(propagate(p, d, 200 * dt, dt), full), 1e-9);
}

TEST(hamsim, step_size_convergence) {
    const PairParams p = PairParams::defaults();
    const DrivePulse d = DrivePulse::from_xi(0.04, drive_frequency(0.04));
    Trajectory coarse = sample_trajectory(p, d, 12e-9, 1e-9, 2e-12);
    Trajectory fine = sample_trajectory(p, d, 12e-9, 1e-9, 1e-12);
    for (size_t k = 0; k < coarse.samples.size(); k++) {
        EXPECT_LT(weyl_distance(coarse.samples[k].coordinate, fine.samples[k].coordinate), 1e-5);
    }
}

TEST(hamsim, step_too_large_rejected) {
    EXPECT_THROW(SectorPropagator(PairParams::defaults(), DrivePulse::from_xi(0.04, 2 * kGHz), 1e-10),
                 StepTooLarge);
}

TEST(hamsim, undriven_evolution_stays_local) {
    Trajectory t = sample_trajectory(PairParams::defaults(), DrivePulse{}, 200e-9, 10e-9);
    for (const auto &s : t.samples) {
        EXPECT_LT(weyl_distance(s.coordinate, points::kIdentity), 5e-3) << s.duration;
    }
}

TEST(hamsim, effective_unitary_of_identity) {
    const PairParams p = PairParams::defaults();
    EffectiveGate g = effective_unitary(MatX::Identity(36, 36), dressed_basis(p), 0.0);
    EXPECT_LT(g.leakage, 1e-12);
    EXPECT_LT(max_abs_diff(g.unitary, Mat4::Identity()), 1e-12);
}

TEST(hamsim, excessive_leakage_rejected) {
    try {
        effective_unitary(Mat4(0.9 * Mat4::Identity()));
        FAIL();
    } catch (const ExcessiveLeakage &e) {
        EXPECT_NEAR(e.leakage, 0.19, 1e-12);
    }
    EXPECT_NEAR(unitarize(Mat4(0.9 * Mat4::Identity())).leakage, 0.19, 1e-12);
}

TEST(hamsim, projected_block_is_a_contraction) {
    const PairParams p = PairParams::defaults();
    const DressedBasis basis = dressed_basis(p);
    SectorPropagator prop(p, DrivePulse::from_xi(0.04, drive_frequency(0.04)), 2e-12, 2);
    for (int k = 1; k <= 30; k++) {
        prop.advance_to(k * 1e-9);
        Mat4 b = prop.computational_block(basis);
        EXPECT_LE((b.adjoint() * b).trace().real(), 4 + 1e-9);
    }
}

TEST(hamsim, trajectory_samples_match_direct_propagation) {
    const PairParams p = PairParams::defaults();
    const DrivePulse d = DrivePulse::from_xi(0.04, drive_frequency(0.04));
    Trajectory t = sample_trajectory(p, d, 6e-9);
    ASSERT_EQ(t.samples.size(), 7u);
    EffectiveGate g = effective_unitary(propagate(p, d, 6e-9), dressed_basis(p), 6e-9);
    EXPECT_LT(max_abs_diff(g.unitary, t.samples.back().unitary.matrix()), 1e-9);
    EXPECT_NEAR(g.leakage, t.samples.back().leakage, 1e-9);
    for (size_t k = 0; k < t.samples.size(); k++) {
        EXPECT_NEAR(t.samples[k].duration, k * 1e-9, 1e-18);
    }
}

TEST(hamsim, low_drive_follows_xy_segment) {
    const Trajectory &t = default_trajectory(0.005, 300e-9);
    EXPECT_LT(xy_deviation(t), 0.02);
    for (const auto &s : t.samples) {
        EXPECT_LT(s.leakage, 1e-3) << s.duration;
    }
}

TEST(hamsim, high_drive_deviates_more) {
    EXPECT_GT(xy_deviation(default_trajectory(0.04, 40e-9)), xy_deviation(default_trajectory(0.005, 300e-9)));
}

TEST(hamsim, entangling_speed_scales_with_amplitude) {
    const double slow = first_perfect_entangler(default_trajectory(0.005, 300e-9));
    const double fast = first_perfect_entangler(default_trajectory(0.01, 150e-9));
    ASSERT_GT(slow, 0);
    ASSERT_GT(fast, 0);
    EXPECT_NEAR(fast / slow, 0.5, 0.5 * 0.15);
}

TEST(hamsim, trajectories_are_continuous) {
    for (double xi : {0.005, 0.04}) {
        const Trajectory &t = default_trajectory(xi, xi == 0.005 ? 300e-9 : 40e-9);
        for (size_t k = 1; k < t.samples.size(); k++) {
            EXPECT_LT(weyl_distance(t.samples[k].coordinate, t.samples[k - 1].coordinate), 0.05);
        }
    }
}

TEST(hamsim, coupler_truncation_converged) {
    PairParams p = PairParams::defaults();
    const DrivePulse d = DrivePulse::from_xi(0.04, drive_frequency(0.04));
    Trajectory a = sample_trajectory(p, d, 15e-9);
    p.levels_c = 5;
    Trajectory b = sample_trajectory(p, d, 15e-9);
    for (size_t k = 0; k < a.samples.size(); k++) {
        EXPECT_LT(weyl_distance(a.samples[k].coordinate, b.samples[k].coordinate), 1e-4);
    }
}

TEST(device, grid_shape_and_coloring) {
    DeviceModel d = generate_device(10, 10, 3);
    EXPECT_EQ(d.qubits.size(), 100u);
    EXPECT_EQ(d.edges.size(), 180u);
    for (const auto &e : d.edges) {
        EXPECT_NE(d.qubits[e.a].color, d.qubits[e.b].color);
        const int dr = std::abs(d.qubits[e.a].row - d.qubits[e.b].row);
        const int dc = std::abs(d.qubits[e.a].col - d.qubits[e.b].col);
        EXPECT_EQ(dr + dc, 1);
        EXPECT_TRUE(e.biased);
        EXPECT_EQ(e.params.omega_a, d.qubits[e.a].omega);
        EXPECT_EQ(e.params.omega_b, d.qubits[e.b].omega);
    }
    for (const auto &q : d.qubits) {
        EXPECT_EQ(q.coherence, 80e-6);
    }
    EXPECT_NE(d.find_edge(11, 1), nullptr);
    EXPECT_EQ(d.find_edge(0, 11), nullptr);
}

TEST(device, deterministic) {
    DeviceModel a = generate_device(4, 4, 9), b = generate_device(4, 4, 9), c = generate_device(4, 4, 10);
    for (size_t i = 0; i < a.qubits.size(); i++) {
        EXPECT_EQ(a.qubits[i].omega, b.qubits[i].omega);
    }
    for (size_t i = 0; i < a.edges.size(); i++) {
        EXPECT_EQ(a.edges[i].params.omega_c0, b.edges[i].params.omega_c0);
    }
    EXPECT_NE(a.qubits[0].omega, c.qubits[0].omega);
}

TEST(device, frequency_populations) {
    DeviceModel d = generate_device(10, 10, 5);
    double sum[2] = {0, 0};
    int n[2] = {0, 0};
    for (const auto &q : d.qubits) {
        sum[q.color] += q.omega;
        n[q.color]++;
    }
    const double gap = sum[1] / n[1] - sum[0] / n[0];
    const double sigma = 0.05 * 5 * kGHz;
    EXPECT_NEAR(gap, 2 * kGHz, 3 * sigma / std::sqrt(50.0));
}

TEST(device, too_small_rejected) {
    EXPECT_THROW(generate_device(1, 1, 0), std::invalid_argument);
    EXPECT_EQ(generate_device(1, 2, 0).edges.size(), 1u);
}
