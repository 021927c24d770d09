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

#include <array>
#include <vector>

#include "nsbasis/linalg.h"
#include "nsbasis/trajectory.h"

namespace nsbasis {

/// Two fixed-frequency transmons a, b coupled directly and through a tunable coupler c.
/// All frequencies and couplings are angular (rad/s).
struct PairParams {
    double omega_a = 0;
    double omega_b = 0;
    double alpha_a = 0;
    double alpha_b = 0;
    double omega_c0 = 0;
    double alpha_c = 0;
    cplx g_ab = 0;
    cplx g_bc = 0;
    cplx g_ca = 0;
    int levels_q = 3;
    int levels_c = 4;

    /// Default device parameters with the coupler biased at the zero-ZZ point.
    static PairParams defaults();
    /// Default couplings and anharmonicities for the given qubit frequencies; omega_c0 left at 0.
    static PairParams for_qubits(double omega_a, double omega_b);

    int dimension() const {
        return levels_q * levels_q * levels_c;
    }
    /// Index of the bare state |n_a, n_b, n_c> in the product basis.
    int index(int na, int nb, int nc) const {
        return (na * levels_q + nb) * levels_c + nc;
    }
};

/// Full-space Hamiltonian with the coupler shifted by coupler_shift from its bias.
/// Throws TruncationTooSmall when levels_q < 3 or levels_c < 4.
MatX build_hamiltonian(const PairParams &p, double coupler_shift = 0);
/// Hamiltonian at time t under the drive.
MatX build_hamiltonian(const PairParams &p, const DrivePulse &drive, double t);

/// Dressed computational states at the bias point, ordered |00>, |01>, |10>, |11> with
/// qubit a as the left (most significant) factor.
struct DressedBasis {
    std::array<VecX, 4> vectors;     // full-space eigenvectors
    std::array<double, 4> energies;  // rad/s
    std::array<double, 4> overlaps;  // weight on the matching bare state
    std::array<int, 4> excitations;  // total excitation number of each state
};

/// Throws StateIdentificationAmbiguous if a maximal overlap is not above 0.5.
DressedBasis dressed_basis(const PairParams &p, double coupler_shift = 0);

/// E11 - E10 - E01 + E00 at the bias point, rad/s.
double static_zz(const PairParams &p);

/// Bisection root of the static ZZ in omega_c0 on [lo, hi], to 2 pi x 100 Hz.
/// Throws NoSignChange if the ZZ has the same sign at both ends.
double zero_zz_bias(const PairParams &p, double lo, double hi);

/// First zero-ZZ bias between the qubit frequencies, scanning upward from the lower
/// one and skipping sign changes caused by level crossings. Throws NoSignChange if none.
double find_zero_zz_bias(const PairParams &p);

/// Dressed |01> - |10> matrix element of the coupler number operator.
double modulation_matrix_element(const PairParams &p);
/// Effective exchange rate delta * m / 2 produced by a modulation depth.
double effective_coupling(const PairParams &p, double delta);

/// Maximal |01> population over [0, probe] starting from |10>.
double population_transfer(const PairParams &p, const DrivePulse &drive, double probe, double dt = 2e-12);

/// Drive frequency maximizing the exchange between the two qubits.
/// Throws FlatLandscape if the best transfer is below 0.5.
double find_drive_frequency(const PairParams &p, double xi, double dt = 2e-12);

/// Time-ordered evolution within excitation-number sectors. Each midpoint step is the exact
/// exponential of the Hamiltonian frozen at the step center.
class SectorPropagator {
   public:
    /// Sectors with total excitation number <= max_excitation are evolved; a negative value
    /// evolves all of them. Throws StepTooLarge if dt does not resolve the fastest frequency.
    SectorPropagator(const PairParams &p, const DrivePulse &drive, double dt, int max_excitation = -1);

    /// Evolves to time t (a multiple of dt past the current time, within rounding).
    void advance_to(double t);
    double time() const {
        return time_;
    }

    /// Full-space propagator; sectors that are not evolved are left as zero blocks.
    MatX full() const;
    /// <dressed_i | U | dressed_j>, with the lab-frame phases of the dressed energies removed.
    Mat4 computational_block(const DressedBasis &basis) const;

   private:
    struct Sector {
        std::vector<int> states;  // full-space indices
        MatX h0;                  // static part minus the reference energy
        Eigen::VectorXd coupler;  // coupler occupation per state
        double reference = 0;     // energy subtracted from h0
        MatX u;                   // propagator without the reference phase
    };
    std::vector<Sector> sectors_;
    int dimension_ = 0;
    DrivePulse drive_;
    double dt_;
    double time_ = 0;
    long steps_ = 0;
};

/// Full-space propagator from 0 to duration.
MatX propagate(const PairParams &p, const DrivePulse &drive, double duration, double dt = 2e-12);
/// Full-space propagator from t0 to t1.
MatX propagate(const PairParams &p, const DrivePulse &drive, double t0, double t1, double dt);

struct EffectiveGate {
    Mat4 unitary;
    double leakage;
};

/// Projects a full-space propagator on the dressed computational subspace and removes the
/// single-qubit frame rotations accumulated over duration. Throws ExcessiveLeakage above 0.05.
EffectiveGate effective_unitary(const MatX &propagator, const DressedBasis &basis, double duration);
/// Same, from a block that already has the frame removed.
EffectiveGate effective_unitary(const Mat4 &block);
/// Polar factor and leakage of a block without the leakage check.
EffectiveGate unitarize(const Mat4 &block);

/// Leakage above which an effective unitary is not trusted.
constexpr double kMaxLeakage = 0.05;

/// Samples the effective gate every spacing up to t_max with one incremental integration.
/// Samples keep their leakage and are not checked against kMaxLeakage.
Trajectory sample_trajectory(const PairParams &p, const DrivePulse &drive, double t_max, double spacing = 1e-9,
                             double dt = 2e-12);

}  // namespace nsbasis
