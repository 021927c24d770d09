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

#include <map>
#include <string>
#include <vector>

#include "nsbasis/device.h"
#include "nsbasis/feasibility.h"
#include "nsbasis/fidelity.h"
#include "nsbasis/trajectory.h"
#include "nsbasis/transpile.h"

namespace nsbasis {

/// Largest distance from the sqrt(iSWAP) point accepted for a baseline gate.
constexpr double kBaselineRadius = 0.02;

/// Baseline uses the low-drive trajectory; region criteria use the high-drive one.
struct CriterionSpec {
    std::string id;
    bool baseline = false;
    SelectionCriterion criterion;
};

/// "baseline" (or "baseline_sqiswap"), "criterion1" or "criterion2"; throws std::invalid_argument.
CriterionSpec criterion_by_name(const std::string &name);
/// A custom conjunction of regions.
CriterionSpec custom_criterion(const std::string &id, std::vector<Region> regions);

struct BasisAssignment {
    std::string edge_id;
    std::string criterion;
    TrajectorySample sample;
    double xi = 0;
    double omega_d = 0;  // rad/s
};

/// First sample in the criterion's regions whose leakage is at most kMaxLeakage. Throws
/// NoIntersection, or ExcessiveLeakage when every sample in the regions leaks more.
BasisAssignment select_basis(const Trajectory &traj, const SelectionCriterion &crit);

/// Among the first run of samples within kBaselineRadius of sqrt(iSWAP) that keep its synthesis
/// depths (SWAP in 3 layers, CNOT in 2) and leak at most kMaxLeakage, the closest one. Without
/// such samples, the earliest local minimum of the distance within the radius.
/// Throws NoIntersection or ExcessiveLeakage.
BasisAssignment select_baseline(const Trajectory &traj);

BasisAssignment select_basis(const Trajectory &traj, const CriterionSpec &spec);

struct DriveSettings {
    double xi_baseline = 0.005;
    double xi_nonstandard = 0.04;
    double t_max_baseline = 160e-9;     // seconds
    double t_max_nonstandard = 80e-9;   // seconds
    double spacing = 1e-9;              // seconds
    double dt = 2e-12;                  // seconds
};

/// Drive frequency search and trajectory simulation for one edge.
Trajectory simulate_edge(const EdgeRecord &edge, double xi, double t_max, const DriveSettings &s);

struct EdgeSelection {
    std::string edge_id;
    std::vector<Trajectory> trajectories;                // low drive then high drive, when simulated
    std::map<std::string, BasisAssignment> assignments;  // by criterion id
    std::map<std::string, std::string> failures;         // criterion id -> reason
};

struct DeviceSelection {
    std::vector<std::string> criteria;
    std::vector<EdgeSelection> edges;  // device edge order

    /// Native gates of one criterion; edges without an assignment are absent.
    BasisSet basis_set(const std::string &criterion) const;
    /// Per-criterion mean basis, SWAP and CNOT durations and mean coherence limits over the
    /// assigned edges. SWAP and CNOT durations use the minimal layer counts with 20 ns 1Q layers.
    std::vector<GateTableRow> summary(const CoherenceParams &cp = {}, double single_qubit_ns = 20) const;
    int failure_count() const;
};

/// Per-edge simulation and selection, parallel over edges; failures are recorded per edge.
DeviceSelection select_device(const DeviceModel &d, const std::vector<CriterionSpec> &criteria,
                              const DriveSettings &s = {});
/// Serial reference with identical output.
DeviceSelection select_device_serial(const DeviceModel &d, const std::vector<CriterionSpec> &criteria,
                                     const DriveSettings &s = {});

/// Duration of a synthesized gate of n native layers when alone on its qubits.
double synthesized_duration(int layers, double native_ns, double single_qubit_ns = 20);

}  // namespace nsbasis
