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
#include <utility>
#include <vector>

#include "nsbasis/circuit.h"
#include "nsbasis/device.h"
#include "nsbasis/synth.h"

namespace nsbasis {

/// Edge identifier "a-b" with a < b.
std::string edge_id(int q1, int q2);

struct CouplingMap {
    int num_qubits = 0;
    std::vector<std::pair<int, int>> edges;  // (a, b) with a < b

    static CouplingMap grid(int rows, int cols);
    static CouplingMap from_device(const DeviceModel &d);

    bool adjacent(int q1, int q2) const;
    /// Ascending neighbor list.
    std::vector<int> neighbors(int q) const;
    /// Shortest path from -> to (inclusive), preferring lower-index neighbors on ties.
    std::vector<int> shortest_path(int from, int to) const;
};

/// Physical circuit with layouts mapping logical qubit -> physical qubit.
struct RoutedCircuit {
    Circuit circuit;
    std::vector<int> initial_layout;
    std::vector<int> final_layout;
    int swaps_inserted = 0;
};

/// Greedy router: a non-adjacent two-qubit gate moves its first operand along the shortest
/// path with inserted SWAPs. An empty initial layout means the identity placement.
/// Throws std::invalid_argument when the circuit does not fit or the layout is invalid.
RoutedCircuit route(const Circuit &c, const CouplingMap &cmap, std::vector<int> initial_layout = {});

/// Calibrated native two-qubit gate of one edge, as a matrix on (a, b) with a < b.
struct NativeGate {
    std::string gate_id;
    Mat4 unitary;
    double duration_ns = 0;
};

/// Native gate per edge id.
using BasisSet = std::map<std::string, NativeGate>;

/// How two-qubit gates outside the CNOT and SWAP classes reach the native gate.
enum class TwoQubitLowering {
    Direct,  // synthesize each class directly in the native gate
    ViaCnot  // decompose into CNOTs first, then lower each CNOT
};

/// Rewrites every two-qubit gate into 1Q unitaries and native gates of its edge, then fuses
/// adjacent 1Q gates. Gates locally equivalent to a cached decomposition reuse it; others are
/// synthesized at the depth given by min_layers. Throws LoweringFailed.
Circuit lower(const Circuit &routed, const CouplingMap &cmap, const BasisSet &basis, const DecompositionCache &cache,
              const SynthesisOptions &fallback = {}, TwoQubitLowering strategy = TwoQubitLowering::Direct);

/// Merges runs of 1Q gates on each qubit into one "unitary" gate and drops identities.
Circuit fuse_single_qubit(const Circuit &c);

struct ScheduledGate {
    size_t gate_index;
    std::vector<int> qubits;
    double start_ns;
    double duration_ns;
};

struct ScheduledCircuit {
    int num_qubits = 0;
    std::vector<ScheduledGate> gates;
    std::vector<double> t_start;  // first gate start per qubit, 0 if idle
    std::vector<double> t_end;    // last gate end per qubit, 0 if idle
    std::vector<bool> active;
    double total_ns = 0;
};

struct GateDurations {
    double single_qubit_ns = 20;
    std::map<std::string, double> two_qubit_ns;  // by edge id

    static GateDurations from_basis(const BasisSet &basis, double single_qubit_ns = 20);
};

/// As-soon-as-possible list schedule. Throws std::invalid_argument for a two-qubit gate
/// without a duration.
ScheduledCircuit schedule(const Circuit &native, const GateDurations &durations);

}  // namespace nsbasis
