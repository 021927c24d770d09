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

#include <cstdint>
#include <string>
#include <vector>

#include "nsbasis/hamsim.h"

namespace nsbasis {

struct QubitRecord {
    int row = 0;
    int col = 0;
    int color = 0;             // checkerboard color, 0 or 1
    double omega = 0;          // rad/s
    double coherence = 80e-6;  // T1 = T2, seconds
};

/// Grid edge between qubits a < b; PairParams take a as qubit a and b as qubit b.
struct EdgeRecord {
    int a = 0;
    int b = 0;
    PairParams params;
    /// False when no zero-ZZ bias exists for the pair; such edges cannot be simulated.
    bool biased = true;

    std::string id() const {
        return std::to_string(a) + "-" + std::to_string(b);
    }
};

struct DeviceModel {
    int rows = 0;
    int cols = 0;
    uint64_t seed = 0;
    std::vector<QubitRecord> qubits;  // row-major
    std::vector<EdgeRecord> edges;    // horizontal and vertical neighbors, sorted by (a, b)

    int qubit_index(int row, int col) const {
        return row * cols + col;
    }
    /// Edge joining the two qubits in either order, or nullptr.
    const EdgeRecord *find_edge(int q1, int q2) const;
};

struct DeviceOptions {
    double freq_mean_lo = 2 * 3.14159265358979323846 * 3.0e9;
    double freq_mean_hi = 2 * 3.14159265358979323846 * 5.0e9;
    double rel_std = 0.05;
    double coherence = 80e-6;
};

/// Checkerboard device: color 0 qubits draw from the low mean, color 1 from the high mean.
/// Throws std::invalid_argument when rows * cols < 2.
DeviceModel generate_device(int rows, int cols, uint64_t seed, const DeviceOptions &opts = {});

}  // namespace nsbasis
