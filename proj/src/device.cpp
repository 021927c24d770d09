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

#include "nsbasis/device.h"

#include <stdexcept>

#include "nsbasis/errors.h"
#include "nsbasis/rng.h"

namespace nsbasis {

const EdgeRecord *DeviceModel::find_edge(int q1, int q2) const {
    const int a = std::min(q1, q2), b = std::max(q1, q2);
    for (const EdgeRecord &e : edges) {
        if (e.a == a && e.b == b) {
            return &e;
        }
    }
    return nullptr;
}

DeviceModel generate_device(int rows, int cols, uint64_t seed, const DeviceOptions &opts) {
    if (rows < 1 || cols < 1 || rows * cols < 2) {
        throw std::invalid_argument("device needs at least two qubits");
    }
    DeviceModel d;
    d.rows = rows;
    d.cols = cols;
    d.seed = seed;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            QubitRecord q;
            q.row = r;
            q.col = c;
            q.color = (r + c) % 2;
            const double mean = q.color == 0 ? opts.freq_mean_lo : opts.freq_mean_hi;
            CounterRng rng(seed, (uint64_t)d.qubit_index(r, c));
            q.omega = mean * (1.0 + opts.rel_std * rng.normal());
            q.coherence = opts.coherence;
            d.qubits.push_back(q);
        }
    }
    for (int q = 0; q < rows * cols; q++) {
        const int r = q / cols, c = q % cols;
        for (int n : {c + 1 < cols ? q + 1 : -1, r + 1 < rows ? q + cols : -1}) {
            if (n < 0) {
                continue;
            }
            EdgeRecord e;
            e.a = q;
            e.b = n;
            e.params = PairParams::for_qubits(d.qubits[q].omega, d.qubits[n].omega);
            try {
                e.params.omega_c0 = find_zero_zz_bias(e.params);
            } catch (const NoSignChange &) {
                e.biased = false;
            }
            d.edges.push_back(e);
        }
    }
    return d;
}

}  // namespace nsbasis
