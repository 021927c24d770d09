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

#include <string>
#include <vector>

#include "nsbasis/transpile.h"

namespace nsbasis {

struct CoherenceParams {
    double t_default = 80e-6;       // seconds
    std::vector<double> per_qubit;  // optional overrides, seconds

    double of(int qubit) const;
    /// Throws std::invalid_argument unless every coherence time is positive.
    void validate() const;
};

/// Product over qubits of exp(-(t_end - t_start) / T); idle qubits contribute 1.
double circuit_fidelity(const ScheduledCircuit &s, const CoherenceParams &cp = {});

/// Average-gate-fidelity limit of independent depolarizing decoherence on n_qubits (1 or 2)
/// over duration_ns, with per-qubit process fidelity (1 + 3 exp(-t/T)) / 4.
double gate_coherence_limit(double duration_ns, const CoherenceParams &cp = {}, int n_qubits = 2);

/// Basis, SWAP and CNOT durations (ns) and coherence limits of one selection criterion.
struct GateTableRow {
    std::string label;
    double basis_ns = 0, swap_ns = 0, cnot_ns = 0;
    double basis_fidelity = 0, swap_fidelity = 0, cnot_fidelity = 0;
};

/// Fills the fidelity columns from the durations.
GateTableRow gate_table_row(const std::string &label, double basis_ns, double swap_ns, double cnot_ns,
                            const CoherenceParams &cp = {});

/// Circuit fidelity of one benchmark under each basis choice, in column order.
struct CircuitTableRow {
    std::string benchmark;
    std::vector<double> fidelities;
};

std::string gate_table_csv(const std::vector<GateTableRow> &rows);
std::string gate_table_markdown(const std::vector<GateTableRow> &rows);
std::string circuit_table_csv(const std::vector<std::string> &columns, const std::vector<CircuitTableRow> &rows);
std::string circuit_table_markdown(const std::vector<std::string> &columns, const std::vector<CircuitTableRow> &rows);

}  // namespace nsbasis
