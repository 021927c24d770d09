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

#include "nsbasis/fidelity.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace nsbasis {

namespace {

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string percent(double v) {
    return fmt("%.3f%%", 100 * v);
}

}  // namespace

double CoherenceParams::of(int qubit) const {
    if (qubit >= 0 && qubit < (int)per_qubit.size()) {
        return per_qubit[qubit];
    }
    return t_default;
}

void CoherenceParams::validate() const {
    if (!(t_default > 0)) {
        throw std::invalid_argument("coherence time must be positive");
    }
    for (double t : per_qubit) {
        if (!(t > 0)) {
            throw std::invalid_argument("coherence time must be positive");
        }
    }
}

double circuit_fidelity(const ScheduledCircuit &s, const CoherenceParams &cp) {
    cp.validate();
    double exponent = 0;
    for (int q = 0; q < s.num_qubits; q++) {
        if (s.active[q]) {
            exponent += (s.t_end[q] - s.t_start[q]) * 1e-9 / cp.of(q);
        }
    }
    return std::exp(-exponent);
}

double gate_coherence_limit(double duration_ns, const CoherenceParams &cp, int n_qubits) {
    cp.validate();
    if (duration_ns < 0) {
        throw std::invalid_argument("duration must be non-negative");
    }
    if (n_qubits != 1 && n_qubits != 2) {
        throw std::invalid_argument("gate_coherence_limit supports 1 or 2 qubits");
    }
    double process = 1;
    for (int q = 0; q < n_qubits; q++) {
        process *= (1 + 3 * std::exp(-duration_ns * 1e-9 / cp.of(q))) / 4;
    }
    const double dim = n_qubits == 1 ? 2 : 4;
    return (dim * process + 1) / (dim + 1);
}

GateTableRow gate_table_row(const std::string &label, double basis_ns, double swap_ns, double cnot_ns,
                            const CoherenceParams &cp) {
    GateTableRow r;
    r.label = label;
    r.basis_ns = basis_ns;
    r.swap_ns = swap_ns;
    r.cnot_ns = cnot_ns;
    r.basis_fidelity = gate_coherence_limit(basis_ns, cp);
    r.swap_fidelity = gate_coherence_limit(swap_ns, cp);
    r.cnot_fidelity = gate_coherence_limit(cnot_ns, cp);
    return r;
}

std::string gate_table_csv(const std::vector<GateTableRow> &rows) {
    std::ostringstream os;
    os << "criterion,basis_ns,swap_ns,cnot_ns,basis_fidelity,swap_fidelity,cnot_fidelity\n";
    for (const GateTableRow &r : rows) {
        os << r.label << "," << fmt("%.4f", r.basis_ns) << "," << fmt("%.4f", r.swap_ns) << ","
           << fmt("%.4f", r.cnot_ns) << "," << fmt("%.6f", r.basis_fidelity) << "," << fmt("%.6f", r.swap_fidelity)
           << "," << fmt("%.6f", r.cnot_fidelity) << "\n";
    }
    return os.str();
}

std::string gate_table_markdown(const std::vector<GateTableRow> &rows) {
    std::ostringstream os;
    os << "| | Basis | SWAP | CNOT |\n|---|---:|---:|---:|\n";
    for (const GateTableRow &r : rows) {
        os << "| " << r.label << " | " << fmt("%.2f ns", r.basis_ns) << " | " << fmt("%.2f ns", r.swap_ns) << " | "
           << fmt("%.2f ns", r.cnot_ns) << " |\n";
        os << "| | " << percent(r.basis_fidelity) << " | " << percent(r.swap_fidelity) << " | "
           << percent(r.cnot_fidelity) << " |\n";
    }
    return os.str();
}

std::string circuit_table_csv(const std::vector<std::string> &columns, const std::vector<CircuitTableRow> &rows) {
    std::ostringstream os;
    os << "benchmark";
    for (const std::string &c : columns) {
        os << "," << c;
    }
    os << "\n";
    for (const CircuitTableRow &r : rows) {
        os << r.benchmark;
        for (double f : r.fidelities) {
            os << "," << fmt("%.6g", f);
        }
        os << "\n";
    }
    return os.str();
}

std::string circuit_table_markdown(const std::vector<std::string> &columns, const std::vector<CircuitTableRow> &rows) {
    std::ostringstream os;
    os << "| Benchmark |";
    for (const std::string &c : columns) {
        os << " " << c << " |";
    }
    os << "\n|---|";
    for (size_t k = 0; k < columns.size(); k++) {
        os << "---:|";
    }
    os << "\n";
    for (const CircuitTableRow &r : rows) {
        os << "| " << r.benchmark << " |";
        for (double f : r.fidelities) {
            os << " " << fmt("%.3g%%", 100 * f) << " |";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace nsbasis
