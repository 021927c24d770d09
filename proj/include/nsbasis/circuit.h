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

#include "nsbasis/linalg.h"

namespace nsbasis {

/// A gate instance. Standard gates are identified by name; gates named "unitary" carry
/// their matrix explicitly (2x2 or 4x4, first operand as the most significant factor).
struct Gate {
    std::string name;
    std::vector<int> qubits;
    std::vector<double> params;
    MatX matrix;        // set only for "unitary" gates
    std::string label;  // basis-gate id of native two-qubit gates

    bool is_two_qubit() const {
        return qubits.size() == 2;
    }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    void add(const std::string &name, std::vector<int> qubits, std::vector<double> params = {});
    void add_unitary(const MatX &m, std::vector<int> qubits, const std::string &label = "");
    int two_qubit_count() const;
};

/// Standard gate names of the supported set.
const std::vector<std::string> &standard_gates();
bool is_standard_gate(const std::string &name);
/// Number of qubits and angle parameters of a standard gate.
int gate_arity(const std::string &name);
int gate_param_count(const std::string &name);

/// Matrix of a gate; throws UnsupportedGate for unknown names.
MatX gate_matrix(const Gate &g);

/// Throws std::invalid_argument for out-of-range or repeated operands and wrong parameter counts.
void validate(const Circuit &c);

/// Dense unitary of the whole circuit, qubit 0 as the most significant factor.
MatX circuit_unitary(const Circuit &c);

}  // namespace nsbasis
