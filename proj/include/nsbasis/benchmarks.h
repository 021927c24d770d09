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
#include <utility>
#include <vector>

#include "nsbasis/circuit.h"

namespace nsbasis {

/// Bernstein-Vazirani on n qubits: n - 1 data qubits and an ancilla as the last qubit.
/// Bit i of secret controls a CX from data qubit i. Throws std::invalid_argument if n < 2.
Circuit gen_bv(int n, uint64_t secret);
/// Bernstein-Vazirani with every secret bit set.
Circuit gen_bv(int n);

/// Quantum Fourier transform with controlled-phase gates and the final qubit reversal.
Circuit gen_qft(int n);

/// Erdos-Renyi graph on n nodes; each pair is an edge with probability edge_prob.
std::vector<std::pair<int, int>> random_graph(int n, double edge_prob, uint64_t seed);

/// Depth-one QAOA for MaxCut on random_graph(n, edge_prob, seed); each edge's ZZ phase is
/// compiled as cx, rz(2 gamma), cx.
Circuit gen_qaoa(int n, double edge_prob, uint64_t seed, double gamma = 0.4, double beta = 0.3);

/// Ripple-carry adder of two n-bit registers on 2n + 2 qubits: carry-in, then interleaved
/// (b_i, a_i) pairs, then carry-out. Computes b <- a + b. Toffolis are decomposed into cx, h, t, tdg.
Circuit gen_cuccaro(int n);

/// Appends a Toffoli with controls c1, c2 and target t decomposed into 6 cx and 1Q gates.
void append_toffoli(Circuit &c, int c1, int c2, int t);

}  // namespace nsbasis
