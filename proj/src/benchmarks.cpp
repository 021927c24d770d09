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

#include "nsbasis/benchmarks.h"

#include <cmath>
#include <stdexcept>

#include "nsbasis/rng.h"

namespace nsbasis {

namespace {

void require_qubits(int n) {
    if (n < 2) {
        throw std::invalid_argument("benchmark needs at least two qubits");
    }
}

}  // namespace

Circuit gen_bv(int n, uint64_t secret) {
    require_qubits(n);
    Circuit c;
    c.num_qubits = n;
    const int anc = n - 1;
    c.add("x", {anc});
    for (int q = 0; q < n; q++) {
        c.add("h", {q});
    }
    for (int q = 0; q < anc; q++) {
        if ((secret >> q) & 1) {
            c.add("cx", {q, anc});
        }
    }
    for (int q = 0; q < anc; q++) {
        c.add("h", {q});
    }
    return c;
}

Circuit gen_bv(int n) {
    require_qubits(n);
    return gen_bv(n, (n - 1 >= 64) ? ~uint64_t(0) : (uint64_t(1) << (n - 1)) - 1);
}

Circuit gen_qft(int n) {
    require_qubits(n);
    Circuit c;
    c.num_qubits = n;
    for (int j = 0; j < n; j++) {
        c.add("h", {j});
        for (int k = j + 1; k < n; k++) {
            c.add("cp", {k, j}, {kPi / std::ldexp(1.0, k - j)});
        }
    }
    for (int j = 0; j < n / 2; j++) {
        c.add("swap", {j, n - 1 - j});
    }
    return c;
}

std::vector<std::pair<int, int>> random_graph(int n, double edge_prob, uint64_t seed) {
    CounterRng rng(seed, 0);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (rng.uniform() < edge_prob) {
                edges.emplace_back(i, j);
            }
        }
    }
    return edges;
}

Circuit gen_qaoa(int n, double edge_prob, uint64_t seed, double gamma, double beta) {
    require_qubits(n);
    Circuit c;
    c.num_qubits = n;
    for (int q = 0; q < n; q++) {
        c.add("h", {q});
    }
    for (auto [a, b] : random_graph(n, edge_prob, seed)) {
        c.add("cx", {a, b});
        c.add("rz", {b}, {2 * gamma});
        c.add("cx", {a, b});
    }
    for (int q = 0; q < n; q++) {
        c.add("rx", {q}, {2 * beta});
    }
    return c;
}

void append_toffoli(Circuit &c, int c1, int c2, int t) {
    c.add("h", {t});
    c.add("cx", {c2, t});
    c.add("tdg", {t});
    c.add("cx", {c1, t});
    c.add("t", {t});
    c.add("cx", {c2, t});
    c.add("tdg", {t});
    c.add("cx", {c1, t});
    c.add("t", {c2});
    c.add("t", {t});
    c.add("h", {t});
    c.add("cx", {c1, c2});
    c.add("t", {c1});
    c.add("tdg", {c2});
    c.add("cx", {c1, c2});
}

Circuit gen_cuccaro(int n) {
    if (n < 1) {
        throw std::invalid_argument("adder needs at least one bit");
    }
    Circuit c;
    c.num_qubits = 2 * n + 2;
    const int cin = 0, cout = 2 * n + 1;
    auto b = [](int i) { return 1 + 2 * i; };
    auto a = [](int i) { return 2 + 2 * i; };
    auto maj = [&](int x, int y, int z) {
        c.add("cx", {z, y});
        c.add("cx", {z, x});
        append_toffoli(c, x, y, z);
    };
    auto uma = [&](int x, int y, int z) {
        append_toffoli(c, x, y, z);
        c.add("cx", {z, x});
        c.add("cx", {x, y});
    };
    maj(cin, b(0), a(0));
    for (int i = 1; i < n; i++) {
        maj(a(i - 1), b(i), a(i));
    }
    c.add("cx", {a(n - 1), cout});
    for (int i = n - 1; i >= 1; i--) {
        uma(a(i - 1), b(i), a(i));
    }
    uma(cin, b(0), a(0));
    return c;
}

}  // namespace nsbasis
