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

#include "nsbasis/circuit.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nsbasis/errors.h"

namespace nsbasis {

namespace {

struct GateInfo {
    int arity;
    int params;
};

const std::map<std::string, GateInfo> &gate_table() {
    static const std::map<std::string, GateInfo> t{
        {"x", {1, 0}},   {"y", {1, 0}},  {"z", {1, 0}},     {"h", {1, 0}},     {"s", {1, 0}},  {"sdg", {1, 0}},
        {"t", {1, 0}},   {"tdg", {1, 0}}, {"rx", {1, 1}},   {"ry", {1, 1}},    {"rz", {1, 1}}, {"u3", {1, 3}},
        {"cx", {2, 0}},  {"cz", {2, 0}}, {"swap", {2, 0}},  {"iswap", {2, 0}}, {"cp", {2, 1}}, {"crz", {2, 1}},
    };
    return t;
}

Mat2 one_qubit(const std::string &n, const std::vector<double> &p) {
    const double r = std::sqrt(0.5);
    Mat2 m;
    if (n == "x") {
        return pauli::X();
    }
    if (n == "y") {
        return pauli::Y();
    }
    if (n == "z") {
        return pauli::Z();
    }
    if (n == "h") {
        m << r, r, r, -r;
        return m;
    }
    if (n == "s" || n == "sdg" || n == "t" || n == "tdg") {
        const double angle = (n == "s" ? 0.5 : n == "sdg" ? -0.5 : n == "t" ? 0.25 : -0.25) * kPi;
        m << 1, 0, 0, std::polar(1.0, angle);
        return m;
    }
    if (n == "rx") {
        return rx(p[0]);
    }
    if (n == "ry") {
        return ry(p[0]);
    }
    if (n == "rz") {
        return rz(p[0]);
    }
    // u3(theta, phi, lambda)
    const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
    m << c, -std::polar(s, p[2]), std::polar(s, p[1]), std::polar(c, p[1] + p[2]);
    return m;
}

Mat4 two_qubit(const std::string &n, const std::vector<double> &p) {
    Mat4 m = Mat4::Identity();
    if (n == "cx") {
        m(2, 2) = m(3, 3) = 0;
        m(2, 3) = m(3, 2) = 1;
    } else if (n == "cz") {
        m(3, 3) = -1;
    } else if (n == "swap") {
        m(1, 1) = m(2, 2) = 0;
        m(1, 2) = m(2, 1) = 1;
    } else if (n == "iswap") {
        m(1, 1) = m(2, 2) = 0;
        m(1, 2) = m(2, 1) = kI;
    } else if (n == "cp") {
        m(3, 3) = std::polar(1.0, p[0]);
    } else {  // crz
        m(2, 2) = std::polar(1.0, -p[0] / 2);
        m(3, 3) = std::polar(1.0, p[0] / 2);
    }
    return m;
}

}  // namespace

void Circuit::add(const std::string &name, std::vector<int> qubits, std::vector<double> params) {
    gates.push_back({name, std::move(qubits), std::move(params), MatX(), ""});
}

void Circuit::add_unitary(const MatX &m, std::vector<int> qubits, const std::string &label) {
    gates.push_back({"unitary", std::move(qubits), {}, m, label});
}

int Circuit::two_qubit_count() const {
    return (int)std::count_if(gates.begin(), gates.end(), [](const Gate &g) { return g.is_two_qubit(); });
}

const std::vector<std::string> &standard_gates() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[k, info] : gate_table()) {
            v.push_back(k);
        }
        return v;
    }();
    return names;
}

bool is_standard_gate(const std::string &name) {
    return gate_table().count(name) > 0;
}

int gate_arity(const std::string &name) {
    auto it = gate_table().find(name);
    if (it == gate_table().end()) {
        throw UnsupportedGate(name);
    }
    return it->second.arity;
}

int gate_param_count(const std::string &name) {
    auto it = gate_table().find(name);
    if (it == gate_table().end()) {
        throw UnsupportedGate(name);
    }
    return it->second.params;
}

MatX gate_matrix(const Gate &g) {
    if (g.name == "unitary") {
        return g.matrix;
    }
    if (gate_arity(g.name) == 1) {
        return one_qubit(g.name, g.params);
    }
    return two_qubit(g.name, g.params);
}

void validate(const Circuit &c) {
    for (const Gate &g : c.gates) {
        const int arity = g.name == "unitary" ? (int)std::lround(std::log2((double)g.matrix.rows())) : gate_arity(g.name);
        if ((int)g.qubits.size() != arity || arity < 1 || arity > 2) {
            throw std::invalid_argument("gate " + g.name + " has the wrong number of operands");
        }
        if (g.name != "unitary" && (int)g.params.size() != gate_param_count(g.name)) {
            throw std::invalid_argument("gate " + g.name + " has the wrong number of parameters");
        }
        for (int q : g.qubits) {
            if (q < 0 || q >= c.num_qubits) {
                throw std::invalid_argument("gate " + g.name + " operand out of range");
            }
        }
        if (arity == 2 && g.qubits[0] == g.qubits[1]) {
            throw std::invalid_argument("gate " + g.name + " has repeated operands");
        }
    }
}

MatX circuit_unitary(const Circuit &c) {
    validate(c);
    const int n = c.num_qubits;
    const Eigen::Index dim = Eigen::Index(1) << n;
    MatX u = MatX::Identity(dim, dim);
    for (const Gate &g : c.gates) {
        const MatX m = gate_matrix(g);
        const int k = (int)g.qubits.size();
        std::vector<int> shift(k);
        for (int j = 0; j < k; j++) {
            shift[j] = n - 1 - g.qubits[j];
        }
        Eigen::Index mask = 0;
        for (int s : shift) {
            mask |= Eigen::Index(1) << s;
        }
        MatX next = MatX::Zero(dim, dim);
        for (Eigen::Index col = 0; col < dim; col++) {
            for (Eigen::Index row = 0; row < dim; row++) {
                const cplx v = u(row, col);
                if (v == cplx(0)) {
                    continue;
                }
                int local = 0;
                for (int j = 0; j < k; j++) {
                    local = (local << 1) | (int)((row >> shift[j]) & 1);
                }
                const Eigen::Index base = row & ~mask;
                for (int out = 0; out < (1 << k); out++) {
                    Eigen::Index target = base;
                    for (int j = 0; j < k; j++) {
                        if ((out >> (k - 1 - j)) & 1) {
                            target |= Eigen::Index(1) << shift[j];
                        }
                    }
                    next(target, col) += m(out, local) * v;
                }
            }
        }
        u = std::move(next);
    }
    return u;
}

}  // namespace nsbasis
