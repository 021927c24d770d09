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

#include "nsbasis/transpile.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>

#include "nsbasis/errors.h"
#include "nsbasis/weyl.h"

namespace nsbasis {

namespace {

Mat4 swap_conjugate(const Mat4 &g) {
    const Mat4 s = gates::swap();
    return s * g * s;
}

constexpr double kClassMatch = 1e-6;
constexpr double kAdaptedInfidelity = 1e-12;

bool is_identity_up_to_phase(const MatX &m, double tol) {
    return std::abs(m.trace()) / (double)m.rows() > 1.0 - tol;
}

/// A decomposition of one local-equivalence class on one edge, with the KAK factors of its
/// reassembled unitary.
struct ClassDecomposition {
    GateDecomposition decomposition;
    KakFactorization kak;
};

ClassDecomposition with_kak(GateDecomposition d) {
    KakFactorization k = kak_decompose(Mat4(polar_unitary(d.reassemble())));
    return {std::move(d), k};
}

/// Rewrites a decomposition of a locally equivalent gate into one of target by absorbing the
/// KAK local factors into the outer 1Q layers. Returns nothing when the result misses target.
std::optional<GateDecomposition> adapt(const ClassDecomposition &cd, const KakFactorization &tk, const Mat4 &target) {
    GateDecomposition d = cd.decomposition;
    const KakFactorization &vk = cd.kak;
    const int n = d.depth();
    for (int q = 0; q < 2; q++) {
        d.locals[0][q] = d.locals[0][q] * vk.right[q].adjoint() * tk.right[q];
        d.locals[n][q] = tk.left[q] * vk.left[q].adjoint() * d.locals[n][q];
    }
    d.infidelity = trace_infidelity(target, d.reassemble());
    if (d.infidelity > kAdaptedInfidelity) {
        return std::nullopt;
    }
    return d;
}

void emit_local(Circuit &out, const Mat2 &m, int q) {
    out.add_unitary(m, {q});
}

}  // namespace

std::string edge_id(int q1, int q2) {
    return std::to_string(std::min(q1, q2)) + "-" + std::to_string(std::max(q1, q2));
}

CouplingMap CouplingMap::grid(int rows, int cols) {
    CouplingMap m;
    m.num_qubits = rows * cols;
    for (int q = 0; q < rows * cols; q++) {
        if ((q % cols) + 1 < cols) {
            m.edges.emplace_back(q, q + 1);
        }
        if (q / cols + 1 < rows) {
            m.edges.emplace_back(q, q + cols);
        }
    }
    return m;
}

CouplingMap CouplingMap::from_device(const DeviceModel &d) {
    CouplingMap m;
    m.num_qubits = (int)d.qubits.size();
    for (const EdgeRecord &e : d.edges) {
        m.edges.emplace_back(e.a, e.b);
    }
    return m;
}

bool CouplingMap::adjacent(int q1, int q2) const {
    const std::pair<int, int> key{std::min(q1, q2), std::max(q1, q2)};
    return std::find(edges.begin(), edges.end(), key) != edges.end();
}

std::vector<int> CouplingMap::neighbors(int q) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
        if (a == q) {
            out.push_back(b);
        } else if (b == q) {
            out.push_back(a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CouplingMap::shortest_path(int from, int to) const {
    std::vector<int> parent(num_qubits, -1);
    std::deque<int> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        if (q == to) {
            break;
        }
        for (int n : neighbors(q)) {
            if (parent[n] < 0) {
                parent[n] = q;
                queue.push_back(n);
            }
        }
    }
    if (parent[to] < 0) {
        throw std::invalid_argument("qubits " + std::to_string(from) + " and " + std::to_string(to) +
                                    " are not connected");
    }
    std::vector<int> path{to};
    while (path.back() != from) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

RoutedCircuit route(const Circuit &c, const CouplingMap &cmap, std::vector<int> initial_layout) {
    validate(c);
    if (c.num_qubits > cmap.num_qubits) {
        throw std::invalid_argument("circuit has more qubits than the device");
    }
    if (initial_layout.empty()) {
        for (int q = 0; q < c.num_qubits; q++) {
            initial_layout.push_back(q);
        }
    }
    if ((int)initial_layout.size() != c.num_qubits) {
        throw std::invalid_argument("layout size does not match the circuit");
    }
    std::vector<int> owner(cmap.num_qubits, -1);  // physical -> logical
    for (int l = 0; l < c.num_qubits; l++) {
        const int p = initial_layout[l];
        if (p < 0 || p >= cmap.num_qubits || owner[p] >= 0) {
            throw std::invalid_argument("invalid initial layout");
        }
        owner[p] = l;
    }
    RoutedCircuit r;
    r.circuit.num_qubits = cmap.num_qubits;
    r.initial_layout = initial_layout;
    std::vector<int> layout = initial_layout;
    for (const Gate &g : c.gates) {
        Gate mapped = g;
        if (g.is_two_qubit()) {
            const int p1 = layout[g.qubits[0]], p2 = layout[g.qubits[1]];
            if (!cmap.adjacent(p1, p2)) {
                const std::vector<int> path = cmap.shortest_path(p1, p2);
                for (size_t k = 0; k + 2 < path.size(); k++) {
                    const int x = path[k], y = path[k + 1];
                    r.circuit.add("swap", {x, y});
                    r.swaps_inserted++;
                    std::swap(owner[x], owner[y]);
                    if (owner[x] >= 0) {
                        layout[owner[x]] = x;
                    }
                    if (owner[y] >= 0) {
                        layout[owner[y]] = y;
                    }
                }
            }
        }
        for (int &q : mapped.qubits) {
            q = layout[q];
        }
        r.circuit.gates.push_back(std::move(mapped));
    }
    r.final_layout = layout;
    return r;
}

Circuit fuse_single_qubit(const Circuit &c) {
    Circuit out;
    out.num_qubits = c.num_qubits;
    std::vector<Mat2> pending(c.num_qubits, Mat2::Identity());
    std::vector<bool> has(c.num_qubits, false);
    auto flush = [&](int q) {
        if (has[q] && !is_identity_up_to_phase(pending[q], 1e-12)) {
            emit_local(out, pending[q], q);
        }
        pending[q] = Mat2::Identity();
        has[q] = false;
    };
    for (const Gate &g : c.gates) {
        if (g.qubits.size() == 1) {
            const int q = g.qubits[0];
            pending[q] = Mat2(gate_matrix(g)) * pending[q];
            has[q] = true;
        } else {
            for (int q : g.qubits) {
                flush(q);
            }
            out.gates.push_back(g);
        }
    }
    for (int q = 0; q < c.num_qubits; q++) {
        flush(q);
    }
    return out;
}

namespace {

/// Lowers two-qubit unitaries on one device, memoizing class decompositions per edge.
class PairLowerer {
public:
    PairLowerer(const BasisSet &basis, const DecompositionCache &cache, const SynthesisOptions &fallback,
                TwoQubitLowering strategy)
        : basis_(basis), fallback_(fallback), strategy_(strategy) {
        for (const auto &[key, d] : cache.entries) {
            known_[key.first].push_back(with_kak(d));
        }
    }

    /// Appends gates implementing target on (a, b), a < b, to out.
    void emit(Circuit &out, const Mat4 &target, int a, int b, const std::string &name) {
        const std::string edge = edge_id(a, b);
        auto nb = basis_.find(edge);
        if (nb == basis_.end()) {
            throw LoweringFailed("edge " + edge + " has no native gate for " + name);
        }
        const KakFactorization tk = kak_decompose(target);
        if (weyl_distance(tk.coordinate, CanonicalCoordinate{}) <= tolerances().geometry) {
            emit_local(out, tk.left[0] * tk.right[0], a);
            emit_local(out, tk.left[1] * tk.right[1], b);
            return;
        }
        if (strategy_ == TwoQubitLowering::ViaCnot && !is_cnot_or_swap(tk.coordinate)) {
            const GateDecomposition d = cnot_decomposition(target, tk, name);
            for (int k = 0; k <= d.depth(); k++) {
                emit_local(out, d.locals[k][0], a);
                emit_local(out, d.locals[k][1], b);
                if (k < d.depth()) {
                    emit(out, gates::cnot(), a, b, "cx");
                }
            }
            return;
        }
        const GateDecomposition d = native_decomposition(target, tk, edge, nb->second, name);
        for (int k = 0; k <= d.depth(); k++) {
            emit_local(out, d.locals[k][0], a);
            emit_local(out, d.locals[k][1], b);
            if (k < d.depth()) {
                out.add_unitary(d.layers[k], {a, b}, nb->second.gate_id);
            }
        }
    }

private:
    static bool is_cnot_or_swap(const CanonicalCoordinate &c) {
        return weyl_distance(c, cartan_coordinate(gates::cnot())) <= kClassMatch ||
               weyl_distance(c, cartan_coordinate(gates::swap())) <= kClassMatch;
    }

    static std::optional<GateDecomposition> reuse(const std::vector<ClassDecomposition> &list,
                                                  const KakFactorization &tk, const Mat4 &target) {
        for (const ClassDecomposition &cd : list) {
            if (weyl_distance(cd.kak.coordinate, tk.coordinate) <= kClassMatch) {
                if (auto d = adapt(cd, tk, target)) {
                    return d;
                }
            }
        }
        return std::nullopt;
    }

    GateDecomposition synthesize_class(std::vector<ClassDecomposition> &list, const Mat4 &target,
                                       const KakFactorization &tk, const Mat4 &layer, const std::string &layer_id,
                                       const std::string &what) {
        try {
            const int n = min_layers(tk.coordinate, cartan_coordinate(layer), fallback_).layers;
            const std::vector<Mat4> layers(n, layer);
            GateDecomposition d = synthesize(canonical_gate(tk.coordinate), layers, fallback_);
            d.layer_ids.assign(n, layer_id);
            list.push_back(with_kak(d));
            if (auto adapted = adapt(list.back(), tk, target)) {
                return *adapted;
            }
            GateDecomposition direct = synthesize(target, layers, fallback_);
            direct.layer_ids.assign(n, layer_id);
            return direct;
        } catch (const SynthesisFailed &e) {
            throw LoweringFailed("synthesis of " + what + " failed: " + e.what());
        }
    }

    GateDecomposition native_decomposition(const Mat4 &target, const KakFactorization &tk, const std::string &edge,
                                           const NativeGate &native, const std::string &name) {
        std::vector<ClassDecomposition> &list = known_[edge];
        if (auto d = reuse(list, tk, target)) {
            return *d;
        }
        return synthesize_class(list, target, tk, native.unitary, native.gate_id, name + " on edge " + edge);
    }

    GateDecomposition cnot_decomposition(const Mat4 &target, const KakFactorization &tk, const std::string &name) {
        if (auto d = reuse(cnot_known_, tk, target)) {
            return *d;
        }
        return synthesize_class(cnot_known_, target, tk, gates::cnot(), "cx", name + " into cx");
    }

    const BasisSet &basis_;
    SynthesisOptions fallback_;
    TwoQubitLowering strategy_;
    std::map<std::string, std::vector<ClassDecomposition>> known_;
    std::vector<ClassDecomposition> cnot_known_;
};

}  // namespace

Circuit lower(const Circuit &routed, const CouplingMap &cmap, const BasisSet &basis, const DecompositionCache &cache,
              const SynthesisOptions &fallback, TwoQubitLowering strategy) {
    validate(routed);
    Circuit out;
    out.num_qubits = routed.num_qubits;
    PairLowerer lowerer(basis, cache, fallback, strategy);
    for (const Gate &g : routed.gates) {
        if (!g.is_two_qubit()) {
            out.gates.push_back(g);
            continue;
        }
        const int q1 = g.qubits[0], q2 = g.qubits[1];
        if (!cmap.adjacent(q1, q2)) {
            throw LoweringFailed("gate " + g.name + " acts on non-edge " + edge_id(q1, q2));
        }
        const Mat4 target = q1 < q2 ? Mat4(gate_matrix(g)) : swap_conjugate(Mat4(gate_matrix(g)));
        lowerer.emit(out, target, std::min(q1, q2), std::max(q1, q2), g.name);
    }
    return fuse_single_qubit(out);
}

GateDurations GateDurations::from_basis(const BasisSet &basis, double single_qubit_ns) {
    GateDurations d;
    d.single_qubit_ns = single_qubit_ns;
    for (const auto &[edge, native] : basis) {
        d.two_qubit_ns[edge] = native.duration_ns;
    }
    return d;
}

ScheduledCircuit schedule(const Circuit &native, const GateDurations &durations) {
    ScheduledCircuit s;
    s.num_qubits = native.num_qubits;
    s.t_start.assign(native.num_qubits, 0);
    s.t_end.assign(native.num_qubits, 0);
    s.active.assign(native.num_qubits, false);
    std::vector<double> ready(native.num_qubits, 0);
    for (size_t i = 0; i < native.gates.size(); i++) {
        const Gate &g = native.gates[i];
        double duration = durations.single_qubit_ns;
        if (g.is_two_qubit()) {
            auto it = durations.two_qubit_ns.find(edge_id(g.qubits[0], g.qubits[1]));
            if (it == durations.two_qubit_ns.end()) {
                throw std::invalid_argument("no duration for two-qubit gate on edge " +
                                            edge_id(g.qubits[0], g.qubits[1]));
            }
            duration = it->second;
        }
        if (!(duration > 0)) {
            throw std::invalid_argument("gate durations must be positive");
        }
        double start = 0;
        for (int q : g.qubits) {
            start = std::max(start, ready[q]);
        }
        for (int q : g.qubits) {
            if (!s.active[q]) {
                s.active[q] = true;
                s.t_start[q] = start;
            }
            ready[q] = start + duration;
            s.t_end[q] = start + duration;
        }
        s.gates.push_back({i, g.qubits, start, duration});
        s.total_ns = std::max(s.total_ns, start + duration);
    }
    return s;
}

}  // namespace nsbasis
