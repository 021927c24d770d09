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

#include "nsbasis/serialize.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsbasis {

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

Json to_json(const ArtifactMeta &m) {
    return {{"kind", m.kind}, {"seed", m.seed}, {"config_hash", m.config_hash}};
}

ArtifactMeta meta_from_json(const Json &j) {
    return {j.at("kind").get<std::string>(), j.at("seed").get<uint64_t>(), j.at("config_hash").get<std::string>()};
}

Json to_json(const MatX &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return out;
}

MatX matrix_from_json(const Json &j) {
    std::vector<cplx> entries;
    auto entry = [](const Json &e) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("matrix entries must be [re, im] pairs");
        }
        return cplx(e[0].get<double>(), e[1].get<double>());
    };
    if (!j.is_array()) {
        throw std::invalid_argument("matrix must be a list of [re, im] pairs");
    }
    for (const Json &e : j) {
        if (e.is_array() && !e.empty() && e[0].is_array()) {
            for (const Json &x : e) {
                entries.push_back(entry(x));
            }
        } else {
            entries.push_back(entry(e));
        }
    }
    const int n = (int)std::lround(std::sqrt((double)entries.size()));
    if (n == 0 || n * n != (int)entries.size()) {
        throw std::invalid_argument("matrix must be square");
    }
    MatX m(n, n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            m(r, c) = entries[r * n + c];
        }
    }
    return m;
}

Mat4 mat4_from_json(const Json &j) {
    MatX m = matrix_from_json(j);
    if (m.rows() != 4 || m.cols() != 4) {
        throw std::invalid_argument("expected a 4x4 matrix");
    }
    return m;
}

Json to_json(const CanonicalCoordinate &c) {
    return Json::array({c.tx, c.ty, c.tz});
}

CanonicalCoordinate coordinate_from_json(const Json &j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

namespace {

Json complex_json(cplx z) {
    return Json::array({z.real(), z.imag()});
}

cplx complex_from(const Json &j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json drive_json(const DrivePulse &d) {
    return {{"xi", d.xi}, {"delta_rad_s", d.delta}, {"omega_d_rad_s", d.omega_d}, {"duration_s", d.duration}};
}

DrivePulse drive_from(const Json &j) {
    return {j.at("xi").get<double>(), j.at("delta_rad_s").get<double>(), j.at("omega_d_rad_s").get<double>(),
            j.at("duration_s").get<double>()};
}

}  // namespace

Json to_json(const PairParams &p) {
    return {{"omega_a_rad_s", p.omega_a}, {"omega_b_rad_s", p.omega_b}, {"alpha_a_rad_s", p.alpha_a},
            {"alpha_b_rad_s", p.alpha_b}, {"omega_c0_rad_s", p.omega_c0}, {"alpha_c_rad_s", p.alpha_c},
            {"g_ab_rad_s", complex_json(p.g_ab)}, {"g_bc_rad_s", complex_json(p.g_bc)},
            {"g_ca_rad_s", complex_json(p.g_ca)}, {"levels_q", p.levels_q}, {"levels_c", p.levels_c}};
}

PairParams pair_params_from_json(const Json &j) {
    PairParams p;
    p.omega_a = j.at("omega_a_rad_s").get<double>();
    p.omega_b = j.at("omega_b_rad_s").get<double>();
    p.alpha_a = j.at("alpha_a_rad_s").get<double>();
    p.alpha_b = j.at("alpha_b_rad_s").get<double>();
    p.omega_c0 = j.at("omega_c0_rad_s").get<double>();
    p.alpha_c = j.at("alpha_c_rad_s").get<double>();
    p.g_ab = complex_from(j.at("g_ab_rad_s"));
    p.g_bc = complex_from(j.at("g_bc_rad_s"));
    p.g_ca = complex_from(j.at("g_ca_rad_s"));
    p.levels_q = j.at("levels_q").get<int>();
    p.levels_c = j.at("levels_c").get<int>();
    return p;
}

Json to_json(const DeviceModel &d) {
    Json qubits = Json::array(), edges = Json::array();
    for (const QubitRecord &q : d.qubits) {
        qubits.push_back({{"row", q.row}, {"col", q.col}, {"color", q.color}, {"omega_rad_s", q.omega},
                          {"coherence_s", q.coherence}});
    }
    for (const EdgeRecord &e : d.edges) {
        edges.push_back({{"id", e.id()}, {"a", e.a}, {"b", e.b}, {"biased", e.biased}, {"params", to_json(e.params)}});
    }
    return {{"rows", d.rows}, {"cols", d.cols}, {"seed", d.seed}, {"qubits", qubits}, {"edges", edges}};
}

DeviceModel device_from_json(const Json &j) {
    DeviceModel d;
    d.rows = j.at("rows").get<int>();
    d.cols = j.at("cols").get<int>();
    d.seed = j.at("seed").get<uint64_t>();
    for (const Json &q : j.at("qubits")) {
        d.qubits.push_back({q.at("row").get<int>(), q.at("col").get<int>(), q.at("color").get<int>(),
                            q.at("omega_rad_s").get<double>(), q.at("coherence_s").get<double>()});
    }
    for (const Json &e : j.at("edges")) {
        EdgeRecord r;
        r.a = e.at("a").get<int>();
        r.b = e.at("b").get<int>();
        r.biased = e.at("biased").get<bool>();
        r.params = pair_params_from_json(e.at("params"));
        d.edges.push_back(r);
    }
    if ((int)d.qubits.size() != d.rows * d.cols) {
        throw std::invalid_argument("device qubit count does not match its dimensions");
    }
    return d;
}

Json to_json(const TrajectorySample &s) {
    return {{"duration_s", s.duration}, {"coordinate", to_json(s.coordinate)}, {"leakage", s.leakage},
            {"unitary", to_json(MatX(s.unitary.matrix()))}};
}

TrajectorySample sample_from_json(const Json &j) {
    TrajectorySample s;
    s.duration = j.at("duration_s").get<double>();
    s.coordinate = coordinate_from_json(j.at("coordinate"));
    s.leakage = j.at("leakage").get<double>();
    s.unitary = Unitary2Q(mat4_from_json(j.at("unitary")));
    return s;
}

Json to_json(const Trajectory &t) {
    Json samples = Json::array();
    for (const TrajectorySample &s : t.samples) {
        samples.push_back(to_json(s));
    }
    return {{"pair_id", t.pair_id}, {"drive", drive_json(t.drive)}, {"spacing_s", t.spacing}, {"dt_s", t.dt},
            {"samples", samples}};
}

Trajectory trajectory_from_json(const Json &j) {
    Trajectory t;
    t.pair_id = j.at("pair_id").get<std::string>();
    t.drive = drive_from(j.at("drive"));
    t.spacing = j.at("spacing_s").get<double>();
    t.dt = j.at("dt_s").get<double>();
    for (const Json &s : j.at("samples")) {
        t.samples.push_back(sample_from_json(s));
    }
    return t;
}

Json to_json(const BasisAssignment &a) {
    return {{"edge", a.edge_id}, {"criterion", a.criterion}, {"xi", a.xi}, {"omega_d_rad_s", a.omega_d},
            {"sample", to_json(a.sample)}};
}

BasisAssignment assignment_from_json(const Json &j) {
    BasisAssignment a;
    a.edge_id = j.at("edge").get<std::string>();
    a.criterion = j.at("criterion").get<std::string>();
    a.xi = j.at("xi").get<double>();
    a.omega_d = j.at("omega_d_rad_s").get<double>();
    a.sample = sample_from_json(j.at("sample"));
    return a;
}

Json basis_file_json(const DeviceSelection &sel, const std::string &criterion) {
    Json assignments = Json::array(), failures = Json::array();
    for (const EdgeSelection &e : sel.edges) {
        auto a = e.assignments.find(criterion);
        if (a != e.assignments.end()) {
            assignments.push_back(to_json(a->second));
        }
        auto f = e.failures.find(criterion);
        if (f != e.failures.end()) {
            failures.push_back({{"edge", e.edge_id}, {"reason", f->second}});
        }
    }
    return {{"criterion", criterion}, {"assignments", assignments}, {"failures", failures}};
}

BasisSet basis_set_from_json(const Json &j) {
    BasisSet b;
    for (const Json &a : j.at("assignments")) {
        BasisAssignment x = assignment_from_json(a);
        b[x.edge_id] = {x.criterion, x.sample.unitary.matrix(), x.sample.duration * 1e9};
    }
    return b;
}

Json to_json(const GateDecomposition &d) {
    Json layers = Json::array(), locals = Json::array();
    for (const Mat4 &l : d.layers) {
        layers.push_back(to_json(MatX(l)));
    }
    for (const auto &pair : d.locals) {
        locals.push_back(Json::array({to_json(MatX(pair[0])), to_json(MatX(pair[1]))}));
    }
    return {{"target", d.target_id}, {"layer_ids", d.layer_ids}, {"layers", layers}, {"locals", locals},
            {"infidelity", d.infidelity}, {"restarts_used", d.restarts_used}};
}

GateDecomposition decomposition_from_json(const Json &j) {
    GateDecomposition d;
    d.target_id = j.at("target").get<std::string>();
    d.layer_ids = j.at("layer_ids").get<std::vector<std::string>>();
    for (const Json &l : j.at("layers")) {
        d.layers.push_back(mat4_from_json(l));
    }
    for (const Json &p : j.at("locals")) {
        d.locals.push_back({Mat2(matrix_from_json(p.at(0))), Mat2(matrix_from_json(p.at(1)))});
    }
    if (d.locals.size() != d.layers.size() + 1) {
        throw std::invalid_argument("decomposition needs one more local layer than native layers");
    }
    d.infidelity = j.at("infidelity").get<double>();
    d.restarts_used = j.at("restarts_used").get<int>();
    return d;
}

Json to_json(const DecompositionCache &c) {
    Json entries = Json::array();
    for (const auto &[key, d] : c.entries) {
        entries.push_back({{"edge", key.first}, {"target", key.second}, {"decomposition", to_json(d)}});
    }
    return {{"timestamp", c.timestamp}, {"entries", entries}};
}

DecompositionCache cache_from_json(const Json &j) {
    DecompositionCache c;
    c.timestamp = j.at("timestamp").get<std::string>();
    for (const Json &e : j.at("entries")) {
        c.entries[{e.at("edge").get<std::string>(), e.at("target").get<std::string>()}] =
            decomposition_from_json(e.at("decomposition"));
    }
    return c;
}

Json to_json(const Circuit &c) {
    Json gates = Json::array();
    for (const Gate &g : c.gates) {
        Json jg = {{"name", g.name}, {"qubits", g.qubits}};
        if (!g.params.empty()) {
            jg["params"] = g.params;
        }
        if (g.name == "unitary") {
            jg["matrix"] = to_json(g.matrix);
        }
        if (!g.label.empty()) {
            jg["label"] = g.label;
        }
        gates.push_back(jg);
    }
    return {{"num_qubits", c.num_qubits}, {"gates", gates}};
}

Circuit circuit_from_json(const Json &j) {
    Circuit c;
    c.num_qubits = j.at("num_qubits").get<int>();
    for (const Json &jg : j.at("gates")) {
        Gate g;
        g.name = jg.at("name").get<std::string>();
        g.qubits = jg.at("qubits").get<std::vector<int>>();
        g.params = jg.value("params", std::vector<double>{});
        g.label = jg.value("label", std::string{});
        if (g.name == "unitary") {
            g.matrix = matrix_from_json(jg.at("matrix"));
        }
        c.gates.push_back(g);
    }
    validate(c);
    return c;
}

Json to_json(const ScheduledCircuit &s, const Circuit &native) {
    Json gates = Json::array(), qubits = Json::array();
    for (const ScheduledGate &g : s.gates) {
        const Gate &src = native.gates.at(g.gate_index);
        Json jg = {{"index", g.gate_index}, {"name", src.name}, {"qubits", g.qubits}, {"start_ns", g.start_ns},
                   {"duration_ns", g.duration_ns}};
        if (!src.label.empty()) {
            jg["label"] = src.label;
        }
        gates.push_back(jg);
    }
    for (int q = 0; q < s.num_qubits; q++) {
        qubits.push_back({{"qubit", q}, {"active", (bool)s.active[q]}, {"t_start_ns", s.t_start[q]},
                          {"t_end_ns", s.t_end[q]}});
    }
    return {{"num_qubits", s.num_qubits}, {"total_ns", s.total_ns}, {"qubits", qubits}, {"gates", gates}};
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
}

std::string read_text(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_json(const std::string &path, const Json &j) {
    write_text(path, j.dump(1) + "\n");
}

Json read_json(const std::string &path) {
    const std::string text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace nsbasis
