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

#include "nsbasis/selector.h"

#include <stdexcept>

#include "nsbasis/errors.h"
#include "nsbasis/hamsim.h"
#include "nsbasis/synth.h"

namespace nsbasis {

namespace {

const CanonicalCoordinate kSqrtIswap{0.25, 0.25, 0.0};

BasisAssignment assignment(const Trajectory &traj, const std::string &criterion, const TrajectorySample &s) {
    BasisAssignment a;
    a.edge_id = traj.pair_id;
    a.criterion = criterion;
    a.sample = s;
    a.xi = traj.drive.xi;
    a.omega_d = traj.drive.omega_d;
    return a;
}

EdgeSelection run_edge(const EdgeRecord &edge, const std::vector<CriterionSpec> &criteria, const DriveSettings &s) {
    EdgeSelection out;
    out.edge_id = edge.id();
    bool need_low = false, need_high = false;
    for (const CriterionSpec &c : criteria) {
        (c.baseline ? need_low : need_high) = true;
    }
    if (!edge.biased) {
        for (const CriterionSpec &c : criteria) {
            out.failures[c.id] = "edge has no zero-ZZ bias";
        }
        return out;
    }
    std::map<bool, Trajectory> traj;
    std::map<bool, std::string> sim_error;
    for (bool low : {true, false}) {
        if (!(low ? need_low : need_high)) {
            continue;
        }
        try {
            traj[low] = low ? simulate_edge(edge, s.xi_baseline, s.t_max_baseline, s)
                            : simulate_edge(edge, s.xi_nonstandard, s.t_max_nonstandard, s);
            out.trajectories.push_back(traj[low]);
        } catch (const Error &e) {
            sim_error[low] = std::string("simulation failed: ") + e.what();
        }
    }
    for (const CriterionSpec &c : criteria) {
        auto err = sim_error.find(c.baseline);
        if (err != sim_error.end()) {
            out.failures[c.id] = err->second;
            continue;
        }
        try {
            BasisAssignment a = select_basis(traj[c.baseline], c);
            a.edge_id = out.edge_id;
            out.assignments[c.id] = a;
        } catch (const Error &e) {
            out.failures[c.id] = e.what();
        }
    }
    return out;
}

DeviceSelection start(const std::vector<CriterionSpec> &criteria, size_t n_edges) {
    DeviceSelection d;
    for (const CriterionSpec &c : criteria) {
        d.criteria.push_back(c.id);
    }
    d.edges.resize(n_edges);
    return d;
}

}  // namespace

CriterionSpec criterion_by_name(const std::string &name) {
    if (name == "baseline" || name == "baseline_sqiswap") {
        return {"baseline_sqiswap", true, {"baseline_sqiswap", {}}};
    }
    if (name == "criterion1") {
        return {name, false, criterion1()};
    }
    if (name == "criterion2") {
        return {name, false, criterion2()};
    }
    throw std::invalid_argument("unknown criterion '" + name + "'");
}

CriterionSpec custom_criterion(const std::string &id, std::vector<Region> regions) {
    return {id, false, {id, std::move(regions)}};
}

BasisAssignment select_basis(const Trajectory &traj, const SelectionCriterion &crit) {
    Trajectory rest = traj;
    double leak = -1;
    for (;;) {
        HitResult hit;
        try {
            hit = first_hit(rest, crit);
        } catch (const NoIntersection &) {
            if (leak < 0) {
                throw NoIntersection("no trajectory sample satisfies " + crit.id, traj.max_duration());
            }
            throw ExcessiveLeakage("every " + crit.id + " sample leaks; first leaks " + std::to_string(leak), leak);
        }
        if (hit.sample.leakage <= kMaxLeakage) {
            return assignment(traj, crit.id, hit.sample);
        }
        if (leak < 0) {
            leak = hit.sample.leakage;
        }
        rest.samples.erase(rest.samples.begin(), rest.samples.begin() + (long)hit.index + 1);
    }
}

BasisAssignment select_baseline(const Trajectory &traj) {
    const auto &samples = traj.samples;
    const SelectionCriterion depths = criterion2();
    // First run of trustworthy samples near sqrt(iSWAP) with its synthesis depths; the closest one.
    const TrajectorySample *best = nullptr;
    for (const TrajectorySample &s : samples) {
        const bool candidate = weyl_distance(s.coordinate, kSqrtIswap) <= kBaselineRadius &&
                               depths.satisfied_by(s.coordinate) && s.leakage <= kMaxLeakage;
        if (candidate) {
            if (best == nullptr ||
                weyl_distance(s.coordinate, kSqrtIswap) < weyl_distance(best->coordinate, kSqrtIswap)) {
                best = &s;
            }
        } else if (best != nullptr) {
            break;
        }
    }
    if (best != nullptr) {
        return assignment(traj, "baseline_sqiswap", *best);
    }
    double leak = -1;
    for (size_t i = 1; i + 1 < samples.size(); i++) {
        const double d = weyl_distance(samples[i].coordinate, kSqrtIswap);
        if (d <= kBaselineRadius && d <= weyl_distance(samples[i - 1].coordinate, kSqrtIswap) &&
            d <= weyl_distance(samples[i + 1].coordinate, kSqrtIswap)) {
            if (samples[i].leakage <= kMaxLeakage) {
                return assignment(traj, "baseline_sqiswap", samples[i]);
            }
            if (leak < 0) {
                leak = samples[i].leakage;
            }
        }
    }
    if (leak >= 0) {
        throw ExcessiveLeakage("every baseline candidate leaks; first leaks " + std::to_string(leak), leak);
    }
    throw NoIntersection("trajectory does not pass within " + std::to_string(kBaselineRadius) + " of sqrt(iSWAP)",
                         traj.max_duration());
}

BasisAssignment select_basis(const Trajectory &traj, const CriterionSpec &spec) {
    BasisAssignment a = spec.baseline ? select_baseline(traj) : select_basis(traj, spec.criterion);
    a.criterion = spec.id;
    return a;
}

Trajectory simulate_edge(const EdgeRecord &edge, double xi, double t_max, const DriveSettings &s) {
    const double omega_d = find_drive_frequency(edge.params, xi, s.dt);
    Trajectory t = sample_trajectory(edge.params, DrivePulse::from_xi(xi, omega_d), t_max, s.spacing, s.dt);
    t.pair_id = edge.id();
    return t;
}

BasisSet DeviceSelection::basis_set(const std::string &criterion) const {
    BasisSet b;
    for (const EdgeSelection &e : edges) {
        auto it = e.assignments.find(criterion);
        if (it != e.assignments.end()) {
            b[e.edge_id] = {criterion, it->second.sample.unitary.matrix(), it->second.sample.duration * 1e9};
        }
    }
    return b;
}

std::vector<GateTableRow> DeviceSelection::summary(const CoherenceParams &cp, double single_qubit_ns) const {
    std::vector<GateTableRow> rows;
    const CanonicalCoordinate swap_c = cartan_coordinate(gates::swap()), cnot_c = cartan_coordinate(gates::cnot());
    for (const std::string &crit : criteria) {
        GateTableRow r;
        r.label = crit;
        int n = 0;
        for (const EdgeSelection &e : edges) {
            auto it = e.assignments.find(crit);
            if (it == e.assignments.end()) {
                continue;
            }
            const double d = it->second.sample.duration * 1e9;
            const CanonicalCoordinate &c = it->second.sample.coordinate;
            const double swap_ns = synthesized_duration(min_layers(swap_c, c).layers, d, single_qubit_ns);
            const double cnot_ns = synthesized_duration(min_layers(cnot_c, c).layers, d, single_qubit_ns);
            r.basis_ns += d;
            r.swap_ns += swap_ns;
            r.cnot_ns += cnot_ns;
            r.basis_fidelity += gate_coherence_limit(d, cp);
            r.swap_fidelity += gate_coherence_limit(swap_ns, cp);
            r.cnot_fidelity += gate_coherence_limit(cnot_ns, cp);
            n++;
        }
        if (n > 0) {
            for (double *v : {&r.basis_ns, &r.swap_ns, &r.cnot_ns, &r.basis_fidelity, &r.swap_fidelity,
                              &r.cnot_fidelity}) {
                *v /= n;
            }
        }
        rows.push_back(r);
    }
    return rows;
}

int DeviceSelection::failure_count() const {
    int n = 0;
    for (const EdgeSelection &e : edges) {
        n += (int)e.failures.size();
    }
    return n;
}

DeviceSelection select_device(const DeviceModel &d, const std::vector<CriterionSpec> &criteria,
                              const DriveSettings &s) {
    DeviceSelection out = start(criteria, d.edges.size());
    const int n = (int)d.edges.size();
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; i++) {
        out.edges[i] = run_edge(d.edges[i], criteria, s);
    }
    return out;
}

DeviceSelection select_device_serial(const DeviceModel &d, const std::vector<CriterionSpec> &criteria,
                                     const DriveSettings &s) {
    DeviceSelection out = start(criteria, d.edges.size());
    for (size_t i = 0; i < d.edges.size(); i++) {
        out.edges[i] = run_edge(d.edges[i], criteria, s);
    }
    return out;
}

double synthesized_duration(int layers, double native_ns, double single_qubit_ns) {
    if (layers == 0) {
        return single_qubit_ns;
    }
    return layers * native_ns + (layers + 1) * single_qubit_ns;
}

}  // namespace nsbasis
