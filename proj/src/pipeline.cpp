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

#include "nsbasis/pipeline.h"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <regex>
#include <stdexcept>

#include "nsbasis/benchmarks.h"
#include "nsbasis/hamsim.h"

namespace nsbasis {

namespace fs = std::filesystem;

namespace {

/// Runs one stage body, rethrowing library and I/O failures as StageError.
template <typename F>
auto stage(const std::string &name, const std::string &artifact, F &&body) {
    try {
        return body();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(name, artifact, e.what());
    }
}

Json with_meta(const std::string &kind, const PipelineConfig &cfg, Json body) {
    body["meta"] = to_json(ArtifactMeta{kind, cfg.seed, cfg.hash()});
    return body;
}

SynthesisOptions synthesis_options(const PipelineConfig &cfg) {
    SynthesisOptions o;
    o.seed = cfg.seed;
    o.restarts = cfg.synthesis_restarts;
    return o;
}

std::string cache_timestamp(const PipelineConfig &cfg) {
    return "seed-" + std::to_string(cfg.seed) + "-" + cfg.hash();
}

Json trajectory_summary(const EdgeSelection &e) {
    Json traj = Json::array();
    for (const Trajectory &t : e.trajectories) {
        Json samples = Json::array();
        for (const TrajectorySample &s : t.samples) {
            samples.push_back({{"duration_s", s.duration}, {"coordinate", to_json(s.coordinate)}, {"leakage", s.leakage}});
        }
        traj.push_back({{"xi", t.drive.xi}, {"omega_d_rad_s", t.drive.omega_d}, {"samples", samples}});
    }
    Json failures = Json::object();
    for (const auto &[crit, reason] : e.failures) {
        failures[crit] = reason;
    }
    return {{"edge", e.edge_id}, {"trajectories", traj}, {"failures", failures}};
}

std::string trajectory_csv(const DeviceSelection &sel) {
    std::string out = "edge,xi,duration_ns,tx,ty,tz,leakage\n";
    char buf[256];
    for (const EdgeSelection &e : sel.edges) {
        for (const Trajectory &t : e.trajectories) {
            for (const TrajectorySample &s : t.samples) {
                std::snprintf(buf, sizeof buf, "%s,%.4g,%.4f,%.10f,%.10f,%.10f,%.6e\n", e.edge_id.c_str(), t.drive.xi,
                              s.duration * 1e9, s.coordinate.tx, s.coordinate.ty, s.coordinate.tz, s.leakage);
                out += buf;
            }
        }
    }
    return out;
}

std::string circuit_file(const std::string &benchmark, const std::string &criterion) {
    return "circuits/" + benchmark + "_" + criterion + ".json";
}

}  // namespace

Json PipelineConfig::to_json() const {
    return {{"seed", seed},
            {"rows", rows},
            {"cols", cols},
            {"xi_baseline", drive.xi_baseline},
            {"xi_nonstandard", drive.xi_nonstandard},
            {"t_max_baseline_ns", drive.t_max_baseline * 1e9},
            {"t_max_nonstandard_ns", drive.t_max_nonstandard * 1e9},
            {"spacing_ns", drive.spacing * 1e9},
            {"dt_ps", drive.dt * 1e12},
            {"criteria", criteria},
            {"benchmarks", benchmarks},
            {"output_dir", output_dir},
            {"jobs", jobs},
            {"synthesis_restarts", synthesis_restarts},
            {"single_qubit_ns", single_qubit_ns},
            {"coherence_us", coherence_s * 1e6}};
}

PipelineConfig PipelineConfig::from_json(const Json &j) {
    PipelineConfig c;
    c.seed = j.value("seed", c.seed);
    c.rows = j.value("rows", c.rows);
    c.cols = j.value("cols", c.cols);
    c.drive.xi_baseline = j.value("xi_baseline", c.drive.xi_baseline);
    c.drive.xi_nonstandard = j.value("xi_nonstandard", c.drive.xi_nonstandard);
    c.drive.t_max_baseline = j.value("t_max_baseline_ns", c.drive.t_max_baseline * 1e9) * 1e-9;
    c.drive.t_max_nonstandard = j.value("t_max_nonstandard_ns", c.drive.t_max_nonstandard * 1e9) * 1e-9;
    c.drive.spacing = j.value("spacing_ns", c.drive.spacing * 1e9) * 1e-9;
    c.drive.dt = j.value("dt_ps", c.drive.dt * 1e12) * 1e-12;
    c.criteria = j.value("criteria", c.criteria);
    c.benchmarks = j.value("benchmarks", c.benchmarks);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.jobs = j.value("jobs", c.jobs);
    c.synthesis_restarts = j.value("synthesis_restarts", c.synthesis_restarts);
    c.single_qubit_ns = j.value("single_qubit_ns", c.single_qubit_ns);
    c.coherence_s = j.value("coherence_us", c.coherence_s * 1e6) * 1e-6;
    c.validate();
    return c;
}

void PipelineConfig::validate() const {
    if (rows * cols < 2 || rows < 1 || cols < 1) {
        throw std::invalid_argument("device needs at least two qubits");
    }
    if (!(drive.xi_baseline > 0) || !(drive.xi_nonstandard > 0) || !(drive.spacing > 0) || !(drive.dt > 0) ||
        !(drive.t_max_baseline > 0) || !(drive.t_max_nonstandard > 0)) {
        throw std::invalid_argument("drive settings must be positive");
    }
    if (!(single_qubit_ns > 0) || !(coherence_s > 0) || synthesis_restarts < 1 || jobs < 0) {
        throw std::invalid_argument("invalid timing, coherence, restart or job settings");
    }
    if (criteria.empty()) {
        throw std::invalid_argument("at least one criterion is required");
    }
    for (const std::string &c : criteria) {
        criterion_by_name(c);
    }
    for (const std::string &b : benchmarks) {
        benchmark_circuit(b, seed);
    }
}

std::string PipelineConfig::hash() const {
    Json j = to_json();
    j.erase("output_dir");
    j.erase("jobs");
    return hex64(fnv1a64(j.dump()));
}

Circuit benchmark_circuit(const std::string &name, uint64_t seed) {
    static const std::regex simple("(bv|qft|cuccaro)([0-9]+)");
    static const std::regex qaoa("qaoa([0-9]+)_([0-9]*\\.?[0-9]+)");
    std::smatch m;
    if (std::regex_match(name, m, simple)) {
        const int n = std::stoi(m[2]);
        if (m[1] == "bv") {
            return gen_bv(n);
        }
        if (m[1] == "qft") {
            return gen_qft(n);
        }
        return gen_cuccaro(n);
    }
    if (std::regex_match(name, m, qaoa)) {
        const double p = std::stod(m[2]);
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("edge probability must lie in [0, 1]");
        }
        return gen_qaoa(std::stoi(m[1]), p, seed);
    }
    throw std::invalid_argument("unknown benchmark '" + name + "'");
}

CouplingMap basis_coupling(const DeviceModel &device, const BasisSet &basis) {
    CouplingMap m;
    m.num_qubits = (int)device.qubits.size();
    for (const EdgeRecord &e : device.edges) {
        if (basis.count(e.id())) {
            m.edges.emplace_back(e.a, e.b);
        }
    }
    return m;
}

TranspileResult transpile_circuit(const Circuit &c, const DeviceModel &device, const BasisSet &basis,
                                  const DecompositionCache &cache, const SynthesisOptions &synth,
                                  double single_qubit_ns, TwoQubitLowering strategy) {
    const CouplingMap cmap = basis_coupling(device, basis);
    TranspileResult r;
    r.routed = route(c, cmap);
    r.native = lower(r.routed.circuit, cmap, basis, cache, synth, strategy);
    r.scheduled = schedule(r.native, GateDurations::from_basis(basis, single_qubit_ns));
    CoherenceParams cp;
    for (const QubitRecord &q : device.qubits) {
        cp.per_qubit.push_back(q.coherence);
    }
    r.fidelity = circuit_fidelity(r.scheduled, cp);
    return r;
}

TwoQubitLowering lowering_for(const std::string &criterion) {
    return criterion == "baseline_sqiswap" ? TwoQubitLowering::Direct : TwoQubitLowering::ViaCnot;
}

ResolvedBasis resolve_basis(const DeviceSelection &sel, const std::string &criterion, const std::string &fallback) {
    ResolvedBasis r;
    r.basis = sel.basis_set(criterion);
    if (fallback.empty() || fallback == criterion) {
        return r;
    }
    for (const auto &[edge, gate] : sel.basis_set(fallback)) {
        if (!r.basis.count(edge)) {
            r.basis[edge] = gate;
            r.fallback_edges.push_back(edge);
        }
    }
    return r;
}

CacheBuild build_basis_cache(const BasisSet &basis, const SynthesisOptions &opts, const std::string &timestamp) {
    std::vector<EdgeBasis> edges;
    for (const auto &[edge, gate] : basis) {
        edges.push_back({edge, gate.gate_id, gate.unitary});
    }
    return build_cache(edges, default_targets(), opts, timestamp);
}

void set_jobs(int jobs) {
    if (jobs > 0) {
        omp_set_num_threads(jobs);
    }
}

void run_pipeline(const PipelineConfig &cfg) {
    stage("config", "configuration", [&] {
        cfg.validate();
        return 0;
    });
    set_jobs(cfg.jobs);
    const fs::path dir = cfg.output_dir;
    stage("config", dir.string(), [&] {
        fs::create_directories(dir / "circuits");
        write_json((dir / "config.json").string(), with_meta("config", cfg, {{"config", cfg.to_json()}}));
        return 0;
    });

    const DeviceModel device = stage("device", "device.json", [&] {
        DeviceModel d = generate_device(cfg.rows, cfg.cols, cfg.seed);
        for (QubitRecord &q : d.qubits) {
            q.coherence = cfg.coherence_s;
        }
        write_json((dir / "device.json").string(), with_meta("device", cfg, {{"device", to_json(d)}}));
        return d;
    });

    std::vector<CriterionSpec> specs;
    for (const std::string &c : cfg.criteria) {
        specs.push_back(criterion_by_name(c));
    }
    const DeviceSelection sel = stage("trajectories", "trajectories.json", [&] {
        DeviceSelection s = select_device(device, specs, cfg.drive);
        Json edges = Json::array();
        for (const EdgeSelection &e : s.edges) {
            edges.push_back(trajectory_summary(e));
        }
        write_json((dir / "trajectories.json").string(), with_meta("trajectories", cfg, {{"edges", edges}}));
        write_text((dir / "trajectories.csv").string(), trajectory_csv(s));
        return s;
    });

    const bool has_baseline =
        std::find(sel.criteria.begin(), sel.criteria.end(), "baseline_sqiswap") != sel.criteria.end();
    const std::string fallback = has_baseline ? "baseline_sqiswap" : "";
    std::map<std::string, ResolvedBasis> resolved;
    for (const std::string &crit : sel.criteria) {
        const std::string file = "basis_" + crit + ".json";
        resolved[crit] = stage("basis", file, [&] {
            ResolvedBasis r = resolve_basis(sel, crit, fallback);
            Json body = basis_file_json(sel, crit);
            body["fallback_edges"] = r.fallback_edges;
            write_json((dir / file).string(), with_meta("basis", cfg, body));
            return r;
        });
    }

    std::map<std::string, DecompositionCache> caches;
    for (const std::string &crit : sel.criteria) {
        const std::string file = "cache_" + crit + ".json";
        caches[crit] = stage("cache", file, [&] {
            CacheBuild cb = build_basis_cache(resolved[crit].basis, synthesis_options(cfg), cache_timestamp(cfg));
            Json failures = Json::array();
            for (const CacheFailure &f : cb.failures) {
                failures.push_back({{"edge", f.edge_id},
                                    {"target", f.target_id},
                                    {"best_infidelity", f.best_infidelity},
                                    {"restarts", f.restarts}});
            }
            write_json((dir / file).string(),
                       with_meta("cache", cfg, {{"cache", to_json(cb.cache)}, {"failures", failures}}));
            return cb.cache;
        });
    }

    for (const std::string &bench : cfg.benchmarks) {
        const Circuit circuit = benchmark_circuit(bench, cfg.seed);
        for (const std::string &crit : sel.criteria) {
            const std::string file = circuit_file(bench, crit);
            stage("transpile", file, [&] {
                TranspileResult r = transpile_circuit(circuit, device, resolved[crit].basis, caches[crit],
                                                      synthesis_options(cfg), cfg.single_qubit_ns,
                                                      lowering_for(crit));
                Json body = {{"benchmark", bench},
                             {"criterion", crit},
                             {"lowering", lowering_for(crit) == TwoQubitLowering::Direct ? "direct" : "via_cnot"},
                             {"swaps_inserted", r.routed.swaps_inserted},
                             {"native_two_qubit_gates", r.native.two_qubit_count()},
                             {"fidelity", r.fidelity},
                             {"scheduled", to_json(r.scheduled, r.native)}};
                write_json((dir / file).string(), with_meta("scheduled_circuit", cfg, body));
                return 0;
            });
        }
    }
    write_report(dir.string());
}

void write_report(const std::string &dir_name) {
    const fs::path dir = dir_name;
    stage("report", (dir / "report.md").string(), [&] {
        const Json cfg_json = read_json((dir / "config.json").string());
        const PipelineConfig cfg = PipelineConfig::from_json(cfg_json.at("config"));
        const DeviceModel device = device_from_json(read_json((dir / "device.json").string()).at("device"));
        CoherenceParams cp;
        cp.t_default = cfg.coherence_s;
        for (const QubitRecord &q : device.qubits) {
            cp.per_qubit.push_back(q.coherence);
        }

        DeviceSelection sel;
        std::vector<std::vector<std::string>> fallbacks;
        for (const std::string &name : cfg.criteria) {
            const std::string crit = criterion_by_name(name).id;
            sel.criteria.push_back(crit);
            const Json basis = read_json((dir / ("basis_" + crit + ".json")).string());
            fallbacks.push_back(basis.value("fallback_edges", std::vector<std::string>{}));
            for (const Json &a : basis.at("assignments")) {
                BasisAssignment x = assignment_from_json(a);
                auto it = std::find_if(sel.edges.begin(), sel.edges.end(),
                                       [&](const EdgeSelection &e) { return e.edge_id == x.edge_id; });
                if (it == sel.edges.end()) {
                    sel.edges.push_back({x.edge_id, {}, {}, {}});
                    it = sel.edges.end() - 1;
                }
                it->assignments[crit] = x;
            }
        }
        CoherenceParams gate_cp;
        gate_cp.t_default = cfg.coherence_s;
        const std::vector<GateTableRow> gate_rows = sel.summary(gate_cp, cfg.single_qubit_ns);

        std::vector<CircuitTableRow> circuit_rows;
        for (const std::string &bench : cfg.benchmarks) {
            CircuitTableRow row{bench, {}};
            for (const std::string &crit : sel.criteria) {
                const Json s = read_json((dir / circuit_file(bench, crit)).string()).at("scheduled");
                ScheduledCircuit sc;
                sc.num_qubits = s.at("num_qubits").get<int>();
                for (const Json &q : s.at("qubits")) {
                    sc.active.push_back(q.at("active").get<bool>());
                    sc.t_start.push_back(q.at("t_start_ns").get<double>());
                    sc.t_end.push_back(q.at("t_end_ns").get<double>());
                }
                row.fidelities.push_back(circuit_fidelity(sc, cp));
            }
            circuit_rows.push_back(row);
        }

        std::string md = "# Basis gate comparison\n\nseed " + std::to_string(cfg.seed) + ", config " + cfg.hash() +
                         ", device " + std::to_string(cfg.rows) + "x" + std::to_string(cfg.cols) + "\n\n";
        md += "## Gate durations and coherence limits\n\n" + gate_table_markdown(gate_rows);
        md += "\n## Circuit fidelities\n\n" + circuit_table_markdown(sel.criteria, circuit_rows);
        md += "\n## Selection failures\n\n";
        bool any = false;
        for (size_t k = 0; k < sel.criteria.size(); k++) {
            const Json basis = read_json((dir / ("basis_" + sel.criteria[k] + ".json")).string());
            for (const Json &f : basis.at("failures")) {
                md += "- " + sel.criteria[k] + " on edge " + f.at("edge").get<std::string>() + ": " +
                      f.at("reason").get<std::string>();
                if (std::find(fallbacks[k].begin(), fallbacks[k].end(), f.at("edge").get<std::string>()) !=
                    fallbacks[k].end()) {
                    md += " (baseline gate used)";
                }
                md += "\n";
                any = true;
            }
        }
        if (!any) {
            md += "none\n";
        }
        write_text((dir / "report.md").string(), md);
        write_text((dir / "report_gates.csv").string(), gate_table_csv(gate_rows));
        write_text((dir / "report_circuits.csv").string(), circuit_table_csv(sel.criteria, circuit_rows));
        return 0;
    });
}

}  // namespace nsbasis
