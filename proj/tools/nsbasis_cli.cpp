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

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsbasis/feasibility.h"
#include "nsbasis/pipeline.h"
#include "nsbasis/qasm.h"
#include "nsbasis/selector.h"
#include "nsbasis/serialize.h"
#include "nsbasis/synth.h"
#include "nsbasis/weyl.h"

using namespace nsbasis;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitStage = 3;

/// Malformed flag value; reported with the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
auto stage(const std::string &name, const std::string &artifact, F &&body) {
    try {
        return body();
    } catch (const StageError &) {
        throw;
    } catch (const UsageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(name, artifact, e.what());
    }
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::vector<double> parse_numbers(const std::string &s, size_t count, const std::string &flag) {
    std::vector<double> out;
    for (const std::string &p : split(s, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(p, &used));
            if (used != p.size()) {
                throw std::invalid_argument(p);
            }
        } catch (const std::exception &) {
            throw UsageError(flag + ": '" + s + "' is not a list of " + std::to_string(count) + " numbers");
        }
    }
    if (out.size() != count) {
        throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated numbers");
    }
    return out;
}

/// "200ns", "1.5us", "2ps" or plain seconds.
double parse_duration(const std::string &s, const std::string &flag) {
    static const std::vector<std::pair<std::string, double>> units{
        {"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}};
    double scale = 1.0;
    std::string number = s;
    for (const auto &[suffix, factor] : units) {
        if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
            number = s.substr(0, s.size() - suffix.size());
            scale = factor;
            break;
        }
    }
    try {
        size_t used = 0;
        const double v = std::stod(number, &used);
        if (used != number.size() || !(v > 0)) {
            throw std::invalid_argument(s);
        }
        return v * scale;
    } catch (const std::exception &) {
        throw UsageError(flag + ": '" + s + "' is not a positive duration");
    }
}

std::string args_hash(const Json &args) {
    return hex64(fnv1a64(args.dump()));
}

Json with_meta(Json body, const std::string &kind, uint64_t seed, const Json &args) {
    body["meta"] = to_json(ArtifactMeta{kind, seed, args_hash(args)});
    return body;
}

void write_or_print(const std::string &out, const Json &j) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(1) << "\n";
    } else {
        write_json(out, j);
    }
}

Json read_artifact(const std::string &path, const std::string &key) {
    Json j = read_json(path);
    if (j.is_object() && j.contains(key)) {
        return j.at(key);
    }
    return j;
}

DeviceModel load_device(const std::string &path, const std::string &stage_name) {
    return stage(stage_name, path, [&] { return device_from_json(read_artifact(path, "device")); });
}

Mat4 load_unitary(const std::string &path, const std::string &stage_name) {
    return stage(stage_name, path, [&] { return mat4_from_json(read_artifact(path, "unitary")); });
}

std::string format_coordinate(const CanonicalCoordinate &c) {
    char buf[128];
    auto clean = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
    std::snprintf(buf, sizeof buf, "[%.12g, %.12g, %.12g]", clean(c.tx), clean(c.ty), clean(c.tz));
    return buf;
}

const Region &region_by_name(const std::string &name) {
    if (name == "s_swap3" || name == "swap3") {
        return swap3_region();
    }
    if (name == "s_cnot2" || name == "cnot2") {
        return cnot2_region();
    }
    if (name == "pe") {
        return perfect_entangler_region();
    }
    throw UsageError("unknown region '" + name + "' (expected s_swap3, s_cnot2 or pe)");
}

TwoQubitLowering lowering_by_name(const std::string &name, const std::string &criterion) {
    if (name.empty()) {
        return lowering_for(criterion);
    }
    if (name == "direct") {
        return TwoQubitLowering::Direct;
    }
    if (name == "via-cnot") {
        return TwoQubitLowering::ViaCnot;
    }
    throw UsageError("--lowering: expected direct or via-cnot");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Nonstandard two-qubit basis gate selection and evaluation"};
    app.require_subcommand(1);
    app.fallthrough();
    int jobs = 0;
    app.add_option("--jobs", jobs, "Cap on parallel workers (0 keeps the default)")->check(CLI::NonNegativeNumber);

    // device gen
    CLI::App *device = app.add_subcommand("device", "Device models")->require_subcommand(1);
    CLI::App *device_gen = device->add_subcommand("gen", "Generate a seeded grid device");
    int rows = 4, cols = 4;
    uint64_t seed = 0;
    double coherence_us = 80;
    std::string out;
    device_gen->add_option("--rows", rows, "Grid rows")->check(CLI::PositiveNumber);
    device_gen->add_option("--cols", cols, "Grid columns")->check(CLI::PositiveNumber);
    device_gen->add_option("--seed", seed, "Random seed")->required();
    device_gen->add_option("--coherence-us", coherence_us, "T1 = T2 of every qubit")->check(CLI::PositiveNumber);
    device_gen->add_option("--out", out, "Output file (stdout when omitted)");

    // traj simulate
    CLI::App *traj = app.add_subcommand("traj", "Gate trajectories")->require_subcommand(1);
    CLI::App *traj_sim = traj->add_subcommand("simulate", "Simulate one edge's trajectory");
    std::string device_file, edge_spec, t_max_s = "200ns", spacing_s = "1ns", dt_s = "2ps";
    double xi = 0.04;
    traj_sim->add_option("--device", device_file, "device.json")->required();
    traj_sim->add_option("--edge", edge_spec, "Grid edge as r1,c1,r2,c2")->required();
    traj_sim->add_option("--xi", xi, "Flux drive amplitude")->check(CLI::PositiveNumber);
    traj_sim->add_option("--t-max", t_max_s, "Longest duration, e.g. 200ns");
    traj_sim->add_option("--spacing", spacing_s, "Sample spacing, e.g. 1ns");
    traj_sim->add_option("--dt", dt_s, "Integrator step, e.g. 2ps");
    traj_sim->add_option("--out", out, "Output file (stdout when omitted)");

    // basis select
    CLI::App *basis = app.add_subcommand("basis", "Basis gate selection")->require_subcommand(1);
    CLI::App *basis_sel = basis->add_subcommand("select", "Select a basis gate on every edge");
    std::string criterion = "criterion2";
    double basis_xi = 0;
    std::string basis_t_max;
    basis_sel->add_option("--device", device_file, "device.json")->required();
    basis_sel->add_option("--criterion", criterion, "criterion1, criterion2 or baseline");
    basis_sel->add_option("--xi", basis_xi, "Flux drive amplitude (criterion default when omitted)");
    basis_sel->add_option("--t-max", basis_t_max, "Longest simulated duration");
    basis_sel->add_option("--out", out, "Output file (stdout when omitted)");

    // synth
    CLI::App *synth = app.add_subcommand("synth", "Decompose a target into each edge's basis gate");
    std::string basis_file, target = "swap", unitary_file, edge_filter;
    int layers = 0, restarts = 32;
    synth->add_option("--basis", basis_file, "basis.json")->required();
    auto *target_opt = synth->add_option("--target", target, "swap or cnot");
    synth->add_option("--unitary", unitary_file, "Target unitary file")->excludes(target_opt);
    synth->add_option("--layers", layers, "Number of basis layers (minimal when omitted)")->check(CLI::PositiveNumber);
    synth->add_option("--edge", edge_filter, "Only this edge id, e.g. 0-1");
    synth->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);
    synth->add_option("--seed", seed, "Random seed")->required();
    synth->add_option("--out", out, "Output cache file (stdout when omitted)");

    // feas volume | check
    CLI::App *feas = app.add_subcommand("feas", "Synthesis regions")->require_subcommand(1);
    CLI::App *feas_volume = feas->add_subcommand("volume", "Monte-Carlo volume fraction of a region");
    std::string region = "s_swap3";
    int64_t samples = 1000000;
    feas_volume->add_option("--region", region, "s_swap3, s_cnot2 or pe");
    feas_volume->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
    feas_volume->add_option("--seed", seed, "Random seed")->required();
    CLI::App *feas_check = feas->add_subcommand("check", "Region membership of a coordinate");
    std::string coords, query = "swap3";
    feas_check->add_option("--coords", coords, "x,y,z in fractional units")->required();
    feas_check->add_option("--query", query, "swap3, cnot2 or pe");

    // weyl coords
    CLI::App *weyl = app.add_subcommand("weyl", "Weyl chamber geometry")->require_subcommand(1);
    CLI::App *weyl_coords = weyl->add_subcommand("coords", "Canonical coordinate of a two-qubit unitary");
    weyl_coords->add_option("--unitary", unitary_file, "Unitary file")->required();

    // transpile
    CLI::App *transpile = app.add_subcommand("transpile", "Route, lower and schedule a circuit");
    std::string circuit_file, cache_file, lowering;
    double single_qubit_ns = 20;
    uint64_t transpile_seed = 1;
    transpile->add_option("--circuit", circuit_file, ".qasm or circuit .json")->required();
    transpile->add_option("--device", device_file, "device.json")->required();
    transpile->add_option("--basis-set", basis_file, "basis.json")->required();
    transpile->add_option("--cache", cache_file, "cache.json");
    transpile->add_option("--lowering", lowering, "direct or via-cnot (by criterion when omitted)");
    transpile->add_option("--single-qubit-ns", single_qubit_ns, "1Q gate duration")->check(CLI::PositiveNumber);
    transpile->add_option("--restarts", restarts, "Restarts for gates outside the cache")->check(CLI::PositiveNumber);
    transpile->add_option("--seed", transpile_seed, "Seed for gates outside the cache");
    transpile->add_option("--out", out, "Output file (stdout when omitted)");

    // report
    CLI::App *report = app.add_subcommand("report", "Regenerate the report from pipeline artifacts");
    std::string dir;
    report->add_option("--dir", dir, "Pipeline output directory")->required();

    // pipeline run
    CLI::App *pipeline = app.add_subcommand("pipeline", "End-to-end pipeline")->require_subcommand(1);
    CLI::App *pipeline_run = pipeline->add_subcommand("run", "Run every stage");
    std::string config_file, benchmarks, criteria;
    pipeline_run->add_option("--config", config_file, "config.json (flags override it)");
    pipeline_run->add_option("--seed", seed, "Random seed")->required();
    auto *rows_opt = pipeline_run->add_option("--rows", rows, "Grid rows")->check(CLI::PositiveNumber);
    auto *cols_opt = pipeline_run->add_option("--cols", cols, "Grid columns")->check(CLI::PositiveNumber);
    pipeline_run->add_option("--benchmarks", benchmarks, "Comma-separated, e.g. bv5,qft4");
    pipeline_run->add_option("--criteria", criteria, "Comma-separated criteria");
    auto *restarts_opt = pipeline_run->add_option("--restarts", restarts, "Synthesis restarts");
    pipeline_run->add_option("--out", out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        set_jobs(jobs);
        if (device_gen->parsed()) {
            const Json args = {{"rows", rows}, {"cols", cols}, {"seed", seed}, {"coherence_us", coherence_us}};
            stage("device", out.empty() ? "stdout" : out, [&] {
                DeviceModel d = generate_device(rows, cols, seed);
                for (QubitRecord &q : d.qubits) {
                    q.coherence = coherence_us * 1e-6;
                }
                write_or_print(out, with_meta({{"device", to_json(d)}}, "device", seed, args));
                return 0;
            });
        } else if (traj_sim->parsed()) {
            const std::vector<double> e = parse_numbers(edge_spec, 4, "--edge");
            DriveSettings s;
            s.spacing = parse_duration(spacing_s, "--spacing");
            s.dt = parse_duration(dt_s, "--dt");
            const double t_max = parse_duration(t_max_s, "--t-max");
            const DeviceModel d = load_device(device_file, "traj");
            stage("traj", "edge " + edge_spec, [&] {
                for (double v : e) {
                    if (v != std::floor(v) || v < 0) {
                        throw std::invalid_argument("grid positions must be non-negative integers");
                    }
                }
                const int q1 = d.qubit_index((int)e[0], (int)e[1]), q2 = d.qubit_index((int)e[2], (int)e[3]);
                const EdgeRecord *edge = d.find_edge(q1, q2);
                if (e[0] >= d.rows || e[2] >= d.rows || e[1] >= d.cols || e[3] >= d.cols || edge == nullptr) {
                    throw std::invalid_argument("no device edge between (" + split(edge_spec, ',')[0] + "," +
                                                split(edge_spec, ',')[1] + ") and (" + split(edge_spec, ',')[2] +
                                                "," + split(edge_spec, ',')[3] + ")");
                }
                const Trajectory t = simulate_edge(*edge, xi, t_max, s);
                const Json args = {{"device", d.seed}, {"edge", edge->id()}, {"xi", xi},
                                   {"t_max_s", t_max}, {"spacing_s", s.spacing}, {"dt_s", s.dt}};
                write_or_print(out, with_meta({{"edge", edge->id()}, {"trajectory", to_json(t)}}, "trajectory",
                                              d.seed, args));
                return 0;
            });
        } else if (basis_sel->parsed()) {
            CriterionSpec spec;
            try {
                spec = criterion_by_name(criterion);
            } catch (const std::invalid_argument &e) {
                throw UsageError(std::string("--criterion: ") + e.what());
            }
            DriveSettings s;
            if (basis_xi > 0) {
                (spec.baseline ? s.xi_baseline : s.xi_nonstandard) = basis_xi;
            }
            if (!basis_t_max.empty()) {
                (spec.baseline ? s.t_max_baseline : s.t_max_nonstandard) = parse_duration(basis_t_max, "--t-max");
            }
            const DeviceModel d = load_device(device_file, "basis");
            stage("basis", out.empty() ? "stdout" : out, [&] {
                const DeviceSelection sel = select_device(d, {spec}, s);
                const Json args = {{"device", d.seed},
                                   {"criterion", spec.id},
                                   {"xi", spec.baseline ? s.xi_baseline : s.xi_nonstandard},
                                   {"t_max_s", spec.baseline ? s.t_max_baseline : s.t_max_nonstandard}};
                write_or_print(out, with_meta(basis_file_json(sel, spec.id), "basis", d.seed, args));
                for (const EdgeSelection &e : sel.edges) {
                    for (const auto &[crit, reason] : e.failures) {
                        std::cerr << "edge " << e.edge_id << ": " << reason << "\n";
                    }
                }
                return 0;
            });
        } else if (synth->parsed()) {
            SynthesisTarget t;
            if (!unitary_file.empty()) {
                t = {std::filesystem::path(unitary_file).stem().string(), load_unitary(unitary_file, "synth")};
            } else if (target == "swap") {
                t = {"swap", gates::swap()};
            } else if (target == "cnot") {
                t = {"cnot", gates::cnot()};
            } else {
                throw UsageError("--target: expected swap or cnot");
            }
            const BasisSet b = stage("synth", basis_file, [&] { return basis_set_from_json(read_json(basis_file)); });
            stage("synth", out.empty() ? "stdout" : out, [&] {
                SynthesisOptions opts;
                opts.seed = seed;
                opts.restarts = restarts;
                std::vector<EdgeBasis> edges;
                for (const auto &[id, native] : b) {
                    if (edge_filter.empty() || id == edge_filter) {
                        edges.push_back({id, native.gate_id, native.unitary});
                    }
                }
                if (edges.empty()) {
                    throw std::invalid_argument("no basis gate " +
                                                (edge_filter.empty() ? std::string("in the file")
                                                                     : "for edge " + edge_filter));
                }
                const Json args = {{"basis", fnv1a64(read_text(basis_file))}, {"target", t.id},
                                   {"layers", layers},  {"restarts", restarts},
                                   {"seed", seed},      {"edge", edge_filter}};
                const std::string timestamp = "seed-" + std::to_string(seed) + "-" + args_hash(args);
                CacheBuild cb;
                if (layers == 0) {
                    cb = build_cache(edges, {t}, opts, timestamp);
                } else {
                    cb.cache.timestamp = timestamp;
                    for (const EdgeBasis &e : edges) {
                        GateDecomposition d = synthesize_best(t.unitary, std::vector<Mat4>(layers, e.unitary), opts);
                        d.target_id = t.id;
                        d.layer_ids.assign(layers, e.gate_id);
                        if (d.infidelity <= opts.threshold) {
                            cb.cache.entries[{e.edge_id, t.id}] = d;
                        } else {
                            cb.failures.push_back({e.edge_id, t.id, d.infidelity, d.restarts_used});
                        }
                    }
                }
                Json failures = Json::array();
                for (const CacheFailure &f : cb.failures) {
                    failures.push_back({{"edge", f.edge_id},
                                        {"target", f.target_id},
                                        {"best_infidelity", f.best_infidelity},
                                        {"restarts", f.restarts}});
                    std::cerr << "edge " << f.edge_id << ": " << f.target_id << " not reached, best infidelity "
                              << f.best_infidelity << "\n";
                }
                write_or_print(out, with_meta({{"cache", to_json(cb.cache)}, {"failures", failures}}, "cache", seed,
                                              args));
                if (cb.cache.entries.empty()) {
                    throw SynthesisFailed("no edge reached the target", cb.failures.front().best_infidelity,
                                          cb.failures.front().restarts);
                }
                return 0;
            });
        } else if (feas_volume->parsed()) {
            const Region &r = region_by_name(region);
            stage("feas", region, [&] {
                const VolumeEstimate v = region_volume(r, samples, seed);
                std::printf("%s %.6f %.6f\n", region.c_str(), v.fraction, v.standard_error);
                return 0;
            });
        } else if (feas_check->parsed()) {
            const std::vector<double> v = parse_numbers(coords, 3, "--coords");
            const CanonicalCoordinate c = canonicalize(v[0], v[1], v[2]);
            bool inside = false;
            if (query == "swap3") {
                inside = swap3_region().contains(c);
            } else if (query == "cnot2") {
                inside = cnot2_region().contains(c);
            } else if (query == "pe") {
                inside = is_perfect_entangler(c);
            } else {
                throw UsageError("--query: expected swap3, cnot2 or pe");
            }
            std::printf("%s %s\n", format_coordinate(c).c_str(), inside ? "true" : "false");
        } else if (weyl_coords->parsed()) {
            const Mat4 u = load_unitary(unitary_file, "weyl");
            stage("weyl", unitary_file, [&] {
                std::printf("%s\n", format_coordinate(cartan_coordinate(Unitary2Q(u).matrix())).c_str());
                return 0;
            });
        } else if (transpile->parsed()) {
            const DeviceModel d = load_device(device_file, "transpile");
            const Json basis_json = stage("transpile", basis_file, [&] { return read_json(basis_file); });
            const BasisSet b = stage("transpile", basis_file, [&] { return basis_set_from_json(basis_json); });
            const std::string crit = basis_json.value("criterion", std::string());
            const TwoQubitLowering strategy = lowering_by_name(lowering, crit);
            const DecompositionCache cache = stage("transpile", cache_file.empty() ? "cache" : cache_file, [&] {
                return cache_file.empty() ? DecompositionCache{} : cache_from_json(read_artifact(cache_file, "cache"));
            });
            const Circuit c = stage("transpile", circuit_file, [&] {
                if (std::filesystem::path(circuit_file).extension() == ".qasm") {
                    return parse_qasm(read_text(circuit_file));
                }
                return circuit_from_json(read_artifact(circuit_file, "circuit"));
            });
            stage("transpile", out.empty() ? "stdout" : out, [&] {
                SynthesisOptions opts;
                opts.seed = transpile_seed;
                opts.restarts = restarts;
                const TranspileResult r = transpile_circuit(c, d, b, cache, opts, single_qubit_ns, strategy);
                const Json args = {{"circuit", fnv1a64(read_text(circuit_file))},
                                   {"device", d.seed},
                                   {"basis", fnv1a64(basis_json.dump())},
                                   {"cache", cache.timestamp},
                                   {"lowering", strategy == TwoQubitLowering::Direct ? "direct" : "via_cnot"},
                                   {"single_qubit_ns", single_qubit_ns},
                                   {"seed", transpile_seed}};
                Json body = {{"criterion", crit},
                             {"lowering", strategy == TwoQubitLowering::Direct ? "direct" : "via_cnot"},
                             {"swaps_inserted", r.routed.swaps_inserted},
                             {"native_two_qubit_gates", r.native.two_qubit_count()},
                             {"fidelity", r.fidelity},
                             {"scheduled", to_json(r.scheduled, r.native)}};
                write_or_print(out, with_meta(body, "scheduled_circuit", transpile_seed, args));
                if (!out.empty() && out != "-") {
                    std::printf("fidelity %.6f duration %.2f ns swaps %d native 2Q %d\n", r.fidelity,
                                r.scheduled.total_ns, r.routed.swaps_inserted, r.native.two_qubit_count());
                }
                return 0;
            });
        } else if (report->parsed()) {
            write_report(dir);
        } else if (pipeline_run->parsed()) {
            PipelineConfig cfg;
            if (!config_file.empty()) {
                cfg = stage("config", config_file,
                            [&] { return PipelineConfig::from_json(read_artifact(config_file, "config")); });
            }
            cfg.seed = seed;
            cfg.output_dir = out;
            cfg.jobs = jobs;
            if (*rows_opt) {
                cfg.rows = rows;
            }
            if (*cols_opt) {
                cfg.cols = cols;
            }
            if (*restarts_opt) {
                cfg.synthesis_restarts = restarts;
            }
            if (!benchmarks.empty()) {
                cfg.benchmarks = split(benchmarks, ',');
            }
            if (!criteria.empty()) {
                cfg.criteria = split(criteria, ',');
            }
            run_pipeline(cfg);
        }
    } catch (const UsageError &e) {
        std::cerr << "nsbasis: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "nsbasis: " << e.what() << "\n";
        return kExitStage;
    }
    return 0;
}
