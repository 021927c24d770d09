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
#include <string>
#include <vector>

#include "nsbasis/errors.h"
#include "nsbasis/fidelity.h"
#include "nsbasis/selector.h"
#include "nsbasis/serialize.h"
#include "nsbasis/synth.h"
#include "nsbasis/transpile.h"

namespace nsbasis {

/// A pipeline stage failed; names the stage and the offending artifact.
struct StageError : Error {
    StageError(const std::string &stage, const std::string &artifact, const std::string &msg)
        : Error("stage '" + stage + "' failed on " + artifact + ": " + msg), stage(stage), artifact(artifact) {
    }
    std::string stage;
    std::string artifact;
};

struct PipelineConfig {
    uint64_t seed = 1;
    int rows = 4;
    int cols = 4;
    DriveSettings drive;
    std::vector<std::string> criteria{"baseline_sqiswap", "criterion1", "criterion2"};
    std::vector<std::string> benchmarks{"bv5", "qft4"};
    std::string output_dir = "out";
    int jobs = 0;  // 0 keeps the OpenMP default
    int synthesis_restarts = 32;
    double single_qubit_ns = 20;
    double coherence_s = 80e-6;

    Json to_json() const;
    /// Missing keys keep their defaults; throws std::invalid_argument for invalid values.
    static PipelineConfig from_json(const Json &j);
    void validate() const;
    /// FNV-1a of the canonical JSON without the output directory.
    std::string hash() const;
};

/// "bv<n>", "qft<n>", "qaoa<n>_<edge_prob>" or "cuccaro<n>"; throws std::invalid_argument.
Circuit benchmark_circuit(const std::string &name, uint64_t seed);

struct TranspileResult {
    RoutedCircuit routed;
    Circuit native;
    ScheduledCircuit scheduled;
    double fidelity = 1;
};

/// route, lower, schedule and evaluate one circuit on the edges present in the basis set.
TranspileResult transpile_circuit(const Circuit &c, const DeviceModel &device, const BasisSet &basis,
                                  const DecompositionCache &cache, const SynthesisOptions &synth,
                                  double single_qubit_ns = 20,
                                  TwoQubitLowering strategy = TwoQubitLowering::Direct);

/// Direct synthesis for the baseline basis; CNOT-mediated lowering for the others.
TwoQubitLowering lowering_for(const std::string &criterion);

/// Coupling map restricted to edges with a native gate.
CouplingMap basis_coupling(const DeviceModel &device, const BasisSet &basis);

/// Per-criterion basis sets in which edges without an assignment borrow the baseline gate.
/// Borrowed edge ids are listed in fallback_edges.
struct ResolvedBasis {
    BasisSet basis;
    std::vector<std::string> fallback_edges;
};
ResolvedBasis resolve_basis(const DeviceSelection &sel, const std::string &criterion, const std::string &fallback);

/// Decompositions of SWAP and CNOT on every edge of the basis set.
CacheBuild build_basis_cache(const BasisSet &basis, const SynthesisOptions &opts, const std::string &timestamp);

/// Runs every stage and writes artifacts plus the report into cfg.output_dir.
/// Throws StageError; artifacts of completed stages are kept.
void run_pipeline(const PipelineConfig &cfg);

/// Regenerates report.md, report_gates.csv and report_circuits.csv from the artifacts in dir.
void write_report(const std::string &dir);

/// Sets the OpenMP worker cap when jobs > 0.
void set_jobs(int jobs);

}  // namespace nsbasis
