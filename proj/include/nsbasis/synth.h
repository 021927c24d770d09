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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsbasis/linalg.h"
#include "nsbasis/tolerances.h"
#include "nsbasis/weyl.h"

namespace nsbasis {

struct SynthesisOptions {
    int restarts = 32;
    double threshold = tolerances().synthesis;
    uint64_t seed = 0;
    int max_iterations = 400;
    /// Stop at the first restart (in index order) that meets the threshold.
    bool stop_at_success = true;
};

/// n two-qubit layers interleaved with n + 1 layers of 1Q unitaries:
/// locals[n] * layers[n-1] * ... * layers[0] * locals[0], locals[k] = a (x) b.
struct GateDecomposition {
    std::string target_id;
    std::vector<std::string> layer_ids;
    std::vector<Mat4> layers;
    std::vector<std::array<Mat2, 2>> locals;
    double infidelity = 1.0;
    int restarts_used = 0;

    int depth() const {
        return (int)layers.size();
    }
    Mat4 reassemble() const;
};

/// Best restart, without throwing; restarts run in parallel with a result
/// identical to synthesize_best_serial.
GateDecomposition synthesize_best(const Mat4 &target, const std::vector<Mat4> &layers, const SynthesisOptions &opts);
GateDecomposition synthesize_best_serial(const Mat4 &target, const std::vector<Mat4> &layers,
                                         const SynthesisOptions &opts);

/// Throws SynthesisFailed when the best restart misses the threshold.
GateDecomposition synthesize(const Mat4 &target, const std::vector<Mat4> &layers, const SynthesisOptions &opts);
GateDecomposition synthesize(const Mat4 &target, const Mat4 &basis, int n_layers, const SynthesisOptions &opts);

/// Infidelity of a decomposition with 1Q layers given as ZYZ angles (6 per layer).
double decomposition_infidelity(const Mat4 &target, const std::vector<Mat4> &layers, const std::vector<double> &angles);

struct LayerCount {
    int layers;
    bool analytic;  // false when found by numerical search
};

/// Minimal number of basis layers for the target class. Throws SynthesisFailed
/// when no depth up to max_layers succeeds numerically.
LayerCount min_layers(const CanonicalCoordinate &target, const CanonicalCoordinate &basis,
                      const SynthesisOptions &opts = {}, int max_layers = 6);

struct SynthesisTarget {
    std::string id;
    Mat4 unitary;
};

/// SWAP and CNOT.
std::vector<SynthesisTarget> default_targets();

struct EdgeBasis {
    std::string edge_id;
    std::string gate_id;
    Mat4 unitary;
};

struct DecompositionCache {
    std::string timestamp;
    std::map<std::pair<std::string, std::string>, GateDecomposition> entries;

    const GateDecomposition *find(const std::string &edge_id, const std::string &target_id) const;
};

struct CacheFailure {
    std::string edge_id;
    std::string target_id;
    double best_infidelity;
    int restarts;
};

struct CacheBuild {
    DecompositionCache cache;
    std::vector<CacheFailure> failures;
};

/// Synthesizes every target on every edge at the depth given by theory.
CacheBuild build_cache(const std::vector<EdgeBasis> &edges, const std::vector<SynthesisTarget> &targets,
                       const SynthesisOptions &opts, const std::string &timestamp);

}  // namespace nsbasis
