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
#include <string_view>

#include <nlohmann/json.hpp>
#include "nsbasis/circuit.h"
#include "nsbasis/device.h"
#include "nsbasis/selector.h"
#include "nsbasis/synth.h"
#include "nsbasis/trajectory.h"
#include "nsbasis/transpile.h"

namespace nsbasis {

using Json = nlohmann::json;

/// 64-bit FNV-1a hash.
uint64_t fnv1a64(std::string_view data);
/// Lower-case 16-digit hexadecimal.
std::string hex64(uint64_t v);

/// Provenance block embedded in every artifact.
struct ArtifactMeta {
    std::string kind;
    uint64_t seed = 0;
    std::string config_hash;
};

Json to_json(const ArtifactMeta &m);
ArtifactMeta meta_from_json(const Json &j);

/// Square complex matrices as a row-major list of [re, im] pairs; nested rows are accepted on read.
Json to_json(const MatX &m);
MatX matrix_from_json(const Json &j);
Mat4 mat4_from_json(const Json &j);

Json to_json(const CanonicalCoordinate &c);
CanonicalCoordinate coordinate_from_json(const Json &j);

Json to_json(const PairParams &p);
PairParams pair_params_from_json(const Json &j);

Json to_json(const DeviceModel &d);
DeviceModel device_from_json(const Json &j);

Json to_json(const TrajectorySample &s);
TrajectorySample sample_from_json(const Json &j);
Json to_json(const Trajectory &t);
Trajectory trajectory_from_json(const Json &j);

Json to_json(const BasisAssignment &a);
BasisAssignment assignment_from_json(const Json &j);

/// basis.json body for one criterion: assignments and failures in edge order.
Json basis_file_json(const DeviceSelection &sel, const std::string &criterion);
/// Native gates from a basis.json body.
BasisSet basis_set_from_json(const Json &j);

Json to_json(const GateDecomposition &d);
GateDecomposition decomposition_from_json(const Json &j);
Json to_json(const DecompositionCache &c);
DecompositionCache cache_from_json(const Json &j);

Json to_json(const Circuit &c);
Circuit circuit_from_json(const Json &j);

/// Per-gate timing of a scheduled native circuit.
Json to_json(const ScheduledCircuit &s, const Circuit &native);

/// Pretty-printed JSON with a trailing newline; throws std::runtime_error naming the path.
void write_json(const std::string &path, const Json &j);
Json read_json(const std::string &path);
void write_text(const std::string &path, const std::string &text);
std::string read_text(const std::string &path);

}  // namespace nsbasis
