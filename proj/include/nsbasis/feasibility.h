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
#include <optional>
#include <string>
#include <vector>

#include "nsbasis/tolerances.h"
#include "nsbasis/trajectory.h"
#include "nsbasis/weyl.h"

namespace nsbasis {

/// Closed tetrahedron in chamber coordinates, stored with its four faces.
class Tetrahedron {
   public:
    struct Face {
        std::array<double, 3> normal;  // unit outward normal
        double offset;                 // inside iff normal . v <= offset
        bool on_chamber_boundary;      // face lies in a chamber boundary plane
    };

    /// Throws std::invalid_argument for degenerate vertex sets.
    explicit Tetrahedron(const std::array<std::array<double, 3>, 4> &vertices);

    const std::array<std::array<double, 3>, 4> &vertices() const {
        return vertices_;
    }
    const std::array<Face, 4> &faces() const {
        return faces_;
    }
    double volume() const;

    /// Closed membership by half-spaces.
    bool contains(const std::array<double, 3> &v, double eps) const;
    /// Closed membership by barycentric coordinates.
    bool contains_barycentric(const std::array<double, 3> &v, double eps) const;
    /// Interior relative to the chamber: strictly inside every face that is not a
    /// chamber boundary plane.
    bool relative_interior(const std::array<double, 3> &v, double eps) const;

   private:
    std::array<std::array<double, 3>, 4> vertices_;
    std::array<Face, 4> faces_;
};

/// Chamber region given by its excluded tetrahedra; the region keeps the
/// excluded pieces' interior faces.
struct Region {
    std::string name;
    std::vector<Tetrahedron> complement;

    bool contains(const CanonicalCoordinate &c, double eps = tolerances().region) const;
};

/// Gates that synthesize SWAP in at most three layers.
const Region &swap3_region();
/// Gates that synthesize CNOT in at most two layers.
const Region &cnot2_region();
/// Perfect entanglers, expressed by their excluded tetrahedra.
const Region &perfect_entangler_region();

/// Conjunction of regions.
struct SelectionCriterion {
    std::string id;
    std::vector<Region> regions;
    double eps = tolerances().region;

    bool satisfied_by(const CanonicalCoordinate &c) const;
};

SelectionCriterion criterion1();
SelectionCriterion criterion2();

CanonicalCoordinate mirror_point(const CanonicalCoordinate &c);

/// True iff two layers b1 then b2 (with arbitrary 1Q layers around them) realize the target class.
/// Throws InequalityTableUnavailable if the inequality data fails its self-check.
bool two_layer_feasible(const CanonicalCoordinate &target, const CanonicalCoordinate &b1,
                        const CanonicalCoordinate &b2);

/// two_layer_feasible without the table self-check; used by the self-check itself.
bool two_layer_feasible_unchecked(const CanonicalCoordinate &target, const CanonicalCoordinate &b1,
                                  const CanonicalCoordinate &b2);

enum class SwapLayers { One = 1, Two = 2, Three = 3, MoreThan3 = 4 };

/// eps is the tolerance for the SWAP point and the two-layer segments.
SwapLayers swap_min_layers(const CanonicalCoordinate &g, double eps = tolerances().geometry);
bool cnot_two_layer(const CanonicalCoordinate &g);

struct VolumeEstimate {
    double fraction;
    double standard_error;
};

/// Uniform sampling over the chamber by rejection from [0,1] x [0,1/2] x [0,1/2].
VolumeEstimate region_volume(const Region &r, int64_t n_samples, uint64_t seed);
/// Serial reference for region_volume; bit-identical result.
VolumeEstimate region_volume_serial(const Region &r, int64_t n_samples, uint64_t seed);

struct HitResult {
    size_t index;              // first qualifying sample
    TrajectorySample sample;
    bool interpolated = false;      // a region face was crossed between samples
    double crossing_duration = 0;   // interpolated entry time when interpolated
};

/// Throws NoIntersection when no sample satisfies the criterion.
HitResult first_hit(const Trajectory &traj, const SelectionCriterion &crit);

}  // namespace nsbasis
