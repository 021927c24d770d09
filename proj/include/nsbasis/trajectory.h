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

#include <string>
#include <vector>

#include "nsbasis/weyl.h"

namespace nsbasis {

/// Rectangular flux-modulation pulse: omega_c(t) = omega_c0 + delta sin(omega_d t).
struct DrivePulse {
    double xi = 0;        // amplitude in flux-quantum units
    double delta = 0;     // modulation depth, rad/s
    double omega_d = 0;   // drive angular frequency, rad/s
    double duration = 0;  // seconds

    /// Linear flux-to-depth calibration, rad/s per flux quantum.
    static constexpr double kappa = 2 * 3.14159265358979323846 * 24.3e9;

    static DrivePulse from_xi(double xi, double omega_d, double duration = 0) {
        return {xi, kappa * xi, omega_d, duration};
    }
};

struct TrajectorySample {
    double duration = 0;  // seconds
    Unitary2Q unitary;
    CanonicalCoordinate coordinate;
    double leakage = 0;
};

struct Trajectory {
    std::string pair_id;
    DrivePulse drive;
    double spacing = 1e-9;  // seconds
    double dt = 2e-12;      // integration step, seconds
    std::vector<TrajectorySample> samples;

    double max_duration() const {
        return samples.empty() ? 0.0 : samples.back().duration;
    }
};

/// Builds an idealized trajectory whose samples are canonical gates at the given coordinates.
Trajectory trajectory_from_coordinates(const std::vector<std::array<double, 3>> &coords, double spacing);

}  // namespace nsbasis
