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

namespace nsbasis {

/// Every numerical tolerance used by the library, in one record.
struct Tolerances {
    double unitarity = 1e-9;       // max entry deviation of u^dagger u from identity
    double geometry = 1e-9;        // chamber and polyhedron boundary tests
    double reconstruction = 1e-8;  // KAK reassembly
    double region = 1e-6;          // region membership of trajectory samples
    double synthesis = 1e-8;       // success threshold on trace infidelity
    double feasibility = 1e-9;     // slack on the two-layer inequalities
};

/// Process-wide defaults.
inline const Tolerances &tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace nsbasis
