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
#include <span>

namespace nsbasis {

/// One inequality sum_{i in I} a_i + sum_{j in J} b_j + sum_{k in K} c_k <= degree
/// over three sorted phase vectors, with index sets as 4-bit masks.
struct PhaseInequality {
    uint8_t rank;
    uint8_t degree;
    uint8_t first;
    uint8_t second;
    uint8_t third;
};

/// The 72 unit-coefficient quantum Littlewood-Richardson inequalities for Gr(r, 4), r = 1, 2, 3.
std::span<const PhaseInequality> phase_inequalities();

/// Verifies the table; throws InequalityTableUnavailable on failure. Runs once.
void verify_phase_inequalities();

}  // namespace nsbasis
