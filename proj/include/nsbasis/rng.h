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

#include "nsbasis/linalg.h"

namespace nsbasis {

/// SplitMix64 finalizer; a bijective 64-bit mixing function.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the stream (seed, stream id) is fixed, so any work
/// item can draw its numbers independently of scheduling order.
class CounterRng {
   public:
    CounterRng(uint64_t seed, uint64_t stream) : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {
    }

    uint64_t next_u64() {
        return mix64(key_ + 0x9E3779B97F4A7C15ULL * (++counter_));
    }

    /// Uniform in [0, 1).
    double uniform() {
        return (double)(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    double normal();

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return next_u64() % n;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// Haar-random element of SU(2).
Mat2 random_su2(CounterRng &rng);

/// Haar-random 4x4 unitary.
Mat4 random_unitary4(CounterRng &rng);

}  // namespace nsbasis
