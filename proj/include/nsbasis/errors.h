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

#include <stdexcept>
#include <string>

namespace nsbasis {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input matrix fails the unitarity check.
struct NonUnitaryInput : Error {
    using Error::Error;
};

/// The frozen two-layer inequality table failed its self-check.
struct InequalityTableUnavailable : Error {
    using Error::Error;
};

/// No trajectory sample satisfies the selection criterion.
struct NoIntersection : Error {
    NoIntersection(const std::string &msg, double max_duration)
        : Error(msg), max_duration(max_duration) {
    }
    double max_duration;
};

struct TruncationTooSmall : Error {
    using Error::Error;
};

/// Dressed states could not be matched one-to-one with bare computational states.
struct StateIdentificationAmbiguous : Error {
    using Error::Error;
};

struct NoSignChange : Error {
    using Error::Error;
};

/// Drive-frequency search found no usable population transfer.
struct FlatLandscape : Error {
    using Error::Error;
};

struct StepTooLarge : Error {
    using Error::Error;
};

/// Projected propagator lost too much weight to trust its unitary part.
struct ExcessiveLeakage : Error {
    ExcessiveLeakage(const std::string &msg, double leakage) : Error(msg), leakage(leakage) {
    }
    double leakage;
};

struct SynthesisFailed : Error {
    SynthesisFailed(const std::string &msg, double best_infidelity, int restarts)
        : Error(msg), best_infidelity(best_infidelity), restarts(restarts) {
    }
    double best_infidelity;
    int restarts;
};

struct ParseError : Error {
    ParseError(int line, int column, const std::string &expected)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " + expected),
          line(line),
          column(column),
          expected(expected) {
    }
    int line;
    int column;
    std::string expected;
};

struct UnsupportedGate : Error {
    UnsupportedGate(const std::string &name, int line = 0)
        : Error("unsupported gate '" + name + "'" + (line > 0 ? " at line " + std::to_string(line) : "")),
          name(name),
          line(line) {
    }
    std::string name;
    int line;
};

struct LoweringFailed : Error {
    using Error::Error;
};

}  // namespace nsbasis
