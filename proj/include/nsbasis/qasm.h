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

#include "nsbasis/circuit.h"

namespace nsbasis {

/// Parses the supported OpenQASM 2 subset: a single qreg, the standard gate set, whole-register
/// broadcast of 1Q gates, and angle expressions over numbers, pi, + - * / and parentheses.
/// creg declarations, barriers and measurements are accepted and dropped.
/// Throws ParseError with a 1-based location, or UnsupportedGate for other gates.
Circuit parse_qasm(const std::string &text);

/// Emits standard gates with round-trip exact angles; throws UnsupportedGate for "unitary" gates.
std::string emit_qasm(const Circuit &c);

}  // namespace nsbasis
