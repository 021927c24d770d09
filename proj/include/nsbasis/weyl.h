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
#include <span>
#include <vector>

#include "nsbasis/linalg.h"
#include "nsbasis/tolerances.h"

namespace nsbasis {

/// 4x4 unitary on two qubits; construction checks unitarity.
class Unitary2Q {
   public:
    Unitary2Q() : m_(Mat4::Identity()) {
    }
    /// Throws NonUnitaryInput when the unitarity check fails.
    explicit Unitary2Q(const Mat4 &m, double tol = tolerances().unitarity);
    const Mat4 &matrix() const {
        return m_;
    }

   private:
    Mat4 m_;
};

/// A point of the Weyl chamber in fractional units (CNOT = (1/2, 0, 0)).
struct CanonicalCoordinate {
    double tx = 0, ty = 0, tz = 0;

    /// Chamber membership 0 <= z <= y <= x, x <= 1 - y, bottom-face representative x <= 1/2.
    bool in_chamber(double tol = tolerances().geometry) const;
    std::array<double, 3> as_array() const {
        return {tx, ty, tz};
    }
    bool operator==(const CanonicalCoordinate &) const = default;
};

/// Maps an arbitrary triple to its chamber representative under the Weyl group
/// (permutations, paired sign flips, integer shifts).
CanonicalCoordinate canonicalize(double x, double y, double z);
inline CanonicalCoordinate canonicalize(const std::array<double, 3> &v) {
    return canonicalize(v[0], v[1], v[2]);
}

/// exp(-i pi/2 (x XX + y YY + z ZZ)).
Mat4 canonical_gate(double x, double y, double z);
inline Mat4 canonical_gate(const CanonicalCoordinate &c) {
    return canonical_gate(c.tx, c.ty, c.tz);
}

/// u = global_phase * (left[0] (x) left[1]) * canonical_gate(coordinate) * (right[0] (x) right[1]).
struct KakFactorization {
    std::array<Mat2, 2> left;
    std::array<Mat2, 2> right;
    CanonicalCoordinate coordinate;
    cplx global_phase{1.0, 0.0};

    Mat4 reassemble() const;
};

/// Throws NonUnitaryInput when the unitarity check fails.
KakFactorization kak_decompose(const Mat4 &u);
inline KakFactorization kak_decompose(const Unitary2Q &u) {
    return kak_decompose(u.matrix());
}

CanonicalCoordinate cartan_coordinate(const Mat4 &u);

/// Batched coordinates, parallel over inputs.
std::vector<CanonicalCoordinate> batch_coordinates(std::span<const Mat4> us);
/// Serial reference for batch_coordinates.
std::vector<CanonicalCoordinate> batch_coordinates_serial(std::span<const Mat4> us);

/// Four sorted phases (in turns) summing to zero.
struct LogSpec {
    std::array<double, 4> v{};
};

LogSpec to_logspec(const CanonicalCoordinate &c);
CanonicalCoordinate from_logspec(const LogSpec &l);
/// Involution (a, b, c, d) -> (c + 1/2, d + 1/2, a - 1/2, b - 1/2).
LogSpec rho(const LogSpec &l);
/// Sorts non-increasing and lifts so the entries sum to zero.
LogSpec normalize_logspec(std::array<double, 4> v);

double entangling_power(const CanonicalCoordinate &c);
bool is_perfect_entangler(const CanonicalCoordinate &c, double eps = tolerances().geometry);

/// Euclidean distance minimized over the Weyl-group orbit of b.
double weyl_distance(const CanonicalCoordinate &a, const CanonicalCoordinate &b);

/// Orbit images of c near the chamber (shifts in {-1, 0, 1}); for tests and distance queries.
std::vector<std::array<double, 3>> orbit_images(const CanonicalCoordinate &c);

/// Distance from c to the segment [p, q], minimized over the orbit of c.
double weyl_segment_distance(const CanonicalCoordinate &c, const std::array<double, 3> &p, const std::array<double, 3> &q);

/// Converts between fractional chamber units and a convention scaled by `scale`
/// (e.g. scale = pi / 2 for conventions placing CNOT at pi / 4).
std::array<double, 3> to_convention(const CanonicalCoordinate &c, double scale);
CanonicalCoordinate from_convention(const std::array<double, 3> &v, double scale);

namespace gates {
Mat4 identity();
Mat4 cnot();
Mat4 cz();
Mat4 swap();
Mat4 iswap();
Mat4 sqrt_iswap();
Mat4 sqrt_swap();
Mat4 b_gate();
}  // namespace gates

namespace points {
inline constexpr CanonicalCoordinate kIdentity{0, 0, 0};
inline constexpr CanonicalCoordinate kCnot{0.5, 0, 0};
inline constexpr CanonicalCoordinate kSwap{0.5, 0.5, 0.5};
inline constexpr CanonicalCoordinate kIswap{0.5, 0.5, 0};
inline constexpr CanonicalCoordinate kSqrtIswap{0.25, 0.25, 0};
inline constexpr CanonicalCoordinate kSqrtSwap{0.25, 0.25, 0.25};
inline constexpr CanonicalCoordinate kSqrtSwapDag{0.75, 0.25, 0.25};
inline constexpr CanonicalCoordinate kB{0.5, 0.25, 0};
}  // namespace points

}  // namespace nsbasis
