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

#include "nsbasis/feasibility.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsbasis/errors.h"
#include "nsbasis/inequality_table.h"
#include "nsbasis/rng.h"

namespace nsbasis {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 sub(const Vec3 &a, const Vec3 &b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool on_chamber_plane(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
    const double tol = 1e-12;
    auto all = [&](auto pred) { return pred(a) && pred(b) && pred(c); };
    return all([&](const Vec3 &v) { return std::abs(v[2]) < tol; }) ||
           all([&](const Vec3 &v) { return std::abs(v[0] - v[1]) < tol; }) ||
           all([&](const Vec3 &v) { return std::abs(v[1] - v[2]) < tol; }) ||
           all([&](const Vec3 &v) { return std::abs(v[0] + v[1] - 1) < tol; });
}

Region make_region(std::string name, const std::vector<std::array<Vec3, 4>> &tets) {
    Region r{std::move(name), {}};
    for (const auto &t : tets) {
        r.complement.emplace_back(t);
    }
    return r;
}

constexpr Vec3 kI0{0, 0, 0};
constexpr Vec3 kI1{1, 0, 0};
constexpr Vec3 kCz{0.5, 0, 0};
constexpr Vec3 kSwapV{0.5, 0.5, 0.5};
constexpr Vec3 kIswapV{0.5, 0.5, 0};
constexpr Vec3 kSqIswap0{0.25, 0.25, 0};
constexpr Vec3 kSqIswap1{0.75, 0.25, 0};
constexpr Vec3 kSqSwap{0.25, 0.25, 0.25};
constexpr Vec3 kSqSwapDag{0.75, 0.25, 0.25};

bool satisfies_all(std::span<const PhaseInequality> table, const LogSpec &a, const LogSpec &b, const LogSpec &c,
                   double eps) {
    for (const PhaseInequality &q : table) {
        double s = 0;
        for (int i = 0; i < 4; i++) {
            if (q.first & (1u << i)) {
                s += a.v[i];
            }
            if (q.second & (1u << i)) {
                s += b.v[i];
            }
            if (q.third & (1u << i)) {
                s += c.v[i];
            }
        }
        if (s > q.degree + eps) {
            return false;
        }
    }
    return true;
}

/// The distinct members of {l, rho(l)}.
std::vector<LogSpec> variants(const LogSpec &l) {
    LogSpec r = rho(l);
    bool same = true;
    for (int i = 0; i < 4; i++) {
        same = same && std::abs(r.v[i] - l.v[i]) < 1e-15;
    }
    if (same) {
        return {l};
    }
    return {l, r};
}

LogSpec inverse(const LogSpec &l) {
    return {{-l.v[3], -l.v[2], -l.v[1], -l.v[0]}};
}

bool in_chamber_box_sample(double x, double y, double z) {
    return z <= y && y <= x && x <= 1 - y;
}

}  // namespace

Tetrahedron::Tetrahedron(const std::array<Vec3, 4> &vertices) : vertices_(vertices) {
    if (!(volume() > 1e-12)) {
        throw std::invalid_argument("degenerate tetrahedron");
    }
    for (int omit = 0; omit < 4; omit++) {
        std::array<Vec3, 3> f;
        int k = 0;
        for (int i = 0; i < 4; i++) {
            if (i != omit) {
                f[k++] = vertices_[i];
            }
        }
        Vec3 n = cross(sub(f[1], f[0]), sub(f[2], f[0]));
        double len = std::sqrt(dot(n, n));
        for (double &v : n) {
            v /= len;
        }
        double off = dot(n, f[0]);
        if (dot(n, vertices_[omit]) > off) {
            for (double &v : n) {
                v = -v;
            }
            off = -off;
        }
        faces_[omit] = {n, off, on_chamber_plane(f[0], f[1], f[2])};
    }
}

double Tetrahedron::volume() const {
    Vec3 a = sub(vertices_[1], vertices_[0]);
    Vec3 b = sub(vertices_[2], vertices_[0]);
    Vec3 c = sub(vertices_[3], vertices_[0]);
    return std::abs(dot(a, cross(b, c))) / 6.0;
}

bool Tetrahedron::contains(const Vec3 &v, double eps) const {
    for (const Face &f : faces_) {
        if (dot(f.normal, v) - f.offset > eps) {
            return false;
        }
    }
    return true;
}

bool Tetrahedron::contains_barycentric(const Vec3 &v, double eps) const {
    Eigen::Matrix3d m;
    for (int j = 0; j < 3; j++) {
        for (int i = 0; i < 3; i++) {
            m(i, j) = vertices_[j + 1][i] - vertices_[0][i];
        }
    }
    Eigen::Vector3d rhs(v[0] - vertices_[0][0], v[1] - vertices_[0][1], v[2] - vertices_[0][2]);
    Eigen::Vector3d l = m.partialPivLu().solve(rhs);
    double l0 = 1 - l.sum();
    return l0 >= -eps && l[0] >= -eps && l[1] >= -eps && l[2] >= -eps;
}

bool Tetrahedron::relative_interior(const Vec3 &v, double eps) const {
    for (const Face &f : faces_) {
        double s = dot(f.normal, v) - f.offset;
        if (f.on_chamber_boundary ? s > eps : s >= -eps) {
            return false;
        }
    }
    return true;
}

bool Region::contains(const CanonicalCoordinate &c, double eps) const {
    const Vec3 v = c.as_array();
    for (const Tetrahedron &t : complement) {
        if (t.relative_interior(v, eps)) {
            return false;
        }
    }
    return true;
}

const Region &swap3_region() {
    static const Region r = make_region(
        "s_swap3", {
                       {kI0, kCz, kSqIswap0, Vec3{1.0 / 6, 1.0 / 6, 1.0 / 6}},
                       {kCz, kI1, kSqIswap1, Vec3{5.0 / 6, 1.0 / 6, 1.0 / 6}},
                       {kSwapV, Vec3{0.5, 1.0 / 6, 1.0 / 6}, Vec3{1.0 / 6, 1.0 / 6, 1.0 / 6}, Vec3{1.0 / 3, 1.0 / 3, 1.0 / 6}},
                       {kSwapV, Vec3{0.5, 1.0 / 6, 1.0 / 6}, Vec3{5.0 / 6, 1.0 / 6, 1.0 / 6}, Vec3{2.0 / 3, 1.0 / 3, 1.0 / 6}},
                   });
    return r;
}

const Region &cnot2_region() {
    static const Region r = make_region("s_cnot2", {
                                                       {kI0, Vec3{0.25, 0, 0}, kSqIswap0, kSqSwap},
                                                       {kI1, Vec3{0.75, 0, 0}, kSqIswap1, kSqSwapDag},
                                                       {kSwapV, kSqSwap, kSqSwapDag, Vec3{0.5, 0.5, 0.25}},
                                                   });
    return r;
}

const Region &perfect_entangler_region() {
    static const Region r = make_region("pe", {
                                                  {kI0, kCz, kSqIswap0, kSqSwap},
                                                  {kI1, kCz, kSqIswap1, kSqSwapDag},
                                                  {kSwapV, kSqSwap, kSqSwapDag, kIswapV},
                                              });
    return r;
}

bool SelectionCriterion::satisfied_by(const CanonicalCoordinate &c) const {
    for (const Region &r : regions) {
        if (!r.contains(c, eps)) {
            return false;
        }
    }
    return true;
}

SelectionCriterion criterion1() {
    return {"criterion1", {swap3_region()}};
}

SelectionCriterion criterion2() {
    return {"criterion2", {swap3_region(), cnot2_region()}};
}

CanonicalCoordinate mirror_point(const CanonicalCoordinate &c) {
    return canonicalize(0.5 - c.tx, 0.5 - c.ty, 0.5 - c.tz);
}

bool two_layer_feasible_unchecked(const CanonicalCoordinate &target, const CanonicalCoordinate &b1,
                                  const CanonicalCoordinate &b2) {
    const auto table = phase_inequalities();
    const double eps = tolerances().feasibility;
    for (const LogSpec &l1 : variants(to_logspec(b1))) {
        for (const LogSpec &l2 : variants(to_logspec(b2))) {
            for (const LogSpec &lt : variants(to_logspec(target))) {
                if (satisfies_all(table, l1, l2, inverse(lt), eps)) {
                    return true;
                }
            }
        }
    }
    return false;
}

bool two_layer_feasible(const CanonicalCoordinate &target, const CanonicalCoordinate &b1,
                        const CanonicalCoordinate &b2) {
    verify_phase_inequalities();
    return two_layer_feasible_unchecked(target, b1, b2);
}

SwapLayers swap_min_layers(const CanonicalCoordinate &g, double eps) {
    if (weyl_distance(g, points::kSwap) <= eps) {
        return SwapLayers::One;
    }
    const Vec3 b = points::kB.as_array();
    if (weyl_segment_distance(g, b, kSqSwap) <= eps || weyl_segment_distance(g, b, kSqSwapDag) <= eps) {
        return SwapLayers::Two;
    }
    if (swap3_region().contains(g)) {
        return SwapLayers::Three;
    }
    return SwapLayers::MoreThan3;
}

bool cnot_two_layer(const CanonicalCoordinate &g) {
    return cnot2_region().contains(g);
}

namespace {

bool sample_hit(const Region &r, uint64_t seed, int64_t i) {
    CounterRng rng(seed, (uint64_t)i);
    for (;;) {
        double x = rng.uniform(), y = 0.5 * rng.uniform(), z = 0.5 * rng.uniform();
        if (in_chamber_box_sample(x, y, z)) {
            return r.contains({x, y, z});
        }
    }
}

VolumeEstimate estimate(int64_t hits, int64_t n) {
    double p = (double)hits / (double)n;
    return {p, std::sqrt(p * (1 - p) / (double)n)};
}

}  // namespace

VolumeEstimate region_volume(const Region &r, int64_t n_samples, uint64_t seed) {
    int64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (int64_t i = 0; i < n_samples; i++) {
        hits += sample_hit(r, seed, i) ? 1 : 0;
    }
    return estimate(hits, n_samples);
}

VolumeEstimate region_volume_serial(const Region &r, int64_t n_samples, uint64_t seed) {
    int64_t hits = 0;
    for (int64_t i = 0; i < n_samples; i++) {
        hits += sample_hit(r, seed, i) ? 1 : 0;
    }
    return estimate(hits, n_samples);
}

HitResult first_hit(const Trajectory &traj, const SelectionCriterion &crit) {
    for (size_t i = 0; i < traj.samples.size(); i++) {
        const TrajectorySample &s = traj.samples[i];
        if (!crit.satisfied_by(s.coordinate)) {
            continue;
        }
        HitResult hit{i, s, false, s.duration};
        if (i == 0) {
            return hit;
        }
        const TrajectorySample &prev = traj.samples[i - 1];
        const Vec3 p = prev.coordinate.as_array();
        Vec3 q = s.coordinate.as_array();
        double best = INFINITY;
        for (const Vec3 &img : orbit_images(s.coordinate)) {
            Vec3 d = sub(img, p);
            if (dot(d, d) < best) {
                best = dot(d, d);
                q = img;
            }
        }
        double lo = 0, hi = 1;
        for (int it = 0; it < 50; it++) {
            double mid = 0.5 * (lo + hi);
            CanonicalCoordinate c = canonicalize(p[0] + mid * (q[0] - p[0]), p[1] + mid * (q[1] - p[1]),
                                                 p[2] + mid * (q[2] - p[2]));
            if (crit.satisfied_by(c)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hit.interpolated = true;
        hit.crossing_duration = prev.duration + hi * (s.duration - prev.duration);
        return hit;
    }
    throw NoIntersection("no trajectory sample satisfies " + crit.id, traj.max_duration());
}

Trajectory trajectory_from_coordinates(const std::vector<std::array<double, 3>> &coords, double spacing) {
    Trajectory t;
    t.pair_id = "ideal";
    t.spacing = spacing;
    for (size_t k = 0; k < coords.size(); k++) {
        TrajectorySample s;
        s.duration = spacing * (double)k;
        s.coordinate = canonicalize(coords[k]);
        s.unitary = Unitary2Q(canonical_gate(coords[k][0], coords[k][1], coords[k][2]));
        t.samples.push_back(s);
    }
    return t;
}

}  // namespace nsbasis
