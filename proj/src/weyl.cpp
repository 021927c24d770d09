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

#include "nsbasis/weyl.h"

#include <algorithm>
#include <cmath>

#include "nsbasis/errors.h"

namespace nsbasis {

namespace {

const Mat4 &magic() {
    static const Mat4 m = [] {
        const double s = 1.0 / std::sqrt(2.0);
        Mat4 out;
        out << s, 0, 0, kI * s,  //
            0, kI * s, s, 0,     //
            0, kI * s, -s, 0,    //
            s, 0, 0, -kI * s;
        return out;
    }();
    return m;
}

/// Diagonal of M^dagger (P (x) P) M for each Pauli axis; entries are +-1.
const std::array<std::array<double, 4>, 3> &magic_pauli_diagonals() {
    static const auto d = [] {
        std::array<std::array<double, 4>, 3> out{};
        for (int k = 0; k < 3; k++) {
            Mat4 p = magic().adjoint() * kron(pauli::axis(k), pauli::axis(k)) * magic();
            for (int j = 0; j < 4; j++) {
                out[k][j] = p(j, j).real();
            }
        }
        return out;
    }();
    return d;
}

/// Local conjugator exchanging Pauli axes k and l.
Mat2 axis_exchanger(int k, int l) {
    int m = 3 - k - l;
    if (m == 2) {
        Mat2 s = Mat2::Identity();
        s(1, 1) = kI;
        return s;
    }
    if (m == 0) {
        return rx(kPi / 2);
    }
    return ry(kPi / 2);
}

/// Coordinate triple with the local factors and phase that keep
/// u = phase * left * canonical_gate(t) * right invariant under Weyl moves.
struct TrackedCoordinate {
    std::array<double, 3> t;
    Mat4 *left = nullptr;
    Mat4 *right = nullptr;
    cplx *phase = nullptr;

    bool tracking() const {
        return left != nullptr;
    }

    void shift(int k, long n) {
        if (n == 0) {
            return;
        }
        t[k] -= (double)n;
        if (!tracking()) {
            return;
        }
        if (n % 2 != 0) {
            *right = kron(pauli::axis(k), pauli::axis(k)) * *right;
        }
        static const cplx powers[4] = {1.0, -kI, -1.0, kI};
        *phase *= powers[((n % 4) + 4) % 4];
    }

    void flip(int k, int l) {
        t[k] = -t[k];
        t[l] = -t[l];
        if (!tracking()) {
            return;
        }
        Mat4 q = kron(pauli::axis(3 - k - l), pauli::I());
        *left = *left * q;
        *right = q * *right;
    }

    void exchange(int k, int l) {
        std::swap(t[k], t[l]);
        if (!tracking()) {
            return;
        }
        Mat2 w = axis_exchanger(k, l);
        Mat4 ww = kron(w, w);
        *left = *left * ww.adjoint();
        *right = ww * *right;
    }

    void canonicalize() {
        const double snap = tolerances().geometry;
        for (int k = 0; k < 3; k++) {
            shift(k, (long)std::ceil(t[k] - 0.5));
        }
        std::vector<int> negatives;
        for (int k = 0; k < 3; k++) {
            if (t[k] < 0) {
                negatives.push_back(k);
            }
        }
        if (negatives.size() >= 2) {
            flip(negatives[0], negatives[1]);
            negatives.erase(negatives.begin(), negatives.begin() + 2);
        }
        if (negatives.size() == 1) {
            int j = negatives[0];
            int smallest = 0;
            for (int k = 1; k < 3; k++) {
                if (std::abs(t[k]) < std::abs(t[smallest])) {
                    smallest = k;
                }
            }
            if (smallest != j) {
                flip(j, smallest);
            }
        }
        for (int pass = 0; pass < 2; pass++) {
            for (int k = 0; k < 2; k++) {
                double a = std::abs(t[k]), b = std::abs(t[k + 1]);
                if (a < b || (a == b && t[k] < 0 && t[k + 1] >= 0)) {
                    exchange(k, k + 1);
                }
            }
        }
        if (t[2] < -snap) {
            flip(0, 2);
            shift(0, -1);
        }
        if (std::abs(t[2]) <= snap) {
            t[2] = 0.0;
        }
        for (double &v : t) {
            if (v < 0 && v > -snap) {
                v = 0.0;
            }
        }
    }
};

/// Writes a 4x4 product operator as a (x) b.
std::array<Mat2, 2> factor_product(const Mat4 &k) {
    int bi = 0, bj = 0;
    double best = -1;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            double n = k.block<2, 2>(2 * i, 2 * j).norm();
            if (n > best) {
                best = n;
                bi = i;
                bj = j;
            }
        }
    }
    Mat2 blk = k.block<2, 2>(2 * bi, 2 * bj);
    Mat2 b = blk / std::sqrt(blk.determinant());
    Mat2 a;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            a(i, j) = (b.adjoint() * k.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
        }
    }
    return {a, b};
}

/// Real orthogonal p with p^T s p diagonal, for a complex symmetric unitary s.
Eigen::Matrix4d simultaneous_diagonalizer(const Mat4 &s) {
    const Eigen::Matrix4d re = s.real();
    const Eigen::Matrix4d im = s.imag();
    Eigen::Matrix4d best_p = Eigen::Matrix4d::Identity();
    double best_residual = INFINITY;
    for (int attempt = 0; attempt < 64; attempt++) {
        double theta = 0.3 + 0.7853981633974483 * attempt + 0.0123 * attempt * attempt;
        Eigen::Matrix4d r = std::cos(theta) * re + std::sin(theta) * im;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(r);
        Eigen::Matrix4d p = es.eigenvectors();
        Mat4 d = p.transpose().cast<cplx>() * s * p.cast<cplx>();
        double residual = 0;
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                if (i != j) {
                    residual = std::max(residual, std::abs(d(i, j)));
                }
            }
        }
        if (residual < best_residual) {
            best_residual = residual;
            best_p = p;
        }
        if (residual < 1e-12) {
            break;
        }
    }
    return best_p;
}

}  // namespace

Unitary2Q::Unitary2Q(const Mat4 &m, double tol) : m_(m) {
    double defect = unitarity_defect(m);
    if (!(defect <= tol)) {
        throw NonUnitaryInput("matrix deviates from unitarity by " + std::to_string(defect));
    }
}

bool CanonicalCoordinate::in_chamber(double tol) const {
    if (!(tz >= -tol && ty >= tz - tol && tx >= ty - tol && tx <= 1 - ty + tol)) {
        return false;
    }
    if (tz <= tol && tx > 0.5 + tol) {
        return false;
    }
    return true;
}

CanonicalCoordinate canonicalize(double x, double y, double z) {
    TrackedCoordinate tc{{x, y, z}};
    tc.canonicalize();
    return {tc.t[0], tc.t[1], tc.t[2]};
}

Mat4 canonical_gate(double x, double y, double z) {
    const auto &d = magic_pauli_diagonals();
    Mat4 diag = Mat4::Zero();
    for (int j = 0; j < 4; j++) {
        double angle = -kPi / 2 * (x * d[0][j] + y * d[1][j] + z * d[2][j]);
        diag(j, j) = std::exp(cplx(0, angle));
    }
    return magic() * diag * magic().adjoint();
}

Mat4 KakFactorization::reassemble() const {
    return global_phase * kron(left[0], left[1]) * canonical_gate(coordinate) * kron(right[0], right[1]);
}

KakFactorization kak_decompose(const Mat4 &u) {
    Unitary2Q checked(u);
    const Mat4 &m = magic();
    cplx det = u.determinant();
    double phase0 = std::arg(det) / 4;
    Mat4 v = u * std::exp(cplx(0, -phase0));
    Mat4 ub = m.adjoint() * v * m;
    Mat4 sym = ub.transpose() * ub;

    Eigen::Matrix4d p = simultaneous_diagonalizer(sym);
    if (p.determinant() < 0) {
        p.col(0) = -p.col(0);
    }
    Mat4 pc = p.cast<cplx>();
    Mat4 d2 = pc.transpose() * sym * pc;
    Eigen::Vector4cd dvals;
    for (int j = 0; j < 4; j++) {
        dvals(j) = std::sqrt(d2(j, j) / std::abs(d2(j, j)));
    }
    Mat4 o1c = ub * pc * dvals.cwiseInverse().asDiagonal();
    Eigen::Matrix4d o1 = o1c.real();
    if (o1.determinant() < 0) {
        o1.col(0) = -o1.col(0);
        dvals(0) = -dvals(0);
    }

    // Solve arg(d_j) = phi - pi/2 * (t . pattern_j) for (phi, t).
    const auto &pat = magic_pauli_diagonals();
    Eigen::Matrix4d a;
    Eigen::Vector4d rhs;
    for (int j = 0; j < 4; j++) {
        a(j, 0) = 1.0;
        for (int k = 0; k < 3; k++) {
            a(j, k + 1) = -kPi / 2 * pat[k][j];
        }
        rhs(j) = std::arg(dvals(j));
    }
    Eigen::Vector4d sol = a.fullPivLu().solve(rhs);

    Mat4 left = m * o1.cast<cplx>() * m.adjoint();
    Mat4 right = m * p.transpose().cast<cplx>() * m.adjoint();
    cplx phase = std::exp(cplx(0, phase0 + sol(0)));
    TrackedCoordinate tc{{sol(1), sol(2), sol(3)}, &left, &right, &phase};
    tc.canonicalize();

    KakFactorization out;
    out.left = factor_product(left);
    out.right = factor_product(right);
    out.coordinate = {tc.t[0], tc.t[1], tc.t[2]};
    out.global_phase = phase;
    return out;
}

CanonicalCoordinate cartan_coordinate(const Mat4 &u) {
    return kak_decompose(u).coordinate;
}

std::vector<CanonicalCoordinate> batch_coordinates(std::span<const Mat4> us) {
    std::vector<CanonicalCoordinate> out(us.size());
    const long n = (long)us.size();
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; i++) {
        out[i] = cartan_coordinate(us[i]);
    }
    return out;
}

std::vector<CanonicalCoordinate> batch_coordinates_serial(std::span<const Mat4> us) {
    std::vector<CanonicalCoordinate> out;
    out.reserve(us.size());
    for (const Mat4 &u : us) {
        out.push_back(cartan_coordinate(u));
    }
    return out;
}

LogSpec normalize_logspec(std::array<double, 4> v) {
    double sum = v[0] + v[1] + v[2] + v[3];
    long lift = std::lround(sum);
    std::sort(v.begin(), v.end(), std::greater<>());
    for (long i = 0; i < lift && i < 4; i++) {
        v[i] -= 1.0;
    }
    for (long i = 0; i < -lift && i < 4; i++) {
        v[3 - i] += 1.0;
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return {v};
}

LogSpec to_logspec(const CanonicalCoordinate &c) {
    const double x = c.tx, y = c.ty, z = c.tz;
    return normalize_logspec({(x + y - z) / 2, (x - y + z) / 2, (-x + y + z) / 2, -(x + y + z) / 2});
}

CanonicalCoordinate from_logspec(const LogSpec &l) {
    const auto &v = l.v;
    return canonicalize(v[0] + v[1], v[0] + v[2], v[1] + v[2]);
}

LogSpec rho(const LogSpec &l) {
    const auto &v = l.v;
    return normalize_logspec({v[2] + 0.5, v[3] + 0.5, v[0] - 0.5, v[1] - 0.5});
}

double entangling_power(const CanonicalCoordinate &c) {
    double cx = std::cos(2 * kPi * c.tx), cy = std::cos(2 * kPi * c.ty), cz = std::cos(2 * kPi * c.tz);
    return (3.0 - cx * cy - cy * cz - cz * cx) / 18.0;
}

namespace {

struct HalfSpace {
    std::array<double, 3> normal;
    double offset;  // inside iff normal . v <= offset
};

HalfSpace plane_through(const std::array<double, 3> &a, const std::array<double, 3> &b,
                        const std::array<double, 3> &c, const std::array<double, 3> &inside) {
    Eigen::Vector3d pa(a[0], a[1], a[2]), pb(b[0], b[1], b[2]), pc(c[0], c[1], c[2]);
    Eigen::Vector3d n = (pb - pa).cross(pc - pa);
    n.normalize();
    double off = n.dot(pa);
    Eigen::Vector3d in(inside[0], inside[1], inside[2]);
    if (n.dot(in) > off) {
        n = -n;
        off = -off;
    }
    return {{n[0], n[1], n[2]}, off};
}

const std::array<HalfSpace, 3> &perfect_entangler_faces() {
    static const auto faces = [] {
        const auto cz = points::kCnot.as_array();
        const auto isw = points::kIswap.as_array();
        const auto sq = points::kSqrtSwap.as_array();
        const auto sqd = points::kSqrtSwapDag.as_array();
        const auto si0 = points::kSqrtIswap.as_array();
        const std::array<double, 3> si1{0.75, 0.25, 0.0};
        std::array<double, 3> centroid{};
        for (const auto &p : {cz, isw, sq, sqd, si0, si1}) {
            for (int k = 0; k < 3; k++) {
                centroid[k] += p[k] / 6;
            }
        }
        return std::array<HalfSpace, 3>{plane_through(cz, si0, sq, centroid), plane_through(cz, si1, sqd, centroid),
                                        plane_through(isw, sq, sqd, centroid)};
    }();
    return faces;
}

}  // namespace

bool is_perfect_entangler(const CanonicalCoordinate &c, double eps) {
    const auto v = c.as_array();
    for (const HalfSpace &h : perfect_entangler_faces()) {
        double s = h.normal[0] * v[0] + h.normal[1] * v[1] + h.normal[2] * v[2];
        if (s > h.offset + eps) {
            return false;
        }
    }
    return true;
}

std::vector<std::array<double, 3>> orbit_images(const CanonicalCoordinate &c) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static const int signs[4][3] = {{1, 1, 1}, {-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}};
    const auto v = c.as_array();
    std::vector<std::array<double, 3>> out;
    out.reserve(648);
    for (const auto &p : perms) {
        for (const auto &s : signs) {
            for (int a = -1; a <= 1; a++) {
                for (int b = -1; b <= 1; b++) {
                    for (int d = -1; d <= 1; d++) {
                        out.push_back({s[0] * v[p[0]] + a, s[1] * v[p[1]] + b, s[2] * v[p[2]] + d});
                    }
                }
            }
        }
    }
    return out;
}

double weyl_distance(const CanonicalCoordinate &a, const CanonicalCoordinate &b) {
    double best = INFINITY;
    for (const auto &img : orbit_images(b)) {
        double dx = img[0] - a.tx, dy = img[1] - a.ty, dz = img[2] - a.tz;
        best = std::min(best, dx * dx + dy * dy + dz * dz);
    }
    return std::sqrt(best);
}

double weyl_segment_distance(const CanonicalCoordinate &c, const std::array<double, 3> &p,
                             const std::array<double, 3> &q) {
    Eigen::Vector3d a(p[0], p[1], p[2]), b(q[0], q[1], q[2]);
    Eigen::Vector3d ab = b - a;
    double len2 = ab.squaredNorm();
    double best = INFINITY;
    for (const auto &img : orbit_images(c)) {
        Eigen::Vector3d v(img[0], img[1], img[2]);
        double s = len2 > 0 ? std::clamp((v - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, (a + s * ab - v).norm());
    }
    return best;
}

std::array<double, 3> to_convention(const CanonicalCoordinate &c, double scale) {
    return {c.tx * scale, c.ty * scale, c.tz * scale};
}

CanonicalCoordinate from_convention(const std::array<double, 3> &v, double scale) {
    return canonicalize(v[0] / scale, v[1] / scale, v[2] / scale);
}

namespace gates {

Mat4 identity() {
    return Mat4::Identity();
}

Mat4 cnot() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

Mat4 cz() {
    Mat4 m = Mat4::Identity();
    m(3, 3) = -1;
    return m;
}

Mat4 swap() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    return m;
}

Mat4 iswap() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(3, 3) = 1;
    m(1, 2) = m(2, 1) = kI;
    return m;
}

Mat4 sqrt_iswap() {
    const double s = 1 / std::sqrt(2.0);
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(3, 3) = 1;
    m(1, 1) = m(2, 2) = s;
    m(1, 2) = m(2, 1) = kI * s;
    return m;
}

Mat4 sqrt_swap() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(3, 3) = 1;
    m(1, 1) = m(2, 2) = cplx(0.5, 0.5);
    m(1, 2) = m(2, 1) = cplx(0.5, -0.5);
    return m;
}

Mat4 b_gate() {
    // exp(i pi/4 XX) exp(i pi/8 YY)
    const Mat4 xx = kron(pauli::X(), pauli::X());
    const Mat4 yy = kron(pauli::Y(), pauli::Y());
    const Mat4 id = Mat4::Identity();
    Mat4 a = std::cos(kPi / 4) * id + kI * std::sin(kPi / 4) * xx;
    Mat4 b = std::cos(kPi / 8) * id + kI * std::sin(kPi / 8) * yy;
    return a * b;
}

}  // namespace gates

}  // namespace nsbasis
