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

#include "nsbasis/hamsim.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>

#include "nsbasis/errors.h"

namespace nsbasis {

namespace {

constexpr double kTwoPi = 2 * kPi;
constexpr double kGHz = kTwoPi * 1e9;
constexpr double kMHz = kTwoPi * 1e6;

struct BareState {
    int na, nb, nc;
};

/// Bare computational states |00>, |01>, |10>, |11> (qubit a first).
constexpr std::array<BareState, 4> kComputational{{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}};

void check_levels(const PairParams &p) {
    if (p.levels_q < 3 || p.levels_c < 4) {
        throw TruncationTooSmall("need at least 3 transmon and 4 coupler levels, got " + std::to_string(p.levels_q) +
                                 " and " + std::to_string(p.levels_c));
    }
}

/// Full-space indices of the states with total excitation n.
std::vector<int> sector_states(const PairParams &p, int n) {
    std::vector<int> out;
    for (int na = 0; na < p.levels_q; na++) {
        for (int nb = 0; nb < p.levels_q; nb++) {
            int nc = n - na - nb;
            if (nc >= 0 && nc < p.levels_c) {
                out.push_back(p.index(na, nb, nc));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int max_excitation(const PairParams &p) {
    return 2 * (p.levels_q - 1) + p.levels_c - 1;
}

MatX sub_block(const MatX &h, const std::vector<int> &states) {
    const int n = (int)states.size();
    MatX b(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            b(i, j) = h(states[i], states[j]);
        }
    }
    return b;
}

std::optional<double> zz_or_nothing(const PairParams &p) {
    try {
        return static_zz(p);
    } catch (const StateIdentificationAmbiguous &) {
        return std::nullopt;
    }
}

/// Dressed detuning E10 - E01 averaged over one modulation period.
double averaged_detuning(const PairParams &p, double delta) {
    constexpr int kPhases = 16;
    double sum = 0;
    int count = 0;
    for (int k = 0; k < kPhases; k++) {
        try {
            DressedBasis d = dressed_basis(p, delta * std::sin(kTwoPi * k / kPhases));
            sum += d.energies[2] - d.energies[1];
            count++;
        } catch (const StateIdentificationAmbiguous &) {
        }
    }
    if (count == 0) {
        DressedBasis d = dressed_basis(p);
        return d.energies[2] - d.energies[1];
    }
    return sum / count;
}

}  // namespace

PairParams PairParams::for_qubits(double omega_a, double omega_b) {
    PairParams p;
    p.omega_a = omega_a;
    p.omega_b = omega_b;
    p.alpha_a = -250 * kMHz;
    p.alpha_b = -250 * kMHz;
    p.alpha_c = 150 * kMHz;
    p.g_ab = 5 * kMHz;
    p.g_bc = 150 * kMHz;
    p.g_ca = 150 * kMHz;
    return p;
}

PairParams PairParams::defaults() {
    static const PairParams d = [] {
        PairParams p = for_qubits(5.0 * kGHz, 3.0 * kGHz);
        p.omega_c0 = find_zero_zz_bias(p);
        return p;
    }();
    return d;
}

MatX build_hamiltonian(const PairParams &p, double coupler_shift) {
    check_levels(p);
    const int n = p.dimension();
    MatX h = MatX::Zero(n, n);
    const double wc = p.omega_c0 + coupler_shift;
    for (int na = 0; na < p.levels_q; na++) {
        for (int nb = 0; nb < p.levels_q; nb++) {
            for (int nc = 0; nc < p.levels_c; nc++) {
                h(p.index(na, nb, nc), p.index(na, nb, nc)) = p.omega_a * na + 0.5 * p.alpha_a * na * (na - 1) +
                                                              p.omega_b * nb + 0.5 * p.alpha_b * nb * (nb - 1) +
                                                              wc * nc + 0.5 * p.alpha_c * nc * (nc - 1);
            }
        }
    }
    // -g_ab a^dag b - g_bc b^dag c - g_ca c^dag a + h.c.
    auto add_hop = [&](int to, int from, cplx g) {
        const int lim[3] = {p.levels_q, p.levels_q, p.levels_c};
        for (int na = 0; na < p.levels_q; na++) {
            for (int nb = 0; nb < p.levels_q; nb++) {
                for (int nc = 0; nc < p.levels_c; nc++) {
                    int s[3] = {na, nb, nc};
                    if (s[from] == 0 || s[to] + 1 >= lim[to]) {
                        continue;
                    }
                    double amp = std::sqrt((double)s[from] * (s[to] + 1));
                    int t[3] = {na, nb, nc};
                    t[from]--;
                    t[to]++;
                    cplx v = -g * amp;
                    h(p.index(t[0], t[1], t[2]), p.index(na, nb, nc)) += v;
                    h(p.index(na, nb, nc), p.index(t[0], t[1], t[2])) += std::conj(v);
                }
            }
        }
    };
    add_hop(0, 1, p.g_ab);
    add_hop(1, 2, p.g_bc);
    add_hop(2, 0, p.g_ca);
    return h;
}

MatX build_hamiltonian(const PairParams &p, const DrivePulse &drive, double t) {
    return build_hamiltonian(p, drive.delta * std::sin(drive.omega_d * t));
}

DressedBasis dressed_basis(const PairParams &p, double coupler_shift) {
    const MatX h = build_hamiltonian(p, coupler_shift);
    DressedBasis d;
    for (int k = 0; k < 4; k++) {
        const BareState &b = kComputational[k];
        const int n = b.na + b.nb + b.nc;
        const std::vector<int> states = sector_states(p, n);
        Eigen::SelfAdjointEigenSolver<MatX> es(sub_block(h, states));
        const int bare = (int)(std::find(states.begin(), states.end(), p.index(b.na, b.nb, b.nc)) - states.begin());
        Eigen::Index col;
        const double weight = es.eigenvectors().row(bare).cwiseAbs2().maxCoeff(&col);
        if (!(weight > 0.5)) {
            throw StateIdentificationAmbiguous("dressed state for bare |" + std::to_string(b.na) +
                                               std::to_string(b.nb) + "> has maximal overlap " +
                                               std::to_string(weight));
        }
        VecX v = es.eigenvectors().col(col);
        v *= std::polar(1.0, -std::arg(v(bare)));
        d.vectors[k] = VecX::Zero(p.dimension());
        for (size_t i = 0; i < states.size(); i++) {
            d.vectors[k](states[i]) = v(i);
        }
        d.energies[k] = es.eigenvalues()(col);
        d.overlaps[k] = weight;
        d.excitations[k] = n;
    }
    return d;
}

double static_zz(const PairParams &p) {
    DressedBasis d = dressed_basis(p);
    return d.energies[3] - d.energies[2] - d.energies[1] + d.energies[0];
}

double zero_zz_bias(const PairParams &p, double lo, double hi) {
    PairParams q = p;
    auto zz_at = [&](double w) {
        q.omega_c0 = w;
        return static_zz(q);
    };
    double zlo = zz_at(lo), zhi = zz_at(hi);
    if (zlo == 0) {
        return lo;
    }
    if (zhi == 0) {
        return hi;
    }
    if ((zlo > 0) == (zhi > 0)) {
        throw NoSignChange("static ZZ has the same sign at both ends of the bracket");
    }
    const double tol = kTwoPi * 100;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double zm = zz_at(mid);
        if (zm == 0) {
            return mid;
        }
        if ((zm > 0) == (zlo > 0)) {
            lo = mid;
            zlo = zm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double find_zero_zz_bias(const PairParams &p) {
    const double lo = std::min(p.omega_a, p.omega_b), hi = std::max(p.omega_a, p.omega_b);
    const double step = 5 * kMHz;
    const double threshold = kTwoPi * 1e3;
    PairParams q = p;
    std::optional<double> prev;
    double prev_w = 0;
    for (double w = lo + step; w < hi - 0.5 * step; w += step) {
        q.omega_c0 = w;
        std::optional<double> z = zz_or_nothing(q);
        if (z && prev && ((*z > 0) != (*prev > 0))) {
            try {
                double root = zero_zz_bias(p, prev_w, w);
                q.omega_c0 = root;
                std::optional<double> zr = zz_or_nothing(q);
                if (zr && std::abs(*zr) < threshold) {
                    return root;
                }
            } catch (const StateIdentificationAmbiguous &) {
            }
        }
        prev = z;
        prev_w = w;
    }
    throw NoSignChange("no zero-ZZ bias between the qubit frequencies");
}

double modulation_matrix_element(const PairParams &p) {
    DressedBasis d = dressed_basis(p);
    cplx m = 0;
    for (int i = 0; i < p.dimension(); i++) {
        m += std::conj(d.vectors[1](i)) * (double)(i % p.levels_c) * d.vectors[2](i);
    }
    return std::abs(m);
}

double effective_coupling(const PairParams &p, double delta) {
    return 0.5 * std::abs(delta) * modulation_matrix_element(p);
}

double population_transfer(const PairParams &p, const DrivePulse &drive, double probe, double dt) {
    DressedBasis d = dressed_basis(p);
    const std::vector<int> states = sector_states(p, 1);
    const int n = (int)states.size();
    MatX h0 = sub_block(build_hamiltonian(p), states);
    const double ref = h0.diagonal().real().mean();
    h0.diagonal().array() -= ref;
    VecX v(n), target(n);
    Eigen::VectorXd coupler(n);
    for (int i = 0; i < n; i++) {
        v(i) = d.vectors[2](states[i]);
        target(i) = d.vectors[1](states[i]);
        coupler(i) = states[i] % p.levels_c;
    }
    const long steps = std::lround(probe / dt);
    double best = 0;
    MatX h = h0;
    for (long s = 0; s < steps; s++) {
        const double f = drive.delta * std::sin(drive.omega_d * (s + 0.5) * dt);
        h.diagonal() = h0.diagonal() + (f * coupler).cast<cplx>();
        v = expm_hermitian(h, dt) * v;
        best = std::max(best, std::norm(target.dot(v)));
    }
    return best;
}

double find_drive_frequency(const PairParams &p, double xi, double dt) {
    const double delta = DrivePulse::kappa * xi;
    const double g = effective_coupling(p, delta);
    if (!(g > 0)) {
        throw FlatLandscape("modulation does not couple the qubits");
    }
    const double probe = 1.2 * kPi / (2 * g);
    const double center = std::abs(averaged_detuning(p, delta));
    auto transfer = [&](double w) { return population_transfer(p, DrivePulse::from_xi(xi, w), probe, dt); };

    const int half = 8;
    const double step = 0.5 * g;
    int best_j = 0;
    double best_t = -1;
    std::vector<double> grid(2 * half + 1);
    for (int j = -half; j <= half; j++) {
        double t = transfer(center + j * step);
        grid[j + half] = t;
        if (t > best_t) {
            best_t = t;
            best_j = j;
        }
    }
    if (best_t < 0.5) {
        throw FlatLandscape("best population transfer " + std::to_string(best_t) + " is below 0.5");
    }
    double a = center + (best_j - 1) * step, b = center + (best_j + 1) * step;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1);
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = transfer(c), fd = transfer(d);
    while (b - a > 1e-3 * g) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = transfer(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = transfer(d);
        }
    }
    const double refined = fc > fd ? c : d;
    return std::max(fc, fd) >= best_t ? refined : center + best_j * step;
}

SectorPropagator::SectorPropagator(const PairParams &p, const DrivePulse &drive, double dt, int max_exc)
    : drive_(drive), dt_(dt) {
    if (!(dt > 0)) {
        throw std::invalid_argument("dt must be positive");
    }
    const MatX h = build_hamiltonian(p);
    const int top = max_exc < 0 ? max_excitation(p) : std::min(max_exc, max_excitation(p));
    dimension_ = p.dimension();
    double fastest = 0;
    for (int n = 0; n <= top; n++) {
        Sector s;
        s.states = sector_states(p, n);
        s.h0 = sub_block(h, s.states);
        s.reference = s.h0.diagonal().real().mean();
        s.h0.diagonal().array() -= s.reference;
        s.coupler.resize((Eigen::Index)s.states.size());
        for (size_t i = 0; i < s.states.size(); i++) {
            s.coupler((Eigen::Index)i) = s.states[i] % p.levels_c;
        }
        s.u = MatX::Identity((Eigen::Index)s.states.size(), (Eigen::Index)s.states.size());
        const double bound = s.h0.cwiseAbs().rowwise().sum().maxCoeff() + std::abs(drive.delta) * s.coupler.maxCoeff();
        fastest = std::max(fastest, bound);
        sectors_.push_back(std::move(s));
    }
    if (dt * fastest > kPi / 10) {
        throw StepTooLarge("dt " + std::to_string(dt) + " s does not resolve the frequency " +
                           std::to_string(fastest / kTwoPi) + " Hz");
    }
}

void SectorPropagator::advance_to(double t) {
    const long target = std::lround(t / dt_);
    if (target < steps_) {
        throw std::invalid_argument("cannot propagate backwards in time");
    }
    for (; steps_ < target; steps_++) {
        const double f = drive_.delta * std::sin(drive_.omega_d * (steps_ + 0.5) * dt_);
        for (Sector &s : sectors_) {
            MatX h = s.h0;
            h.diagonal() += (f * s.coupler).cast<cplx>();
            s.u = expm_hermitian(h, dt_) * s.u;
        }
    }
    time_ = steps_ * dt_;
}

MatX SectorPropagator::full() const {
    const int n = dimension_;
    MatX u = MatX::Zero(n, n);
    for (const Sector &s : sectors_) {
        const cplx phase = std::polar(1.0, -s.reference * time_);
        for (size_t i = 0; i < s.states.size(); i++) {
            for (size_t j = 0; j < s.states.size(); j++) {
                u(s.states[i], s.states[j]) = phase * s.u((Eigen::Index)i, (Eigen::Index)j);
            }
        }
    }
    return u;
}

Mat4 SectorPropagator::computational_block(const DressedBasis &basis) const {
    const std::array<double, 4> frame{basis.energies[0], basis.energies[1], basis.energies[2],
                                      basis.energies[1] + basis.energies[2] - basis.energies[0]};
    Mat4 block = Mat4::Zero();
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            if (basis.excitations[i] != basis.excitations[j]) {
                continue;
            }
            const int sec = basis.excitations[i];
            if (sec >= (int)sectors_.size()) {
                throw std::invalid_argument("computational sector was not propagated");
            }
            const Sector &s = sectors_[sec];
            const Eigen::Index n = (Eigen::Index)s.states.size();
            VecX vi(n), vj(n);
            for (Eigen::Index k = 0; k < n; k++) {
                vi(k) = basis.vectors[i](s.states[k]);
                vj(k) = basis.vectors[j](s.states[k]);
            }
            block(i, j) = std::polar(1.0, (frame[i] - s.reference) * time_) * vi.dot(s.u * vj);
        }
    }
    return block;
}

MatX propagate(const PairParams &p, const DrivePulse &drive, double t0, double t1, double dt) {
    SectorPropagator before(p, drive, dt);
    before.advance_to(t0);
    SectorPropagator prop(p, drive, dt);
    prop.advance_to(t1);
    return prop.full() * before.full().adjoint();
}

MatX propagate(const PairParams &p, const DrivePulse &drive, double duration, double dt) {
    if (duration < 0) {
        throw std::invalid_argument("duration must be non-negative");
    }
    SectorPropagator prop(p, drive, dt);
    prop.advance_to(duration);
    return prop.full();
}

EffectiveGate unitarize(const Mat4 &block) {
    const double leakage = std::max(0.0, 1.0 - (block.adjoint() * block).trace().real() / 4.0);
    return {Mat4(polar_unitary(block)), leakage};
}

EffectiveGate effective_unitary(const Mat4 &block) {
    EffectiveGate g = unitarize(block);
    if (g.leakage > kMaxLeakage) {
        throw ExcessiveLeakage("leakage " + std::to_string(g.leakage) + " exceeds " + std::to_string(kMaxLeakage),
                               g.leakage);
    }
    return g;
}

EffectiveGate effective_unitary(const MatX &propagator, const DressedBasis &basis, double duration) {
    const std::array<double, 4> frame{basis.energies[0], basis.energies[1], basis.energies[2],
                                      basis.energies[1] + basis.energies[2] - basis.energies[0]};
    Mat4 block;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            block(i, j) = std::polar(1.0, frame[i] * duration) * basis.vectors[i].dot(propagator * basis.vectors[j]);
        }
    }
    return effective_unitary(block);
}

Trajectory sample_trajectory(const PairParams &p, const DrivePulse &drive, double t_max, double spacing, double dt) {
    if (!(spacing >= dt) || !(dt > 0)) {
        throw std::invalid_argument("spacing must be at least dt");
    }
    const long per = std::lround(spacing / dt);
    if (std::abs(per * dt - spacing) > 1e-6 * spacing) {
        throw std::invalid_argument("spacing must be a multiple of dt");
    }
    const DressedBasis basis = dressed_basis(p);
    SectorPropagator prop(p, drive, dt, 2);
    Trajectory traj;
    traj.drive = drive;
    traj.drive.duration = t_max;
    traj.spacing = spacing;
    traj.dt = dt;
    const long count = (long)std::floor(t_max / spacing + 1e-9);
    for (long k = 0; k <= count; k++) {
        prop.advance_to(k * per * dt);
        EffectiveGate g = unitarize(prop.computational_block(basis));
        TrajectorySample s;
        s.duration = k * spacing;
        s.unitary = Unitary2Q(g.unitary);
        s.coordinate = cartan_coordinate(g.unitary);
        s.leakage = g.leakage;
        traj.samples.push_back(std::move(s));
    }
    return traj;
}

}  // namespace nsbasis
