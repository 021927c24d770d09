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

#include "nsbasis/synth.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <omp.h>

#include <ceres/ceres.h>

#include "nsbasis/errors.h"
#include "nsbasis/feasibility.h"
#include "nsbasis/rng.h"

namespace nsbasis {

namespace {

constexpr double kPolishBelow = 1e-6;

struct EulerFactor {
    Mat2 u;
    std::array<Mat2, 3> du;
};

EulerFactor euler_with_derivatives(const double *angles) {
    const Mat2 za = rz(angles[0]), yb = ry(angles[1]), zc = rz(angles[2]);
    const Mat2 hz = -0.5 * kI * pauli::Z(), hy = -0.5 * kI * pauli::Y();
    EulerFactor f;
    f.u = za * yb * zc;
    f.du[0] = hz * f.u;
    f.du[1] = za * hy * yb * zc;
    f.du[2] = f.u * hz;
    return f;
}

/// tr(e * k) for 4x4 matrices.
cplx trace_product(const Mat4 &e, const Mat4 &k) {
    return e.cwiseProduct(k.transpose()).sum();
}

/// Phase-invariant trace infidelity of the layered circuit and its gradient.
class LayeredObjective final : public ceres::FirstOrderFunction {
   public:
    LayeredObjective(const Mat4 &target, const std::vector<Mat4> &layers)
        : target_dag_(target.adjoint()), layers_(layers) {
    }

    int NumParameters() const override {
        return 6 * ((int)layers_.size() + 1);
    }

    bool Evaluate(const double *params, double *cost, double *gradient) const override {
        const int n = (int)layers_.size();
        std::vector<EulerFactor> f0(n + 1), f1(n + 1);
        std::vector<Mat4> local(n + 1);
        for (int k = 0; k <= n; k++) {
            f0[k] = euler_with_derivatives(params + 6 * k);
            f1[k] = euler_with_derivatives(params + 6 * k + 3);
            local[k] = kron(f0[k].u, f1[k].u);
        }
        // before[k]: everything applied before local k; after[k]: everything applied after it.
        std::vector<Mat4> before(n + 1), after(n + 1);
        before[0] = Mat4::Identity();
        for (int k = 0; k < n; k++) {
            before[k + 1] = layers_[k] * local[k] * before[k];
        }
        after[n] = Mat4::Identity();
        for (int k = n - 1; k >= 0; k--) {
            after[k] = after[k + 1] * local[k + 1] * layers_[k];
        }
        const Mat4 v = local[n] * before[n];
        const cplx z = (target_dag_ * v).trace();
        *cost = 1.0 - std::norm(z) / 16.0;
        if (gradient != nullptr) {
            for (int k = 0; k <= n; k++) {
                const Mat4 e = before[k] * target_dag_ * after[k];
                for (int j = 0; j < 3; j++) {
                    cplx d0 = trace_product(e, kron(f0[k].du[j], f1[k].u));
                    cplx d1 = trace_product(e, kron(f0[k].u, f1[k].du[j]));
                    gradient[6 * k + j] = -(std::conj(z) * d0).real() / 8.0;
                    gradient[6 * k + 3 + j] = -(std::conj(z) * d1).real() / 8.0;
                }
            }
        }
        return true;
    }

   private:
    Mat4 target_dag_;
    std::vector<Mat4> layers_;
};

/// Entrywise residual V(angles) - e^{i phase} W; the last parameter is the phase.
struct EntrywiseResidual {
    const Mat4 *target;
    const std::vector<Mat4> *layers;

    bool operator()(double const *const *params, double *residuals) const {
        const double *x = params[0];
        const int n = (int)layers->size();
        Mat4 v = kron(euler_zyz(x[0], x[1], x[2]), euler_zyz(x[3], x[4], x[5]));
        for (int k = 0; k < n; k++) {
            const double *a = x + 6 * (k + 1);
            v = kron(euler_zyz(a[0], a[1], a[2]), euler_zyz(a[3], a[4], a[5])) * (*layers)[k] * v;
        }
        const Mat4 r = v - std::polar(1.0, x[6 * (n + 1)]) * (*target);
        for (int i = 0; i < 16; i++) {
            residuals[2 * i] = r(i / 4, i % 4).real();
            residuals[2 * i + 1] = r(i / 4, i % 4).imag();
        }
        return true;
    }
};

/// Gauss-Newton refinement of a converged restart. The trace objective is flat at its minimum,
/// so line-search iterates stall near sqrt(machine epsilon) in the angles.
void polish(const Mat4 &target, const std::vector<Mat4> &layers, std::vector<double> &x) {
    const int dim = (int)x.size();
    Mat4 v = kron(euler_zyz(x[0], x[1], x[2]), euler_zyz(x[3], x[4], x[5]));
    for (size_t k = 0; k < layers.size(); k++) {
        const double *a = x.data() + 6 * (k + 1);
        v = kron(euler_zyz(a[0], a[1], a[2]), euler_zyz(a[3], a[4], a[5])) * layers[k] * v;
    }
    std::vector<double> p = x;
    p.push_back(std::arg((target.adjoint() * v).trace()));
    auto *cost = new ceres::DynamicNumericDiffCostFunction<EntrywiseResidual, ceres::CENTRAL>(
        new EntrywiseResidual{&target, &layers});
    cost->AddParameterBlock(dim + 1);
    cost->SetNumResiduals(32);
    ceres::Problem problem;
    problem.AddResidualBlock(cost, nullptr, p.data());
    ceres::Solver::Options o;
    o.max_num_iterations = 50;
    o.function_tolerance = 1e-30;
    o.gradient_tolerance = 1e-30;
    o.parameter_tolerance = 1e-16;
    o.logging_type = ceres::SILENT;
    ceres::Solver::Summary summary;
    ceres::Solve(o, &problem, &summary);
    const double before = decomposition_infidelity(target, layers, x);
    std::vector<double> refined(p.begin(), p.end() - 1);
    if (decomposition_infidelity(target, layers, refined) <= before) {
        x = refined;
    }
}

struct RestartResult {
    std::vector<double> angles;
    double infidelity;
};

void quiet_solver_logging() {
    static std::once_flag once;
    std::call_once(once, [] { FLAGS_minloglevel = google::GLOG_ERROR; });
}

RestartResult run_restart(const Mat4 &target, const std::vector<Mat4> &layers, const SynthesisOptions &opts,
                          int restart) {
    quiet_solver_logging();
    const int dim = 6 * ((int)layers.size() + 1);
    CounterRng rng(opts.seed, (uint64_t)restart);
    std::vector<double> x(dim);
    for (double &v : x) {
        v = rng.uniform(0, 2 * kPi);
    }
    ceres::GradientProblem problem(new LayeredObjective(target, layers));
    ceres::GradientProblemSolver::Options o;
    o.line_search_direction_type = ceres::BFGS;
    o.max_num_iterations = opts.max_iterations;
    o.function_tolerance = 1e-16;
    o.gradient_tolerance = 1e-14;
    o.parameter_tolerance = 1e-14;
    o.logging_type = ceres::SILENT;
    o.minimizer_progress_to_stdout = false;
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(o, problem, x.data(), &summary);
    if (decomposition_infidelity(target, layers, x) < kPolishBelow) {
        polish(target, layers, x);
    }
    return {x, decomposition_infidelity(target, layers, x)};
}

GateDecomposition assemble(const Mat4 &target, const std::vector<Mat4> &layers, const RestartResult &r,
                           int restarts_used) {
    GateDecomposition d;
    d.layers = layers;
    for (size_t k = 0; k <= layers.size(); k++) {
        const double *a = r.angles.data() + 6 * k;
        d.locals.push_back({euler_zyz(a[0], a[1], a[2]), euler_zyz(a[3], a[4], a[5])});
    }
    d.infidelity = trace_infidelity(target, d.reassemble());
    d.restarts_used = restarts_used;
    return d;
}

/// Folds restart results in index order; returns true when the scan should stop.
bool fold(const RestartResult &r, int index, const SynthesisOptions &opts, RestartResult &best, int &used) {
    used = index + 1;
    if (r.infidelity < best.infidelity) {
        best = r;
    }
    return opts.stop_at_success && best.infidelity < opts.threshold;
}

void check_inputs(const std::vector<Mat4> &layers, const SynthesisOptions &opts) {
    if (opts.restarts < 1) {
        throw std::invalid_argument("restarts must be positive");
    }
    (void)layers;
}

}  // namespace

Mat4 GateDecomposition::reassemble() const {
    Mat4 v = kron(locals[0][0], locals[0][1]);
    for (size_t k = 0; k < layers.size(); k++) {
        v = kron(locals[k + 1][0], locals[k + 1][1]) * layers[k] * v;
    }
    return v;
}

double decomposition_infidelity(const Mat4 &target, const std::vector<Mat4> &layers, const std::vector<double> &angles) {
    Mat4 v = kron(euler_zyz(angles[0], angles[1], angles[2]), euler_zyz(angles[3], angles[4], angles[5]));
    for (size_t k = 0; k < layers.size(); k++) {
        const double *a = angles.data() + 6 * (k + 1);
        v = kron(euler_zyz(a[0], a[1], a[2]), euler_zyz(a[3], a[4], a[5])) * layers[k] * v;
    }
    return trace_infidelity(target, v);
}

GateDecomposition synthesize_best_serial(const Mat4 &target, const std::vector<Mat4> &layers,
                                         const SynthesisOptions &opts) {
    check_inputs(layers, opts);
    RestartResult best{{}, INFINITY};
    int used = 0;
    for (int r = 0; r < opts.restarts; r++) {
        if (fold(run_restart(target, layers, opts, r), r, opts, best, used)) {
            break;
        }
    }
    return assemble(target, layers, best, used);
}

GateDecomposition synthesize_best(const Mat4 &target, const std::vector<Mat4> &layers, const SynthesisOptions &opts) {
    check_inputs(layers, opts);
    const int chunk = omp_in_parallel() ? 1 : std::max(1, omp_get_max_threads());
    RestartResult best{{}, INFINITY};
    int used = 0;
    for (int start = 0; start < opts.restarts; start += chunk) {
        const int count = std::min(chunk, opts.restarts - start);
        std::vector<RestartResult> results(count);
#pragma omp parallel for schedule(dynamic) if (count > 1)
        for (int i = 0; i < count; i++) {
            results[i] = run_restart(target, layers, opts, start + i);
        }
        bool stop = false;
        for (int i = 0; i < count && !stop; i++) {
            stop = fold(results[i], start + i, opts, best, used);
        }
        if (stop) {
            break;
        }
    }
    return assemble(target, layers, best, used);
}

GateDecomposition synthesize(const Mat4 &target, const std::vector<Mat4> &layers, const SynthesisOptions &opts) {
    GateDecomposition d = synthesize_best(target, layers, opts);
    if (!(d.infidelity < opts.threshold)) {
        throw SynthesisFailed("best infidelity " + std::to_string(d.infidelity) + " after " +
                                  std::to_string(d.restarts_used) + " restarts",
                              d.infidelity, d.restarts_used);
    }
    return d;
}

GateDecomposition synthesize(const Mat4 &target, const Mat4 &basis, int n_layers, const SynthesisOptions &opts) {
    if (n_layers < 0) {
        throw std::invalid_argument("n_layers must be non-negative");
    }
    return synthesize(target, std::vector<Mat4>(n_layers, basis), opts);
}

LayerCount min_layers(const CanonicalCoordinate &target, const CanonicalCoordinate &basis,
                      const SynthesisOptions &opts, int max_layers) {
    const double tol = tolerances().geometry;
    if (weyl_distance(target, points::kIdentity) <= tol) {
        return {0, true};
    }
    if (weyl_distance(target, basis) <= 1e-9) {
        return {1, true};
    }
    if (two_layer_feasible(target, basis, basis)) {
        return {2, true};
    }
    if (weyl_distance(target, points::kSwap) <= tol && swap_min_layers(basis) == SwapLayers::Three) {
        return {3, true};
    }
    const Mat4 t = canonical_gate(target);
    const Mat4 b = canonical_gate(basis);
    double best = 1.0;
    int restarts = 0;
    for (int n = 3; n <= max_layers; n++) {
        GateDecomposition d = synthesize_best(t, std::vector<Mat4>(n, b), opts);
        if (d.infidelity < opts.threshold) {
            return {n, false};
        }
        best = d.infidelity;
        restarts = d.restarts_used;
    }
    throw SynthesisFailed("no depth up to " + std::to_string(max_layers) + " reaches the threshold", best, restarts);
}

std::vector<SynthesisTarget> default_targets() {
    return {{"swap", gates::swap()}, {"cnot", gates::cnot()}};
}

const GateDecomposition *DecompositionCache::find(const std::string &edge_id, const std::string &target_id) const {
    auto it = entries.find({edge_id, target_id});
    return it == entries.end() ? nullptr : &it->second;
}

CacheBuild build_cache(const std::vector<EdgeBasis> &edges, const std::vector<SynthesisTarget> &targets,
                       const SynthesisOptions &opts, const std::string &timestamp) {
    struct Job {
        size_t edge, target;
    };
    std::vector<Job> jobs;
    for (size_t e = 0; e < edges.size(); e++) {
        for (size_t t = 0; t < targets.size(); t++) {
            jobs.push_back({e, t});
        }
    }
    struct Outcome {
        bool ok = false;
        GateDecomposition decomposition;
        CacheFailure failure;
    };
    std::vector<Outcome> outcomes(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t j = 0; j < jobs.size(); j++) {
        const EdgeBasis &eb = edges[jobs[j].edge];
        const SynthesisTarget &tg = targets[jobs[j].target];
        SynthesisOptions o = opts;
        o.seed = mix64(opts.seed ^ mix64(j + 1));
        Outcome &out = outcomes[j];
        try {
            LayerCount lc = min_layers(cartan_coordinate(tg.unitary), cartan_coordinate(eb.unitary), o);
            GateDecomposition d = synthesize(tg.unitary, std::vector<Mat4>(lc.layers, eb.unitary), o);
            d.target_id = tg.id;
            d.layer_ids.assign(lc.layers, eb.gate_id);
            out.decomposition = std::move(d);
            out.ok = true;
        } catch (const SynthesisFailed &ex) {
            out.failure = {eb.edge_id, tg.id, ex.best_infidelity, ex.restarts};
        }
    }
    CacheBuild build;
    build.cache.timestamp = timestamp;
    for (size_t j = 0; j < jobs.size(); j++) {
        const std::string &edge = edges[jobs[j].edge].edge_id;
        const std::string &target = targets[jobs[j].target].id;
        if (outcomes[j].ok) {
            build.cache.entries[{edge, target}] = std::move(outcomes[j].decomposition);
        } else {
            build.failures.push_back(outcomes[j].failure);
        }
    }
    return build;
}

}  // namespace nsbasis
