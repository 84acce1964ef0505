#include "otd/driver.hpp"

#include "otd/generators.hpp"
#include "otd/linalg.hpp"
#include "otd/rotation_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace otd {

double RunConfig::resolve_eta(int n) const {
    if (eta && eta_over_n)
        throw std::invalid_argument("RunConfig: eta and eta_over_n are mutually exclusive");
    double value = 2.0 / n;
    if (eta) value = *eta;
    if (eta_over_n) value = *eta_over_n / n;
    if (!(value > 0.0) || value > 2.0 / n)
        throw std::invalid_argument("eta must satisfy 0 < eta <= 2/n (n=" + std::to_string(n) +
                                    ", 2/n=" + std::to_string(2.0 / n) + ")");
    return value;
}

std::string status_name(RunStatus status) {
    switch (status) {
        case RunStatus::ConvergedGrad: return "converged-grad";
        case RunStatus::ConvergedStagnation: return "converged-stagnation";
        case RunStatus::MaxSweeps: return "max-sweeps";
        case RunStatus::AllDegenerate: return "all-degenerate";
    }
    return "?";
}

std::pair<Tensor3, FactorTriple> initialize(const Tensor3& a, Init init,
                                            std::uint64_t precond_seed) {
    const int n = a.size();
    switch (init) {
        case Init::Identity:
            return {a, FactorTriple{Matrix::identity(n), Matrix::identity(n),
                                    Matrix::identity(n)}};
        case Init::Hosvd: {
            FactorTriple f = hosvd_factors(a);
            Tensor3 core = mode_product(
                mode_product(mode_product(a, 1, f.u.transposed()), 2, f.v.transposed()), 3,
                f.w.transposed());
            return {std::move(core), std::move(f)};
        }
        case Init::RandomPrecond: {
            NormalSampler sampler(precond_seed);
            const Matrix q = random_orthogonal(n, sampler);
            Tensor3 core =
                mode_product(mode_product(mode_product(a, 1, q), 2, q), 3, q);
            Matrix qt = q.transposed();
            return {std::move(core), FactorTriple{qt, qt, qt}};
        }
    }
    throw std::invalid_argument("initialize: unknown init kind");
}

FactorTriple hosvd_factors(const Tensor3& a) {
    const int n = a.size();
    auto mode_basis = [&](int mode) {
        const Matrix x = matricize(a, mode);
        Matrix gram(n, n);
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                double acc = 0.0;
                for (int c = 1; c <= x.cols(); ++c) acc += x.at(i, c) * x.at(j, c);
                gram.at(i, j) = acc;
                gram.at(j, i) = acc;
            }
        const SymmetricEigen eig = jacobi_eigen_symmetric(gram, 1e-13, 60);

        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int l, int r) { return eig.values[l] > eig.values[r]; });

        Matrix basis(n, n);
        for (int c = 0; c < n; ++c) {
            const int src = order[c];
            int peak = 1;
            for (int r = 2; r <= n; ++r)
                if (std::abs(eig.vectors.at(r, src + 1)) >
                    std::abs(eig.vectors.at(peak, src + 1)))
                    peak = r;
            const double flip = (eig.vectors.at(peak, src + 1) < 0.0) ? -1.0 : 1.0;
            for (int r = 1; r <= n; ++r)
                basis.at(r, c + 1) = flip * eig.vectors.at(r, src + 1);
        }
        return basis;
    };
    return FactorTriple{mode_basis(1), mode_basis(2), mode_basis(3)};
}

double reconstruction_residual(const Tensor3& a, const Tensor3& core,
                               const FactorTriple& factors) {
    const Tensor3 rebuilt = mode_product(
        mode_product(mode_product(core, 1, factors.u), 2, factors.v), 3, factors.w);
    double acc = 0.0;
    for (std::size_t t = 0; t < a.data().size(); ++t) {
        const double d = a.data()[t] - rebuilt.data()[t];
        acc += d * d;
    }
    return std::sqrt(acc);
}

namespace {

Matrix& factor_for_mode(FactorTriple& f, int mode) {
    return mode == 1 ? f.u : (mode == 2 ? f.v : f.w);
}

double grad_total(const Tensor3& core) {
    const auto g = grad_norms(core);
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

}  // namespace

RunResult run(const Tensor3& a, const RunConfig& cfg) {
    const int n = a.size();
    if (n < 2) throw std::invalid_argument("run: n must be >= 2");
    const double eta = cfg.resolve_eta(n);
    if (!(cfg.tol_grad > 0.0) || !(cfg.tol_f > 0.0))
        throw std::invalid_argument("run: tolerances must be positive");
    if (cfg.max_sweeps < 1) throw std::invalid_argument("run: max_sweeps must be >= 1");
    if (cfg.degenerate_eps < 0.0)
        throw std::invalid_argument("run: degenerate_eps must be >= 0");

    std::vector<std::pair<int, int>> pairs;
    if (!cfg.custom_cycle.empty()) {
        check_cycle(cfg.custom_cycle, n);
        pairs = cfg.custom_cycle;
    } else {
        pairs = cycle(cfg.ordering, n);
    }

    RunResult res;
    auto [core, factors] = initialize(a, cfg.init, cfg.precond_seed);
    const double norm_a2 = norm_squared(a);
    const double norm_a = std::sqrt(norm_a2);

    if (norm_a == 0.0) {
        // the zero tensor is already diagonal; nothing to do
        res.core = std::move(core);
        res.factors = std::move(factors);
        res.status = RunStatus::ConvergedGrad;
        return res;
    }

    const double scale2 = norm_a2;
    const bool micro_trace = cfg.trace_every == TraceGranularity::Microiteration;

    double f = diag_sq_sum(core);
    long step = 0;
    RunStatus status = RunStatus::MaxSweeps;
    int sweeps_used = cfg.max_sweeps;

    auto off_rel_from_f = [&](double fv) {
        return std::sqrt(std::max(scale2 - fv, 0.0)) / norm_a;
    };
    auto push_micro = [&](int i, int j, int mode, double angle, bool skipped,
                          bool degenerate, int sweep) {
        if (!micro_trace) return;
        res.trace.push_back({sweep, step, i, j, mode, angle, f, off_rel_from_f(f),
                             grad_total(core), skipped, degenerate});
    };

    for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
        const double f_sweep_start = f;
        for (const auto& [i, j] : pairs) {
            for (int mode = 1; mode <= 3; ++mode) {
                ++step;
                const SkewMatrix lam = lambda_of(core, mode);
                if (!admissible(lam, i, j, eta, cfg.norm_kind)) {
                    push_micro(i, j, mode, 0.0, true, false, sweep);
                    continue;
                }
                const Subtensor222 sub = extract_subtensor(core, i, j);
                const AngleSolution sol = solve_mode_angle(sub, mode, cfg.degenerate_eps);
                if (sol.status == AngleStatus::Degenerate) {
                    push_micro(i, j, mode, 0.0, false, true, sweep);
                    continue;
                }
                const double g_before = pair_objective_g(sub, mode, 0.0);
                apply_plane_rotation(core, mode, i, j, sol.c, sol.s);
                factor_for_mode(factors, mode).rotate_columns(i, j, sol.c, sol.s);
                const double f_next = f - g_before + sol.gain;
                if (f_next < f - 1e-12 * scale2)
                    throw std::runtime_error(
                        "run: objective decreased at sweep " + std::to_string(sweep) +
                        ", pivot (" + std::to_string(i) + "," + std::to_string(j) +
                        "), mode " + std::to_string(mode));
                f = f_next;
                push_micro(i, j, mode, std::atan2(sol.s, sol.c), false, false, sweep);
            }
        }

        // full recomputation kills the incremental drift; the exact value may
        // only differ by rounding
        const double f_exact = diag_sq_sum(core);
        if (f_exact < f - 1e-12 * scale2)
            throw std::runtime_error("run: incremental objective drifted at sweep " +
                                     std::to_string(sweep));
        f = f_exact;

        const double core_norm = norm(core);
        if (std::abs(core_norm - norm_a) > 1e-10 * norm_a)
            throw std::runtime_error("run: tensor norm not conserved at sweep " +
                                     std::to_string(sweep));

        const double worst_orth = std::max({orthogonality_residual(factors.u),
                                            orthogonality_residual(factors.v),
                                            orthogonality_residual(factors.w)});
        if (worst_orth > 1e-9) {
            factors.u = qr_orthonormal_factor(factors.u);
            factors.v = qr_orthonormal_factor(factors.v);
            factors.w = qr_orthonormal_factor(factors.w);
            ++res.reorthogonalizations;
        }

        const bool last = sweep == cfg.max_sweeps;
        if (sweep % 10 == 0 || last) {
            const double drift = reconstruction_residual(a, core, factors);
            if (drift > 1e-8 * norm_a)
                throw std::runtime_error("run: reconstruction drift " + std::to_string(drift) +
                                         " exceeds 1e-8*||a|| at sweep " +
                                         std::to_string(sweep));
        }

        const double gtot = grad_total(core);
        if (cfg.trace_every == TraceGranularity::Sweep)
            res.trace.push_back(
                {sweep, step, 0, 0, 0, 0.0, f, off_rel_from_f(f), gtot, false, false});

        if (f == 0.0) {
            // zero diagonal everywhere: every block vanishes and no rotation
            // can ever be admitted
            status = RunStatus::AllDegenerate;
            sweeps_used = sweep;
            break;
        }
        if (gtot <= cfg.tol_grad * scale2) {
            status = RunStatus::ConvergedGrad;
            sweeps_used = sweep;
            break;
        }
        if (f - f_sweep_start <= cfg.tol_f * scale2) {
            status = RunStatus::ConvergedStagnation;
            sweeps_used = sweep;
            break;
        }
    }

    const double final_drift = reconstruction_residual(a, core, factors);
    if (final_drift > 1e-8 * norm_a)
        throw std::runtime_error("run: final reconstruction drift " +
                                 std::to_string(final_drift) + " exceeds 1e-8*||a||");

    res.core = std::move(core);
    res.factors = std::move(factors);
    res.f_final = f;
    res.off_rel_final = off_norm(res.core) / norm_a;
    res.sweeps_used = sweeps_used;
    res.status = status;
    res.recommend_precond = status == RunStatus::AllDegenerate;
    return res;
}

LowRankResult low_rank(const Tensor3& a, const RunResult& result, int r) {
    const int n = result.core.size();
    if (r < 1 || r > n)
        throw std::invalid_argument("low_rank: rank must lie in [1, n]");

    const std::vector<double> d = diag(result.core);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int rhs) { return std::abs(d[l]) > std::abs(d[rhs]); });
    order.resize(r);

    LowRankResult out;
    out.approx = Tensor3(n);
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= n; ++i) {
                double acc = 0.0;
                for (int t : order)
                    acc += d[t] * result.factors.u.at(i, t + 1) *
                           result.factors.v.at(j, t + 1) * result.factors.w.at(k, t + 1);
                out.approx.at(i, j, k) = acc;
            }
    out.approx.validate_finite();

    double acc = 0.0;
    for (std::size_t t = 0; t < a.data().size(); ++t) {
        const double diff = a.data()[t] - out.approx.data()[t];
        acc += diff * diff;
    }
    out.err = std::sqrt(acc);
    return out;
}

DiagnosticsReport diagnostics(const Tensor3& a, const RunResult& result) {
    DiagnosticsReport rep;
    rep.n = result.core.size();
    rep.f = diag_sq_sum(result.core);
    const double na = norm(a);
    rep.off_rel = (na > 0.0) ? off_norm(result.core) / na : 0.0;
    rep.asymmetry_core = asymmetry(result.core);
    rep.factor_dist_uv = frobenius_distance(result.factors.u, result.factors.v);
    rep.factor_dist_uw = frobenius_distance(result.factors.u, result.factors.w);
    rep.factor_dist_vw = frobenius_distance(result.factors.v, result.factors.w);
    rep.reconstruction_residual = reconstruction_residual(a, result.core, result.factors);
    rep.orth_residual_u = orthogonality_residual(result.factors.u);
    rep.orth_residual_v = orthogonality_residual(result.factors.v);
    rep.orth_residual_w = orthogonality_residual(result.factors.w);
    const auto g = grad_norms(result.core);
    rep.grad_u = g[0];
    rep.grad_v = g[1];
    rep.grad_w = g[2];
    return rep;
}

}  // namespace otd
