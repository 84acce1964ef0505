#include "otd/driver.hpp"

#include "oracles.hpp"
#include "otd/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace otd;

namespace {

Tensor3 diagonal_tensor(std::vector<double> d) {
    Tensor3 t(static_cast<int>(d.size()));
    for (int i = 1; i <= t.size(); ++i) t.at(i, i, i) = d[i - 1];
    return t;
}

void expect_result_invariants(const Tensor3& a, const RunResult& res) {
    const double na = norm(a);
    EXPECT_LE(reconstruction_residual(a, res.core, res.factors), 1e-10 * na);
    EXPECT_LE(orthogonality_residual(res.factors.u), 1e-10);
    EXPECT_LE(orthogonality_residual(res.factors.v), 1e-10);
    EXPECT_LE(orthogonality_residual(res.factors.w), 1e-10);
    EXPECT_NEAR(norm(res.core), na, 1e-12 * na);
}

}  // namespace

TEST(RunConfig, EtaResolution) {
    RunConfig cfg;
    EXPECT_DOUBLE_EQ(cfg.resolve_eta(10), 0.2);
    cfg.eta = 0.05;
    EXPECT_DOUBLE_EQ(cfg.resolve_eta(10), 0.05);
    cfg.eta.reset();
    cfg.eta_over_n = 0.05;
    EXPECT_DOUBLE_EQ(cfg.resolve_eta(10), 0.005);
    cfg.eta = 0.01;
    EXPECT_THROW(cfg.resolve_eta(10), std::invalid_argument);  // both set
    cfg.eta_over_n.reset();
    cfg.eta = 0.21;
    EXPECT_THROW(cfg.resolve_eta(10), std::invalid_argument);  // above 2/n
    cfg.eta = 0.0;
    EXPECT_THROW(cfg.resolve_eta(10), std::invalid_argument);
}

TEST(Initialize, IdentityKeepsInput) {
    const Tensor3 a = oracles::random_tensor(4, 3);
    const auto [core, factors] = initialize(a, Init::Identity);
    for (std::size_t t = 0; t < a.data().size(); ++t)
        EXPECT_EQ(core.data()[t], a.data()[t]);
    EXPECT_EQ(orthogonality_residual(factors.u), 0.0);
    EXPECT_EQ(reconstruction_residual(a, core, factors), 0.0);
}

TEST(Initialize, HosvdPreservesNormAndReconstructs) {
    const Tensor3 a = oracles::random_tensor(6, 4);
    const auto [core, factors] = initialize(a, Init::Hosvd);
    EXPECT_NEAR(norm(core), norm(a), 1e-13 * norm(a));
    EXPECT_LE(reconstruction_residual(a, core, factors), 1e-11 * norm(a));
}

TEST(Initialize, RandomPrecondMakesDiagonalNonzeroOnPaperTensor) {
    const Tensor3 t = gen_paper_t();
    int nonzero = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto [core, factors] = initialize(t, Init::RandomPrecond, seed);
        EXPECT_LE(reconstruction_residual(t, core, factors), 1e-12 * norm(t));
        double dmax = 0.0;
        for (double v : diag(core)) dmax = std::max(dmax, std::abs(v));
        if (dmax > 1e-8) ++nonzero;
    }
    EXPECT_GE(nonzero, 99);
}

TEST(Hosvd, DiagonalTensorGivesIdentityFactors) {
    const Tensor3 a = diagonal_tensor({3, 2, 1});
    const FactorTriple f = hosvd_factors(a);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            EXPECT_NEAR(f.u.at(i, j), i == j ? 1.0 : 0.0, 1e-13);
            EXPECT_NEAR(f.v.at(i, j), i == j ? 1.0 : 0.0, 1e-13);
            EXPECT_NEAR(f.w.at(i, j), i == j ? 1.0 : 0.0, 1e-13);
        }
}

TEST(Hosvd, FactorsDiagonalizeTheGramMatrices) {
    const Tensor3 a = oracles::random_tensor(7, 8);
    const FactorTriple f = hosvd_factors(a);
    const Matrix* factors[3] = {&f.u, &f.v, &f.w};
    for (int mode = 1; mode <= 3; ++mode) {
        const Matrix& u = *factors[mode - 1];
        EXPECT_LT(orthogonality_residual(u), 1e-12);
        const Matrix x = matricize(a, mode);
        Matrix gram(7, 7);
        for (int i = 1; i <= 7; ++i)
            for (int j = 1; j <= 7; ++j) {
                double acc = 0.0;
                for (int c = 1; c <= x.cols(); ++c) acc += x.at(i, c) * x.at(j, c);
                gram.at(i, j) = acc;
            }
        const Matrix d = u.transposed() * (gram * u);
        double prev = d.at(1, 1);
        for (int i = 1; i <= 7; ++i) {
            EXPECT_LE(d.at(i, i), prev + 1e-9 * d.at(1, 1));  // descending order
            prev = d.at(i, i);
            for (int j = 1; j <= 7; ++j)
                if (i != j) {
                    EXPECT_NEAR(d.at(i, j), 0.0, 1e-10 * d.at(1, 1));
                }
        }
    }
}

TEST(Run, DiagonalTensorConvergesImmediately) {
    const Tensor3 a = diagonal_tensor({2, -1, 3, 0.5, 1.5});
    RunConfig cfg;
    const RunResult res = run(a, cfg);
    EXPECT_EQ(res.status, RunStatus::ConvergedGrad);
    EXPECT_EQ(res.sweeps_used, 1);
    EXPECT_EQ(res.off_rel_final, 0.0);
    for (std::size_t t = 0; t < a.data().size(); ++t)
        EXPECT_EQ(res.core.data()[t], a.data()[t]);
    EXPECT_EQ(orthogonality_residual(res.factors.u), 0.0);
    // no rotation was applied anywhere in the trace
    for (const auto& r : res.trace)
        if (r.mode != 0) {
            EXPECT_TRUE(r.skipped);
        }
}

TEST(Run, ZeroTensorIsTriviallyDone) {
    const Tensor3 a(3);
    const RunResult res = run(a, RunConfig{});
    EXPECT_EQ(res.status, RunStatus::ConvergedGrad);
    EXPECT_EQ(res.f_final, 0.0);
}

TEST(Run, DiagonalizableTensorReachesZeroOffNorm) {
    const Tensor3 a = gen_diagonalizable(10, 5);
    RunConfig cfg;
    cfg.eta_over_n = 1.0 / 20.0;
    cfg.max_sweeps = 60;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    EXPECT_LT(res.off_rel_final, 1e-6);
    EXPECT_LE(res.sweeps_used, 60);
    expect_result_invariants(a, res);
    // objective and off-norm are consistent: f + off^2 = ||a||^2
    const double na2 = norm(a) * norm(a);
    EXPECT_NEAR(res.f_final + std::pow(res.off_rel_final * norm(a), 2), na2, 1e-10 * na2);
}

TEST(Run, GradConvergenceMeansStationaryPoint) {
    const Tensor3 a = gen_diagonalizable(8, 12);
    RunConfig cfg;
    cfg.eta_over_n = 1.0 / 20.0;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    if (res.status == RunStatus::ConvergedGrad) {
        const double bound = 2.0 * cfg.tol_grad * norm(a) * norm(a);
        for (int mode = 1; mode <= 3; ++mode)
            EXPECT_LE(lambda_of(res.core, mode).max_abs_entry(), bound);
    }
}

TEST(Run, TraceIsMonotoneAndConsistent) {
    const Tensor3 a = oracles::random_tensor(6, 77);
    RunConfig cfg;
    cfg.max_sweeps = 8;
    cfg.trace_every = TraceGranularity::Microiteration;
    const RunResult res = run(a, cfg);
    ASSERT_FALSE(res.trace.empty());
    const double tol = 1e-12 * norm(a) * norm(a);
    double prev_f = -1.0;
    long prev_step = 0;
    for (const auto& r : res.trace) {
        EXPECT_GE(r.f, prev_f - tol);
        prev_f = r.f;
        EXPECT_EQ(r.step, prev_step + 1);
        prev_step = r.step;
        EXPECT_GE(r.mode, 1);
        EXPECT_LE(r.mode, 3);
        EXPECT_LT(r.i, r.j);
        if (r.skipped || r.degenerate) {
            EXPECT_EQ(r.angle, 0.0);
        }
        EXPECT_GE(r.grad_norm, 0.0);
    }
    // every pivot visits the three modes in order
    EXPECT_EQ(res.trace.size() % 3, 0u);
}

TEST(Run, SweepTraceHasOneRowPerSweep) {
    const Tensor3 a = oracles::random_tensor(6, 78);
    RunConfig cfg;
    cfg.max_sweeps = 5;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    EXPECT_EQ(static_cast<int>(res.trace.size()), res.sweeps_used);
    for (const auto& r : res.trace) {
        EXPECT_EQ(r.mode, 0);
        EXPECT_EQ(r.i, 0);
        EXPECT_EQ(r.j, 0);
    }
}

TEST(Run, RandomTensorStagnatesStrictlyBetweenZeroAndOne) {
    const Tensor3 a = gen_random(8, 21);
    RunConfig cfg;
    cfg.eta_over_n = 1.0 / 20.0;
    cfg.max_sweeps = 2000;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    EXPECT_EQ(res.status, RunStatus::ConvergedStagnation);
    EXPECT_GT(res.off_rel_final, 0.0);
    EXPECT_LT(res.off_rel_final, 1.0);
    expect_result_invariants(a, res);
}

TEST(Run, AntisymmetricWithIdentityInitStopsAllDegenerate) {
    const Tensor3 a = gen_antisymmetric(6, 13);
    const RunResult res = run(a, RunConfig{});
    EXPECT_EQ(res.status, RunStatus::AllDegenerate);
    EXPECT_EQ(res.sweeps_used, 1);
    EXPECT_EQ(res.f_final, 0.0);
    EXPECT_TRUE(res.recommend_precond);
}

TEST(Run, AntisymmetricWithPrecondRotatesInFirstSweep) {
    const Tensor3 a = gen_antisymmetric(6, 13);
    RunConfig cfg;
    cfg.init = Init::RandomPrecond;
    cfg.precond_seed = 2;
    cfg.max_sweeps = 400;
    cfg.trace_every = TraceGranularity::Microiteration;
    const RunResult res = run(a, cfg);
    EXPECT_NE(res.status, RunStatus::AllDegenerate);
    bool rotated_in_first_sweep = false;
    for (const auto& r : res.trace)
        if (r.sweep == 1 && r.mode != 0 && !r.skipped && !r.degenerate)
            rotated_in_first_sweep = true;
    EXPECT_TRUE(rotated_in_first_sweep);
    expect_result_invariants(a, res);
}

TEST(Run, PaperTensorDegenerateUnderIdentityAndHosvd) {
    const Tensor3 t = gen_paper_t();
    for (Init init : {Init::Identity, Init::Hosvd}) {
        RunConfig cfg;
        cfg.init = init;
        const RunResult res = run(t, cfg);
        EXPECT_EQ(res.status, RunStatus::AllDegenerate);
        EXPECT_TRUE(res.recommend_precond);
    }
}

TEST(Run, PaperTensorWithPrecondHitsKnownStationaryValues) {
    const Tensor3 t = gen_paper_t();
    for (std::uint64_t seed : {0, 1, 2, 3, 4}) {
        RunConfig cfg;
        cfg.init = Init::RandomPrecond;
        cfg.precond_seed = seed;
        cfg.eta_over_n = 1.0 / 2000.0;
        cfg.trace_every = TraceGranularity::Sweep;
        const RunResult res = run(t, cfg);
        const bool at_symmetric = std::abs(res.f_final - 64.0 / 27.0) < 1e-6;
        const bool at_signed = std::abs(res.f_final - 3.0) < 1e-6;
        EXPECT_TRUE(at_symmetric || at_signed) << "f_final=" << res.f_final;
        expect_result_invariants(t, res);
        if (at_symmetric) {
            EXPECT_TRUE(oracles::equal_up_to_sign_permutation(
                oracles::stationary_symmetric_core(), res.core, 1e-3));
        }
    }
}

TEST(Run, CustomCycleMatchesBuiltinOrdering) {
    const Tensor3 a = gen_diagonalizable(6, 9);
    RunConfig cfg;
    cfg.eta_over_n = 1.0 / 20.0;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult builtin = run(a, cfg);
    cfg.custom_cycle = cycle(Ordering::RowTopDown, 6);
    const RunResult custom = run(a, cfg);
    EXPECT_EQ(builtin.sweeps_used, custom.sweeps_used);
    EXPECT_EQ(builtin.f_final, custom.f_final);
    cfg.custom_cycle = {{1, 2}};
    EXPECT_THROW(run(a, cfg), std::invalid_argument);
}

TEST(Run, ReportsInvariantsOverManySweeps) {
    // reconstruction and orthogonality stay tight over a long run
    const Tensor3 a = gen_random(6, 55);
    RunConfig cfg;
    cfg.max_sweeps = 500;
    cfg.tol_f = 1e-14;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    expect_result_invariants(a, res);
    EXPECT_EQ(res.reorthogonalizations, 0);
}

TEST(Run, ValidatesConfig) {
    const Tensor3 a = oracles::random_tensor(4, 2);
    RunConfig cfg;
    cfg.max_sweeps = 0;
    EXPECT_THROW(run(a, cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.tol_grad = 0.0;
    EXPECT_THROW(run(a, cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.degenerate_eps = -1.0;
    EXPECT_THROW(run(a, cfg), std::invalid_argument);
}

TEST(LowRank, FullRankOnDiagonalizedInputIsExact) {
    const Tensor3 a = gen_diagonalizable(8, 3);
    RunConfig cfg;
    cfg.eta_over_n = 1.0 / 20.0;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    ASSERT_LT(res.off_rel_final, 1e-8);
    const LowRankResult lr = low_rank(a, res, 8);
    EXPECT_LE(lr.err, 1e-10 * norm(a));
}

TEST(LowRank, TruncationIdentityAndDenseOracle) {
    const Tensor3 a = gen_random(6, 31);
    RunConfig cfg;
    cfg.max_sweeps = 300;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    const double s2 = norm(res.core) * norm(res.core);

    const std::vector<double> d = diag(res.core);
    std::vector<int> order(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int r) { return std::abs(d[l]) > std::abs(d[r]); });

    for (int r : {1, 3, 6}) {
        const LowRankResult lr = low_rank(a, res, r);
        double kept = 0.0;
        for (int t = 0; t < r; ++t) kept += d[order[t]] * d[order[t]];
        EXPECT_NEAR(lr.err * lr.err, s2 - kept, 1e-10 * s2);

        // dense reconstruction oracle
        double acc = 0.0;
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j)
                for (int k = 1; k <= 6; ++k) {
                    double v = 0.0;
                    for (int t = 0; t < r; ++t) {
                        const int col = order[t] + 1;
                        v += d[order[t]] * res.factors.u.at(i, col) *
                             res.factors.v.at(j, col) * res.factors.w.at(k, col);
                    }
                    EXPECT_NEAR(lr.approx.at(i, j, k), v, 1e-12);
                    const double diff = a.at(i, j, k) - v;
                    acc += diff * diff;
                }
        EXPECT_NEAR(lr.err, std::sqrt(acc), 1e-12);
    }
    EXPECT_THROW(low_rank(a, res, 0), std::invalid_argument);
    EXPECT_THROW(low_rank(a, res, 7), std::invalid_argument);
}

TEST(Diagnostics, ReportsConsistentNumbers) {
    const Tensor3 a = gen_symmetric(6, 17);
    RunConfig cfg;
    cfg.max_sweeps = 300;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    const DiagnosticsReport rep = diagnostics(a, res);
    EXPECT_EQ(rep.n, 6);
    EXPECT_NEAR(rep.f, res.f_final, 1e-12 * std::max(1.0, res.f_final));
    EXPECT_NEAR(rep.off_rel, res.off_rel_final, 1e-12);
    EXPECT_LE(rep.reconstruction_residual, 1e-10 * norm(a));
    EXPECT_LE(rep.orth_residual_u, 1e-10);
    EXPECT_EQ(rep.asymmetry_core, asymmetry(res.core));
    EXPECT_GE(rep.grad_u, 0.0);
}
