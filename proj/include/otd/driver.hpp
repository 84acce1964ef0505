#pragma once

#include "otd/gradient.hpp"
#include "otd/matrix.hpp"
#include "otd/pivot_strategies.hpp"
#include "otd/tensor3.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace otd {

enum class Init { Identity, Hosvd, RandomPrecond };

enum class TraceGranularity { Microiteration, Sweep };

struct RunConfig {
    /// Pivot threshold; resolved to 2/n when neither field is set. eta_over_n
    /// holds c with the meaning eta = c/n; setting both is an error.
    std::optional<double> eta;
    std::optional<double> eta_over_n;
    Ordering ordering = Ordering::RowTopDown;
    /// Custom pivot cycle; overrides `ordering` when nonempty (must be a
    /// permutation of all pairs).
    std::vector<std::pair<int, int>> custom_cycle;
    Init init = Init::Identity;
    std::uint64_t precond_seed = 0;
    PivotNorm norm_kind = PivotNorm::Spectral;
    double tol_grad = 1e-8;   // on sqrt(gu^2+gv^2+gw^2), relative to ||a||^2
    double tol_f = 1e-12;     // stagnation: f gain over a sweep, relative to ||a||^2
    int max_sweeps = 200;
    double degenerate_eps = 0.0;
    TraceGranularity trace_every = TraceGranularity::Microiteration;

    double resolve_eta(int n) const;
};

enum class RunStatus { ConvergedGrad, ConvergedStagnation, MaxSweeps, AllDegenerate };

std::string status_name(RunStatus status);

/// One diagnostics row. Microiteration rows describe the state right after
/// the (pivot, mode) update they log (untouched state for skipped/degenerate
/// rows); sweep rows carry i = j = mode = 0. grad_norm is
/// sqrt(gu^2 + gv^2 + gw^2) over the spectral norms of the three blocks.
struct TraceRecord {
    int sweep = 0;
    long step = 0;
    int i = 0, j = 0;
    int mode = 0;  // 0 for sweep-level rows
    double angle = 0.0;
    double f = 0.0;
    double off_rel = 0.0;
    double grad_norm = 0.0;
    bool skipped = false;
    bool degenerate = false;
};

struct FactorTriple {
    Matrix u, v, w;
};

struct RunResult {
    Tensor3 core;
    FactorTriple factors;
    double f_final = 0.0;
    double off_rel_final = 0.0;
    int sweeps_used = 0;
    RunStatus status = RunStatus::MaxSweeps;
    /// Set with AllDegenerate: nothing can move until the input is mixed by a
    /// random orthogonal preconditioner.
    bool recommend_precond = false;
    int reorthogonalizations = 0;
    std::vector<TraceRecord> trace;
};

/// Starting core and factors. Identity: core = a. Hosvd: factors from
/// hosvd_factors, core = a x1 Uᵀ x2 Vᵀ x3 Wᵀ. RandomPrecond: one seeded
/// random orthogonal Q, core = a x1 Q x2 Q x3 Q and factors Qᵀ, so the
/// reconstruction identity holds from the start.
std::pair<Tensor3, FactorTriple> initialize(const Tensor3& a, Init init,
                                            std::uint64_t precond_seed = 0);

/// Per-mode eigenvector bases of the Gram matrices of the three
/// matricizations, ordered by descending eigenvalue; each vector's
/// largest-magnitude component is made positive. Eigen-solve by cyclic Jacobi
/// iteration (tolerance 1e-13 relative, at most 60 sweeps).
FactorTriple hosvd_factors(const Tensor3& a);

/// Full solver: cyclic sweeps of three-mode microiterations with
/// admissibility gating, monotone objective, trace recording and convergence
/// detection. Throws on numerical invariant violations (objective decrease
/// beyond rounding, reconstruction drift above 1e-8 * ||a||).
RunResult run(const Tensor3& a, const RunConfig& cfg);

struct LowRankResult {
    Tensor3 approx;
    double err = 0.0;  // ||a - approx||
};

/// Rank-r truncation of a finished run: keep the r diagonal entries of the
/// core largest in magnitude together with the matching factor columns and
/// rebuild the full-size tensor.
LowRankResult low_rank(const Tensor3& a, const RunResult& result, int r);

struct DiagnosticsReport {
    int n = 0;
    double f = 0.0;
    double off_rel = 0.0;
    double asymmetry_core = 0.0;
    double factor_dist_uv = 0.0;
    double factor_dist_uw = 0.0;
    double factor_dist_vw = 0.0;
    double reconstruction_residual = 0.0;
    double orth_residual_u = 0.0;
    double orth_residual_v = 0.0;
    double orth_residual_w = 0.0;
    double grad_u = 0.0;
    double grad_v = 0.0;
    double grad_w = 0.0;
};

DiagnosticsReport diagnostics(const Tensor3& a, const RunResult& result);

/// ||a - core x1 U x2 V x3 W||
double reconstruction_residual(const Tensor3& a, const Tensor3& core,
                               const FactorTriple& factors);

}  // namespace otd
