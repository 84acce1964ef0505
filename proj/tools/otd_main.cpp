#include "otd/driver.hpp"
#include "otd/generators.hpp"
#include "otd/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitBadEta = 2;
constexpr int kExitMaxSweeps = 3;
constexpr int kExitAllDegenerate = 4;

struct RunFlags {
    std::optional<double> eta;
    std::optional<double> eta_over_n;
    std::string order = "row";
    std::string order_file;
    std::string init = "identity";
    std::uint64_t precond_seed = 0;
    double tol_grad = 1e-8;
    double tol_f = 1e-12;
    int max_sweeps = 200;
    double degenerate_eps = 0.0;
    std::string pivot_norm = "spectral";
    std::string trace_path;
    std::string trace_every;
    std::string out_core;
    std::string out_factors;
    std::string json_summary;
    std::string seeds;
    bool auto_precond = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    auto* eta = cmd->add_option("--eta", f.eta, "pivot threshold (absolute)");
    auto* eta_n = cmd->add_option("--eta-over-n", f.eta_over_n,
                                  "pivot threshold as c, meaning eta = c/n");
    eta->excludes(eta_n);
    eta_n->excludes(eta);
    auto* order = cmd->add_option("--order", f.order, "pivot ordering")
                      ->check(CLI::IsMember({"row", "col", "row-rev", "col-rev", "diag"}));
    auto* order_file =
        cmd->add_option("--order-file", f.order_file, "custom pivot cycle file");
    order->excludes(order_file);
    order_file->excludes(order);
    cmd->add_option("--init", f.init, "initialization")
        ->check(CLI::IsMember({"identity", "hosvd", "random-precond"}));
    cmd->add_option("--precond-seed", f.precond_seed, "seed for random preconditioning");
    cmd->add_option("--tol-grad", f.tol_grad, "gradient-norm tolerance (relative)");
    cmd->add_option("--tol-f", f.tol_f, "objective stagnation tolerance (relative)");
    cmd->add_option("--max-sweeps", f.max_sweeps, "sweep limit");
    cmd->add_option("--degenerate-eps", f.degenerate_eps,
                    "relative threshold treating a subproblem as degenerate");
    cmd->add_option("--pivot-norm", f.pivot_norm, "norm in the pivot condition")
        ->check(CLI::IsMember({"spectral", "frobenius"}));
    cmd->add_option("--trace", f.trace_path, "write a diagnostics CSV here");
    cmd->add_option("--trace-every", f.trace_every, "trace granularity")
        ->check(CLI::IsMember({"micro", "sweep"}));
    cmd->add_option("--out-core", f.out_core, "write the final core tensor here");
    cmd->add_option("--out-factors", f.out_factors,
                    "write factors to PREFIX.U, PREFIX.V, PREFIX.W");
    cmd->add_option("--json-summary", f.json_summary, "write a JSON summary here");
    auto* seeds = cmd->add_option("--seeds", f.seeds,
                                  "batch mode A..B: one run per preconditioner seed");
    auto* autop = cmd->add_flag("--auto-precond", f.auto_precond,
                                "retry once with random preconditioning when stuck");
    seeds->excludes(autop);
}

otd::RunConfig make_config(const RunFlags& f, int n) {
    otd::RunConfig cfg;
    cfg.eta = f.eta;
    cfg.eta_over_n = f.eta_over_n;
    cfg.ordering = otd::ordering_from_name(f.order);
    cfg.init = f.init == "identity" ? otd::Init::Identity
               : f.init == "hosvd"  ? otd::Init::Hosvd
                                    : otd::Init::RandomPrecond;
    cfg.precond_seed = f.precond_seed;
    cfg.norm_kind = f.pivot_norm == "spectral" ? otd::PivotNorm::Spectral
                                               : otd::PivotNorm::Frobenius;
    cfg.tol_grad = f.tol_grad;
    cfg.tol_f = f.tol_f;
    cfg.max_sweeps = f.max_sweeps;
    cfg.degenerate_eps = f.degenerate_eps;
    // Per-microiteration rows are only worth their cost when a trace is
    // actually written.
    if (!f.trace_every.empty())
        cfg.trace_every = f.trace_every == "micro" ? otd::TraceGranularity::Microiteration
                                                   : otd::TraceGranularity::Sweep;
    else
        cfg.trace_every = f.trace_path.empty() ? otd::TraceGranularity::Sweep
                                               : otd::TraceGranularity::Microiteration;
    if (!f.order_file.empty()) cfg.custom_cycle = otd::read_order_file(f.order_file, n);
    return cfg;
}

int status_exit_code(otd::RunStatus status) {
    switch (status) {
        case otd::RunStatus::ConvergedGrad:
        case otd::RunStatus::ConvergedStagnation: return 0;
        case otd::RunStatus::MaxSweeps: return kExitMaxSweeps;
        case otd::RunStatus::AllDegenerate: return kExitAllDegenerate;
    }
    return 1;
}

json summary_json(const otd::RunResult& res) {
    return json{{"status", otd::status_name(res.status)},
                {"f", res.f_final},
                {"off_rel", res.off_rel_final},
                {"sweeps", res.sweeps_used},
                {"recommend_precond", res.recommend_precond}};
}

void write_run_outputs(const RunFlags& f, const otd::RunResult& res) {
    if (!f.trace_path.empty()) otd::write_trace_csv(f.trace_path, res.trace);
    if (!f.out_core.empty()) otd::write_tensor(f.out_core, res.core);
    if (!f.out_factors.empty()) {
        otd::write_matrix(f.out_factors + ".U", res.factors.u);
        otd::write_matrix(f.out_factors + ".V", res.factors.v);
        otd::write_matrix(f.out_factors + ".W", res.factors.w);
    }
    if (res.reorthogonalizations > 0)
        std::cerr << "note: factors re-orthogonalized " << res.reorthogonalizations
                  << " time(s)\n";
}

// Executes a run with the --auto-precond retry. Returns the result actually
// reported.
otd::RunResult execute_run(const otd::Tensor3& a, const RunFlags& f, otd::RunConfig cfg) {
    otd::RunResult res = otd::run(a, cfg);
    if (res.status == otd::RunStatus::AllDegenerate && f.auto_precond) {
        std::cerr << "note: all subproblems degenerate; retrying with random "
                     "preconditioning (seed "
                  << f.precond_seed << ")\n";
        cfg.init = otd::Init::RandomPrecond;
        cfg.precond_seed = f.precond_seed;
        res = otd::run(a, cfg);
    }
    if (res.status == otd::RunStatus::AllDegenerate)
        std::cerr << "all rotation subproblems are degenerate (zero diagonal); "
                     "restart with --init random-precond or pass --auto-precond\n";
    return res;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& spec) {
    const std::size_t dots = spec.find("..");
    if (dots == std::string::npos)
        throw std::runtime_error("--seeds expects a range A..B, got '" + spec + "'");
    const std::uint64_t a = std::stoull(spec.substr(0, dots));
    const std::uint64_t b = std::stoull(spec.substr(dots + 2));
    if (b < a) throw std::runtime_error("--seeds range is empty: '" + spec + "'");
    return {a, b};
}

int cmd_run(const std::string& input, const RunFlags& f) {
    const otd::Tensor3 a = otd::read_tensor(input);
    otd::RunConfig cfg = make_config(f, a.size());
    try {
        cfg.resolve_eta(a.size());
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitBadEta;
    }

    if (!f.seeds.empty()) {
        if (cfg.init != otd::Init::RandomPrecond) {
            std::cerr << "--seeds requires --init random-precond\n";
            return 1;
        }
        if (!f.trace_path.empty() || !f.out_core.empty() || !f.out_factors.empty()) {
            std::cerr << "--seeds batch mode does not write per-run files; drop --trace, "
                         "--out-core and --out-factors\n";
            return 1;
        }
        const auto [first, last] = parse_seed_range(f.seeds);
        json all = json::array();
        int exit_code = 0;
        for (std::uint64_t seed = first; seed <= last; ++seed) {
            cfg.precond_seed = seed;
            const otd::RunResult res = otd::run(a, cfg);
            std::cout << "seed=" << seed << " " << otd::status_name(res.status) << " "
                      << otd::format_real(res.f_final) << " "
                      << otd::format_real(res.off_rel_final) << " " << res.sweeps_used
                      << "\n";
            json j = summary_json(res);
            j["seed"] = seed;
            all.push_back(std::move(j));
            exit_code = std::max(exit_code, status_exit_code(res.status));
        }
        if (!f.json_summary.empty()) {
            std::ofstream out(f.json_summary);
            out << all.dump(2) << "\n";
        }
        return exit_code;
    }

    const otd::RunResult res = execute_run(a, f, cfg);
    write_run_outputs(f, res);
    std::cout << otd::status_name(res.status) << " " << otd::format_real(res.f_final) << " "
              << otd::format_real(res.off_rel_final) << " " << res.sweeps_used << "\n";
    if (!f.json_summary.empty()) {
        std::ofstream out(f.json_summary);
        out << summary_json(res).dump(2) << "\n";
    }
    return status_exit_code(res.status);
}

int cmd_lowrank(const std::string& input, int rank, const std::string& out_path,
                const RunFlags& f) {
    const otd::Tensor3 a = otd::read_tensor(input);
    otd::RunConfig cfg = make_config(f, a.size());
    try {
        cfg.resolve_eta(a.size());
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitBadEta;
    }
    const otd::RunResult res = execute_run(a, f, cfg);
    write_run_outputs(f, res);
    const otd::LowRankResult lr = otd::low_rank(a, res, rank);
    const double na = otd::norm(a);
    std::cout << otd::format_real(lr.err) << " "
              << otd::format_real(na > 0.0 ? lr.err / na : 0.0) << "\n";
    if (!out_path.empty()) otd::write_tensor(out_path, lr.approx);
    return status_exit_code(res.status);
}

int cmd_check(const std::string& input) {
    const otd::Tensor3 a = otd::read_tensor(input);
    const double na = otd::norm(a);
    const double off_rel = na > 0.0 ? otd::off_norm(a) / na : 0.0;
    const double asym = otd::asymmetry(a);
    std::cout << "n " << a.size() << "\n";
    std::cout << "norm " << otd::format_real(na) << "\n";
    std::cout << "offrel " << otd::format_real(off_rel) << "\n";
    std::cout << "asymmetry " << otd::format_real(asym) << "\n";
    std::cout << "symmetric " << ((asym <= 1e-12 * na) ? "true" : "false") << "\n";
    std::cout << "antisymmetric " << (otd::is_antisymmetric(a, 1e-12) ? "true" : "false")
              << "\n";
    return 0;
}

int cmd_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& out) {
    otd::Tensor3 t;
    if (kind == "random")
        t = otd::gen_random(n, seed);
    else if (kind == "diagonalizable")
        t = otd::gen_diagonalizable(n, seed);
    else if (kind == "symmetric")
        t = otd::gen_symmetric(n, seed);
    else if (kind == "antisymmetric")
        t = otd::gen_antisymmetric(n, seed);
    else if (kind == "paper-t")
        t = otd::gen_paper_t();
    else
        throw std::runtime_error("unknown tensor kind '" + kind + "'");
    otd::write_tensor(out, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jacobi-type approximate orthogonal diagonalization of cube tensors"};
    app.set_version_flag("--version", "otd 1.0.0");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a test tensor file");
    std::string gen_kind, gen_out;
    int gen_n = 10;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "tensor family")
        ->required()
        ->check(CLI::IsMember(
            {"random", "diagonalizable", "symmetric", "antisymmetric", "paper-t"}));
    gen->add_option("--n", gen_n, "mode size (ignored for paper-t)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output path")->required();

    // run
    auto* run = app.add_subcommand("run", "diagonalize a tensor file");
    std::string run_input;
    RunFlags run_flags;
    run->add_option("input", run_input, "tensor file")->required();
    add_run_flags(run, run_flags);

    // lowrank
    auto* lowrank = app.add_subcommand("lowrank", "diagonalize, then truncate to rank r");
    std::string lr_input, lr_out;
    int lr_rank = 1;
    RunFlags lr_flags;
    lowrank->add_option("input", lr_input, "tensor file")->required();
    lowrank->add_option("--rank", lr_rank, "kept rank")->required();
    lowrank->add_option("--out", lr_out, "output path for the approximation");
    add_run_flags(lowrank, lr_flags);

    // check
    auto* check = app.add_subcommand("check", "print norms and structure of a tensor file");
    std::string check_input;
    check->add_option("input", check_input, "tensor file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen_kind != "paper-t" && gen_n < 2) {
                std::cerr << "gen: --n must be >= 2\n";
                return 1;
            }
            return cmd_gen(gen_kind, gen_n, gen_seed, gen_out);
        }
        if (run->parsed()) return cmd_run(run_input, run_flags);
        if (lowrank->parsed()) return cmd_lowrank(lr_input, lr_rank, lr_out, lr_flags);
        if (check->parsed()) return cmd_check(check_input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
