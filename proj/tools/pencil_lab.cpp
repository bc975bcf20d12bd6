// Command line driver: runs the forward solver and the inverse-problem
// studies described by an INI config, writing CSV tables plus a JSON summary
// per command.  Exit codes: 0 success, 2 configuration or usage error,
// 3 solver or certification failure.

#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pencil/asymptotics.hpp"
#include "pencil/cache.hpp"
#include "pencil/config.hpp"
#include "pencil/experiment.hpp"
#include "pencil/metrics.hpp"
#include "pencil/phase_solver.hpp"
#include "pencil/quadrature.hpp"
#include "pencil/report.hpp"
#include "pencil/volterra.hpp"

using nlohmann::json;
using namespace pencil;

namespace {

constexpr double kPi = std::numbers::pi;

struct CommonArgs {
    std::string config_path;
    std::string out_override;
    std::string cache_override;
    std::string mode_override;
    int nmax_override = 0;
    int workers_override = 0;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
    cmd->add_option("--config", args->config_path, "run description file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args->out_override, "override [run] output_dir");
    cmd->add_option("--cache", args->cache_override, "override [run] cache_dir");
    cmd->add_option("--mode", args->mode_override, "override [run] mode")
        ->check(CLI::IsMember({"paper", "corrected"}));
    cmd->add_option("--nmax", args->nmax_override, "override [run] n_max")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", args->workers_override, "override [run] workers")
        ->check(CLI::PositiveNumber);
}

RunConfig load_with_overrides(const CommonArgs& args) {
    RunConfig cfg = load_config(args.config_path);
    if (!args.out_override.empty()) cfg.output_dir = args.out_override;
    if (!args.cache_override.empty()) cfg.cache_dir = args.cache_override;
    if (!args.mode_override.empty()) cfg.mode = args.mode_override;
    if (args.nmax_override > 0) {
        cfg.n_max = args.nmax_override;
        if (cfg.n_min > cfg.n_max) cfg.n_min = 1;
    }
    if (args.workers_override > 0) cfg.workers = args.workers_override;
    return cfg;
}

ReconMode recon_mode(const RunConfig& cfg) {
    return cfg.mode == "paper" ? ReconMode::paper : ReconMode::corrected;
}

MetricWeights metric_weights(const RunConfig& cfg) {
    return cfg.mode == "paper" ? MetricWeights::paper : MetricWeights::corrected;
}

std::vector<int> dense_levels(const RunConfig& cfg) {
    std::vector<int> out;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) out.push_back(n);
    return out;
}

std::vector<int> doubling_levels(const RunConfig& cfg) {
    std::vector<int> out;
    for (int n = std::max(cfg.n_min, 2); n <= cfg.n_max; n *= 2) out.push_back(n);
    if (out.empty() || out.back() != cfg.n_max) out.push_back(cfg.n_max);
    return out;
}

json make_summary(const char* command, const RunConfig& cfg) {
    json j;
    j["format_version"] = kFormatVersion;
    j["command"] = command;
    j["digest"] = cfg.problem.digest();
    j["mode"] = cfg.mode;
    j["n_max"] = cfg.n_max;
    return j;
}

void write_summary(const RunConfig& cfg, const json& j) {
    write_text_file(cfg.output_dir + "/summary.json", j.dump(2) + "\n");
}

const char* case_name(ClassifyOutcome c) {
    switch (c) {
        case ClassifyOutcome::CaseI: return "case1";
        case ClassifyOutcome::CaseII: return "case2";
        default: return "indeterminate";
    }
}

// ---------------------------------------------------------------- forward --
int cmd_forward(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    Spectrum sp = cached_spectrum(cfg.problem, cfg.n_max, cfg.cache_dir, cfg.workers);

    Table t;
    t.columns = {"n", "lambda", "residual", "node_count"};
    for (const auto& e : sp.entries)
        t.rows.push_back({double(e.n), e.lambda, e.residual, double(e.node_count)});
    write_text_file(cfg.output_dir + "/spectrum.csv", render_csv(t));

    NodalAsymptotics asym = compute_c0_c1(cfg.problem);
    json j = make_summary("forward", cfg);
    j["lambda_first"] = sp.lambda(1);
    j["lambda_last"] = sp.lambda(cfg.n_max);
    j["c0"] = asym.c0;
    j["c1"] = asym.c1;
    j["max_residual"] = [&] {
        double r = 0.0;
        for (const auto& e : sp.entries) r = std::max(r, e.residual);
        return r;
    }();
    write_summary(cfg, j);
    std::printf("forward: %d eigenvalues -> %s\n", cfg.n_max, cfg.output_dir.c_str());
    return 0;
}

// ------------------------------------------------------------------ nodes --
int cmd_nodes(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    Spectrum sp;
    NodalSet set = cached_nodal_set(cfg.problem, cfg.n_max, cfg.cache_dir, cfg.workers, &sp);

    Table t;
    t.columns = {"n", "j", "x"};
    for (int n : set.levels()) {
        const auto& xs = set.nodes(n);
        for (size_t j = 0; j < xs.size(); ++j)
            t.rows.push_back({double(n), double(j + 1), xs[j]});
    }
    write_text_file(cfg.output_dir + "/nodes.csv", render_csv(t));

    json j = make_summary("nodes", cfg);
    j["levels"] = set.levels().size();
    try {
        j["pattern"] = case_name(classify_case(set));
    } catch (const std::exception&) {
        j["pattern"] = "unavailable";
    }
    write_summary(cfg, j);
    std::printf("nodes: %d levels -> %s\n", set.level_count(), cfg.output_dir.c_str());
    return 0;
}

// ------------------------------------------------------------ reconstruct --
int cmd_reconstruct(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    const std::vector<int> levels = doubling_levels(cfg);
    ConvergenceStudy st = run_convergence_study(cfg.problem, levels, recon_mode(cfg),
                                                cfg.grid_size, cfg.cache_dir, cfg.workers);

    Table t;
    t.columns = {"n", "lambda", "l1_error", "scaled_error"};
    for (const auto& r : st.rows)
        t.rows.push_back({double(r.n), r.lambda, r.l1_error, r.scaled_error});
    write_text_file(cfg.output_dir + "/convergence.csv", render_csv(t));

    // full profile at the deepest level
    Spectrum sp;
    NodalSet set = cached_nodal_set(cfg.problem, cfg.n_max, cfg.cache_dir, cfg.workers, &sp);
    ReconstructionResult rec = reconstruct_q(set.nodes(cfg.n_max), sp.lambda(cfg.n_max),
                                             cfg.n_max, cfg.problem.p, recon_mode(cfg),
                                             cfg.grid_size, &cfg.problem.q);
    Table prof;
    prof.columns = {"x", "estimate", "truth"};
    for (size_t i = 0; i < rec.grid.size(); ++i)
        prof.rows.push_back({rec.grid[i], rec.values[i], cfg.problem.q(rec.grid[i])});
    write_text_file(cfg.output_dir + "/reconstruction.csv", render_csv(prof));

    json j = make_summary("reconstruct", cfg);
    j["c_estimate"] = st.c_estimate;
    j["slope"] = st.slope;
    j["l1_error_last"] = st.rows.back().l1_error;
    j["clamped_points"] = rec.clamped_points;
    write_summary(cfg, j);
    std::printf("reconstruct: %zu levels, C=%.3f slope=%.3f -> %s\n", st.rows.size(),
                st.c_estimate, st.slope, cfg.output_dir.c_str());
    return 0;
}

// -------------------------------------------------------------- recover-h --
int cmd_recover_h(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    if (cfg.problem.bc != BoundaryCase::RobinInit)
        throw ConfigError("recover-h: the left constant exists only for the robin case");
    const HMode mode = cfg.mode == "paper" ? HMode::printed : HMode::calibrated;
    HStudy st = run_h_study(cfg.problem, 1, doubling_levels(cfg), mode, cfg.cache_dir,
                            cfg.workers);

    Table t;
    t.columns = {"n", "e_value"};
    for (size_t i = 0; i < st.recovery.levels.size(); ++i)
        t.rows.push_back({double(st.recovery.levels[i]), st.recovery.e_values[i]});
    write_text_file(cfg.output_dir + "/h_recovery.csv", render_csv(t));

    json j = make_summary("recover-h", cfg);
    j["h_true"] = st.true_h;
    j["h_hat"] = st.recovery.h_hat;
    j["abs_error"] = st.abs_error;
    j["kappa_hat"] = st.recovery.kappa_hat;
    j["e_extrapolated"] = st.recovery.e_extrapolated;
    write_summary(cfg, j);
    std::printf("recover-h: h_hat=%.6f (true %.6f) -> %s\n", st.recovery.h_hat, st.true_h,
                cfg.output_dir.c_str());
    return 0;
}

// -------------------------------------------------------------- stability --
int cmd_stability(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    if (!cfg.problem_bar)
        throw ConfigError("stability: config needs a [problem.bar] section");
    StabilityStudy st = run_stability_study(cfg.problem, *cfg.problem_bar, dense_levels(cfg),
                                            metric_weights(cfg), cfg.window, cfg.cache_dir,
                                            cfg.workers);

    Table t;
    t.columns = {"n", "s_n"};
    for (size_t i = 0; i < st.levels.size(); ++i)
        t.rows.push_back({double(st.levels[i]), st.s_values[i]});
    write_text_file(cfg.output_dir + "/stability.csv", render_csv(t));

    json j = make_summary("stability", cfg);
    j["d0"] = st.d0;
    j["dsigma"] = st.dsigma_value;
    j["slope"] = st.slope;
    j["half_l1_dq"] = st.half_l1_dq;
    j["ratio"] = st.ratio;
    j["case_mismatch"] = st.case_mismatch;
    write_summary(cfg, j);
    std::printf("stability: d0=%.5f dsigma=%.5f ratio=%.4f -> %s\n", st.d0, st.dsigma_value,
                st.ratio, cfg.output_dir.c_str());
    return 0;
}

// ------------------------------------------------------------- high-order --
int cmd_high_order(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    const int m_top = cfg.problem.max_derivative_order;
    if (m_top < 1)
        throw ConfigError("high-order: set N >= 1 in [problem] to request derivatives");
    // level n supplies n (robin) or n-1 (dirichlet) zeros and the m-th
    // difference quotient needs m+2 of them
    const int min_level =
        m_top + (cfg.problem.bc == BoundaryCase::RobinInit ? 2 : 3);
    if (cfg.n_max < min_level)
        throw ConfigError("high-order: n_max too small for the requested order");
    std::vector<int> m_values;
    for (int m = 1; m <= m_top; ++m) m_values.push_back(m);
    std::vector<int> levels;
    for (int n = std::max(cfg.n_min, min_level); n <= cfg.n_max; n *= 2) levels.push_back(n);
    if (levels.back() != cfg.n_max) levels.push_back(cfg.n_max);
    HighOrderStudy st = run_highorder_study(cfg.problem, m_values, levels, recon_mode(cfg),
                                            cfg.grid_size, cfg.cache_dir, cfg.workers);

    Table t;
    t.columns = {"m", "n", "lambda", "sup_error", "l1_error"};
    for (const auto& r : st.rows)
        t.rows.push_back({double(r.m), double(r.n), r.lambda, r.sup_error, r.l1_error});
    write_text_file(cfg.output_dir + "/highorder.csv", render_csv(t));

    json j = make_summary("high-order", cfg);
    j["orders"] = m_top;
    j["sup_error_last"] = st.rows.back().sup_error;
    j["l1_error_last"] = st.rows.back().l1_error;
    write_summary(cfg, j);
    std::printf("high-order: %zu rows (m up to %d) -> %s\n", st.rows.size(), m_top,
                cfg.output_dir.c_str());
    return 0;
}

// -------------------------------------------------------------- selfcheck --
int cmd_selfcheck(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    Spectrum sp;
    NodalSet a = cached_nodal_set(cfg.problem, cfg.n_max, cfg.cache_dir, cfg.workers, &sp);

    // companion sets: the perturbed problem when given, otherwise the ideal
    // pattern of the same convention; third vertex is always the ideal pattern
    PencilProblem third = cfg.problem;
    third.p = RealFunction::zero();
    third.q = RealFunction::zero();
    third.h = 0.0;
    third.H = 0.0;
    NodalSet c = cfg.problem.bc == BoundaryCase::RobinInit
                     ? NodalSet::trivial_case1(cfg.n_max)
                     : NodalSet::trivial_case2(cfg.n_max);
    PencilProblem bprob = cfg.problem_bar ? *cfg.problem_bar : third;
    NodalSet b = cfg.problem_bar ? cached_nodal_set(*cfg.problem_bar, cfg.n_max, cfg.cache_dir,
                                                    cfg.workers)
                                 : c;

    std::vector<int> levels;
    for (int n = std::max(cfg.n_min, 2); n <= cfg.n_max; ++n) levels.push_back(n);
    SelfcheckReport rep = pseudometric_selfcheck(a, b, c, levels, cfg.problem.p, bprob.p,
                                                 third.p, metric_weights(cfg));

    // phase route vs integral route at a handful of non-eigenvalue energies
    double route_gap = 0.0;
    for (double lambda : {1.7, 5.3, 11.6}) {
        SolutionTrace tr = solve_volterra(cfg.problem, lambda, SolutionKind::phi);
        auto ref = phase_route_values(cfg.problem, lambda, SolutionKind::phi, tr.xs);
        double sup = 0.0, scale = 1.0;
        for (size_t i = 0; i < ref.size(); ++i) {
            sup = std::max(sup, std::abs(tr.values[i] - ref[i]));
            scale = std::max(scale, std::abs(ref[i]));
        }
        route_gap = std::max(route_gap, sup / scale);
    }
    const bool routes_agree = route_gap <= 1e-6;

    std::printf("%s  pseudometric symmetry\n", rep.symmetric ? "PASS" : "FAIL");
    std::printf("%s  pseudometric identity\n", rep.identity_zero ? "PASS" : "FAIL");
    std::printf("%s  triangle inequality (margin %.3e)\n", rep.triangle ? "PASS" : "FAIL",
                rep.worst_triangle_margin);
    std::printf("%s  solution routes agree (gap %.3e)\n", routes_agree ? "PASS" : "FAIL",
                route_gap);

    json j = make_summary("selfcheck", cfg);
    j["symmetric"] = rep.symmetric;
    j["identity_zero"] = rep.identity_zero;
    j["triangle"] = rep.triangle;
    j["worst_triangle_margin"] = rep.worst_triangle_margin;
    j["route_gap"] = route_gap;
    write_summary(cfg, j);

    const bool ok = rep.symmetric && rep.identity_zero && rep.triangle && routes_agree;
    if (!ok) throw CertificationError("selfcheck: at least one invariant failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for an energy-dependent Sturm-Liouville pencil"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* forward = app.add_subcommand("forward", "eigenvalue sweep");
    CLI::App* nodes = app.add_subcommand("nodes", "interior zeros per level");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "potential from nodal data");
    CLI::App* recover_h = app.add_subcommand("recover-h", "left boundary constant recovery");
    CLI::App* stability = app.add_subcommand("stability", "nodal distance vs potential gap");
    CLI::App* high_order = app.add_subcommand("high-order", "derivative reconstruction sweep");
    CLI::App* selfcheck = app.add_subcommand("selfcheck", "internal consistency checks");
    for (CLI::App* cmd : {forward, nodes, reconstruct, recover_h, stability, high_order,
                          selfcheck})
        add_common(cmd, &args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (forward->parsed()) return cmd_forward(args);
        if (nodes->parsed()) return cmd_nodes(args);
        if (reconstruct->parsed()) return cmd_reconstruct(args);
        if (recover_h->parsed()) return cmd_recover_h(args);
        if (stability->parsed()) return cmd_stability(args);
        if (high_order->parsed()) return cmd_high_order(args);
        if (selfcheck->parsed()) return cmd_selfcheck(args);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
