#include "pencil/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pencil/quadrature.hpp"

namespace pencil {

namespace {

constexpr double kPi = std::numbers::pi;

int max_level(const std::vector<int>& levels) {
    if (levels.empty()) throw std::invalid_argument("study: empty level list");
    return *std::max_element(levels.begin(), levels.end());
}

}  // namespace

ConvergenceStudy run_convergence_study(const PencilProblem& prob, const std::vector<int>& levels,
                                       ReconMode mode, int grid_size,
                                       const std::string& cache_dir, int workers) {
    Spectrum spec;
    const NodalSet set = cached_nodal_set(prob, max_level(levels), cache_dir, workers, &spec);

    ConvergenceStudy study;
    std::vector<int> ns;
    std::vector<double> errs;
    for (int n : levels) {
        const std::vector<double>& xs = set.nodes(n);
        const ReconstructionResult rec =
            reconstruct_q(xs, spec.lambda(n), n, prob.p, mode, grid_size, &prob.q);
        ConvergenceRow row;
        row.n = n;
        row.lambda = spec.lambda(n);
        row.l1_error = *rec.l1_error_vs_truth;
        row.scaled_error = n * row.l1_error;
        study.rows.push_back(row);
        study.c_estimate = std::max(study.c_estimate, row.scaled_error);
        ns.push_back(n);
        errs.push_back(row.l1_error);
    }
    study.slope = limsup_estimate(ns, errs, static_cast<int>(ns.size())).slope;
    return study;
}

StabilityStudy run_stability_study(const PencilProblem& a, const PencilProblem& b,
                                   const std::vector<int>& levels, MetricWeights weights,
                                   int window, const std::string& cache_dir, int workers) {
    const int n_max = max_level(levels);
    const NodalSet set_a = cached_nodal_set(a, n_max, cache_dir, workers);
    const NodalSet set_b = cached_nodal_set(b, n_max, cache_dir, workers);

    StabilityStudy study;
    const DsigmaResult ds = dsigma(set_a, set_b, levels, a.p, b.p, weights, window);
    study.levels = ds.levels;
    study.s_values = ds.s_values;
    study.d0 = ds.d0;
    study.dsigma_value = ds.dsigma;
    study.case_mismatch = ds.case_mismatch;
    study.half_l1_dq = 0.5 * l1_distance(a.q, b.q, 0, 0.0, kPi);
    if (!ds.case_mismatch) {
        study.slope = limsup_estimate(ds.levels, ds.s_values, window).slope;
        if (study.half_l1_dq > 0.0) study.ratio = study.d0 / study.half_l1_dq;
    }
    return study;
}

HighOrderStudy run_highorder_study(const PencilProblem& prob, const std::vector<int>& m_values,
                                   const std::vector<int>& levels, ReconMode mode, int grid_size,
                                   const std::string& cache_dir, int workers) {
    Spectrum spec;
    const NodalSet set = cached_nodal_set(prob, max_level(levels), cache_dir, workers, &spec);

    HighOrderStudy study;
    for (int m : m_values) {
        const RealFunction truth = prob.q.derivative(m);
        for (int n : levels) {
            const std::vector<double>& xs = set.nodes(n);
            const ReconstructionResult rec = reconstruct_q_deriv(xs, spec.lambda(n), n, prob.p,
                                                                 m, mode, grid_size, &truth);
            HighOrderRow row;
            row.n = n;
            row.m = m;
            row.lambda = spec.lambda(n);
            row.l1_error = *rec.l1_error_vs_truth;
            for (std::size_t i = 0; i < rec.grid.size(); ++i) {
                const double x = rec.grid[i];
                if (x < rec.valid_lo || x > rec.valid_hi) continue;
                row.sup_error = std::max(row.sup_error,
                                         std::abs(rec.values[i] - truth.eval(x)));
            }
            study.rows.push_back(row);
        }
    }
    return study;
}

HStudy run_h_study(const PencilProblem& prob, int j, const std::vector<int>& levels, HMode mode,
                   const std::string& cache_dir, int workers) {
    Spectrum spec;
    const NodalSet set = cached_nodal_set(prob, max_level(levels), cache_dir, workers, &spec);

    HStudy study;
    study.recovery = recover_h(set, spec, j, levels, prob.p, prob.q, mode);
    study.true_h = prob.h;
    study.abs_error = std::abs(study.recovery.h_hat - prob.h);
    return study;
}

}  // namespace pencil
