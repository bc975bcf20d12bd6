#pragma once

#include <string>
#include <vector>

#include "pencil/cache.hpp"
#include "pencil/metrics.hpp"
#include "pencil/pencil_problem.hpp"
#include "pencil/reconstruction.hpp"

namespace pencil {

struct ConvergenceRow {
    int n = 0;
    double lambda = 0.0;
    double l1_error = 0.0;
    double scaled_error = 0.0;  // n * l1_error
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double c_estimate = 0.0;  // max of scaled_error
    double slope = 0.0;       // log-log slope of l1_error vs n
};

/// Reconstruct the problem's own q at each level and compare with the truth.
ConvergenceStudy run_convergence_study(const PencilProblem& prob, const std::vector<int>& levels,
                                       ReconMode mode, int grid_size,
                                       const std::string& cache_dir, int workers = 1);

struct StabilityStudy {
    std::vector<int> levels;
    std::vector<double> s_values;
    double d0 = 0.0;
    double dsigma_value = 0.0;
    double slope = 0.0;
    double half_l1_dq = 0.0;  // (1/2) ||q - q_bar||_1, the predicted limit
    double ratio = 0.0;       // d0 / half_l1_dq
    bool case_mismatch = false;
};

/// Nodal distance between two problems across levels, against the L1 gap of
/// their potentials.
StabilityStudy run_stability_study(const PencilProblem& a, const PencilProblem& b,
                                   const std::vector<int>& levels, MetricWeights weights,
                                   int window, const std::string& cache_dir, int workers = 1);

struct HighOrderRow {
    int n = 0;
    int m = 0;
    double lambda = 0.0;
    double sup_error = 0.0;  // over grid points inside the estimator's range
    double l1_error = 0.0;
};

struct HighOrderStudy {
    std::vector<HighOrderRow> rows;
};

HighOrderStudy run_highorder_study(const PencilProblem& prob, const std::vector<int>& m_values,
                                   const std::vector<int>& levels, ReconMode mode, int grid_size,
                                   const std::string& cache_dir, int workers = 1);

struct HStudy {
    HRecovery recovery;
    double true_h = 0.0;
    double abs_error = 0.0;
};

/// Recover the problem's own left constant from its solver nodes, using the
/// true q as the kernel estimate.
HStudy run_h_study(const PencilProblem& prob, int j, const std::vector<int>& levels, HMode mode,
                   const std::string& cache_dir, int workers = 1);

}  // namespace pencil
