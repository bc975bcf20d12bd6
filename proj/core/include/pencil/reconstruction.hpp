#pragma once

#include <optional>
#include <vector>

#include "pencil/nodal_set.hpp"
#include "pencil/real_function.hpp"
#include "pencil/spectrum.hpp"

namespace pencil {

/// `paper` evaluates the published pointwise formula unchanged; `corrected`
/// replaces the pointwise p by its nodal-interval average and removes the
/// 3 p^2 bias so the constant-coefficient limit is exact.
enum class ReconMode { paper, corrected };

struct ReconstructionResult {
    int n_used = 0;
    double lambda_used = 0.0;
    ReconMode mode = ReconMode::corrected;
    std::vector<double> grid;
    std::vector<double> values;
    int clamped_points = 0;                   // grid points outside [valid_lo, valid_hi]
    double valid_lo = 0.0;                    // abscissa range the estimator covers
    double valid_hi = 0.0;
    std::optional<double> l1_error_vs_truth;  // filled when a reference q is supplied
};

/// Potential from one nodal level:
///   corrected: (2 lambda / pi) (lambda^2 l_j - pi lambda - pi pbar_j) - 3 pbar_j^2
///   paper:      2 lambda (lambda^2 l_j - lambda pi - p(x))
/// where l_j is the nodal interval containing x and pbar_j the interval
/// average of p.
ReconstructionResult reconstruct_q(const std::vector<double>& nodes, double lambda, int n,
                                   const RealFunction& p, ReconMode mode, int grid_size = 512,
                                   const RealFunction* truth = nullptr);

/// m-th derivative of the potential from m-th difference quotients of the
/// nodal lengths.  `paper` is (2 lambda^3 / pi) delta^m l verbatim;
/// `corrected` removes the p-driven part of the lengths before differencing
/// (divided differences on the interval midpoints) and subtracts the
/// remaining 3 (p^2)^(m) term.
ReconstructionResult reconstruct_q_deriv(const std::vector<double>& nodes, double lambda, int n,
                                         const RealFunction& p, int m, ReconMode mode,
                                         int grid_size = 512,
                                         const RealFunction* truth = nullptr);

/// printed: fixed kappa = 2 as published.  calibrated: kernel-corrected E
/// with kappa measured on a closed-form reference problem.
enum class HMode { printed, calibrated };

struct HRecovery {
    HMode mode = HMode::calibrated;
    int j = 1;                     // node index tracked across levels
    std::vector<int> levels;       // n values actually used
    std::vector<double> e_values;  // E_j^n per level (corrected in calibrated mode)
    double e_extrapolated = 0.0;   // 1/n -> 0 limit of the E sequence
    double kappa_hat = 0.0;
    double h_hat = 0.0;
};

/// Boundary constant from the drift of one node:
///   E_j^n = 2 lambda pi (j - 1/2 - lambda X_j / pi).
/// Calibrated mode adds int_0^{X_j} [1 + cos 2 lambda t] (q_est + 2 lambda p) dt
/// and measures kappa on a p = q = 0 reference with known h, then h_hat =
/// E_hat / kappa_hat.  The E sequence is extrapolated by a least-squares line
/// in 1/n over the last three levels.
HRecovery recover_h(const NodalSet& set, const Spectrum& spectrum, int j,
                    const std::vector<int>& levels, const RealFunction& p,
                    const RealFunction& q_est, HMode mode = HMode::calibrated);

struct LocalAverages {
    std::vector<double> midpoints;  // nodal interval midpoints
    std::vector<double> raw;        // lambda * int_{X_j}^{X_{j+1}} q
    std::vector<double> scaled;     // raw / pi, tending to q(midpoint)
};

LocalAverages local_average_check(const std::vector<double>& nodes, double lambda,
                                  const RealFunction& q);

}  // namespace pencil
