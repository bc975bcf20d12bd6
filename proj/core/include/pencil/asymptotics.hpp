#pragma once

#include <vector>

#include "pencil/nodal_set.hpp"
#include "pencil/pencil_problem.hpp"

namespace pencil {

/// Leading eigenvalue-expansion constants:
///   c0 = (1/pi) integral p
///   c1 = (1/pi) [h + H + 1/2 integral (q + p^2)]
/// c1_second drops h (no Robin constant on the left in the DirichletInit
/// family); it only seeds root brackets.
struct NodalAsymptotics {
    double c0 = 0.0;
    double c1 = 0.0;
    double c1_second = 0.0;
    BoundaryCase bc = BoundaryCase::RobinInit;
};

NodalAsymptotics compute_c0_c1(const PencilProblem& prob);

/// RobinInit: n + c0 + c1/n.  DirichletInit: (n - 1/2) + c0 + c1_second/(n - 1/2).
double lambda_asymptotic(int n, const NodalAsymptotics& asym);

/// h-shift variant in the RobinInit node expansion.  `printed` keeps the
/// -h/(2 lambda^2) term as published; `calibrated` uses the exact free-problem
/// shift arctan(h/lambda)/lambda, which the p=q=0 oracle singles out.
enum class HShiftVariant { printed, calibrated };

struct AsymptoticNodes {
    std::vector<double> nodes;    // j = 1..count
    std::vector<double> lengths;  // adjacent differences
};

/// Evaluates the nodal expansions with the unknown upper limit replaced by the
/// leading term and one fixed-point refinement pass.  RobinInit kernel is
/// [1 + cos 2 lambda t], DirichletInit [1 - cos 2 lambda t], both applied to
/// q + 2 lambda p.
AsymptoticNodes nodes_asymptotic(const PencilProblem& prob, double lambda_n, int n,
                                 HShiftVariant variant = HShiftVariant::calibrated);

enum class ClassifyOutcome { CaseI, CaseII, Indeterminate };

struct ClassifyOptions {
    int window = 5;               // trailing levels entering the statistics
    int prefix = 3;               // leading nodes compared per level
    double dominance_ratio = 0.25;  // winner's median must be this much smaller
    double bound_factor = 10.0;     // trailing max <= factor * trailing median
};

/// Distinguishes the half-offset pattern X_k ~ (k-1/2) pi / rate from the
/// integer-offset pattern X_k ~ k pi / rate.  The per-level rate is estimated
/// from the endpoints, so a smooth O(1/n) drift common to both patterns does
/// not mask the half-spacing offset that actually separates the cases.
/// Requires >= 5 levels with >= 2 nodes each.
ClassifyOutcome classify_case(const NodalSet& set, ClassifyOptions opts = {});

}  // namespace pencil
