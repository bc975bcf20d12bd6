#pragma once

#include <vector>

#include "pencil/pencil_problem.hpp"

namespace pencil {

/// phi carries the RobinInit left data (y(0) = 1, y'(0) = h), psi the
/// DirichletInit data (y(0) = 0, y'(0) = 1).
enum class SolutionKind { phi, psi };

struct SolutionTrace {
    SolutionKind kind = SolutionKind::phi;
    double lambda = 0.0;
    std::vector<double> xs;      // uniform grid on [0, pi]
    std::vector<double> values;  // solution on xs
    int sweeps = 0;              // Picard iterations performed
    double last_change = 0.0;    // final sup-norm update
};

struct VolterraOptions {
    int grid_size = 0;       // 0 picks an even count scaled with lambda
    double tol = 1e-10;      // sup-norm fixed-point tolerance
    int max_sweeps = 200;
};

/// Picard iteration on
///   y(x) = forcing(x) + (1/lambda) int_0^x sin(lambda (x - t)) [q + 2 lambda p] y(t) dt
/// with forcing cos(lambda x) + (h/lambda) sin(lambda x) for phi and
/// sin(lambda x)/lambda for psi.  The displacement kernel splits into two
/// running integrals, so each sweep costs O(grid).
SolutionTrace solve_volterra(const PencilProblem& prob, double lambda, SolutionKind kind,
                             const VolterraOptions& opts = {});

/// Same solution computed through the phase representation, for cross-checks
/// against the integral route.
std::vector<double> phase_route_values(const PencilProblem& prob, double lambda,
                                       SolutionKind kind, const std::vector<double>& xs);

}  // namespace pencil
