#pragma once

#include <stdexcept>
#include <vector>

#include "pencil/pencil_problem.hpp"

namespace pencil {

/// Root searches that exhaust their iteration or step budget.
class NonconvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A candidate eigenvalue whose oscillation count disagrees with its index.
class CertificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One accepted integration point of the phase representation
///   y = r sin(theta),  y' = lambda r cos(theta),
/// which obeys
///   theta'  = lambda - (2 p + q / lambda) sin^2(theta)
///   (log r)' = (p + q / (2 lambda)) sin(2 theta).
/// theta is monotone through multiples of pi (theta' = lambda there), so node
/// and oscillation counts read off the trace directly.
struct PhaseSample {
    double x = 0.0;
    double theta = 0.0;
    double log_r = 0.0;
};

struct PhaseTrace {
    double lambda = 0.0;
    RealFunction w;                    // 2p + q/lambda, kept for re-integration in at()
    std::vector<PhaseSample> samples;  // x strictly increasing, starts at 0, ends at pi
    double max_theta_step = 0.0;       // largest accepted theta increment

    const PhaseSample& front() const { return samples.front(); }
    const PhaseSample& back() const { return samples.back(); }
    /// Number of interior sign changes of y: multiples of pi crossed by theta
    /// strictly inside (0, pi).
    int node_count() const;
    /// Phase and amplitude at x by re-integrating from the nearest sample on
    /// the left; exact at sample points.
    PhaseSample at(double x) const;
};

/// theta(0): arccot(h / lambda) in (0, pi) for RobinInit, 0 for DirichletInit.
double boundary_theta0(const PencilProblem& prob, double lambda);

/// theta(pi) required by y'(pi) + H y(pi) = 0 at oscillation index n:
/// arccot(-H / lambda) + n pi (RobinInit) or + (n-1) pi (DirichletInit).
double right_target(const PencilProblem& prob, double lambda, int n);

struct PhaseOptions {
    double budget = 1e-9;      // total accumulated local phase error
    double theta_cap = 0.7853981633974483;  // pi/4 ceiling per accepted step
    double min_step = 1e-13;
    std::vector<double> stops;  // interior x values the grid must hit exactly
};

PhaseTrace integrate_phase(const PencilProblem& prob, double lambda,
                           const PhaseOptions& opts = {});

struct EigenResult {
    int n = 0;
    double lambda = 0.0;
    double residual = 0.0;    // |theta(pi) - target| at the accepted root
    int node_count = 0;
};

struct EigenOptions {
    double seed = 0.0;          // 0 => use the asymptotic expansion
    double residual_tol = 1e-11;
    double bracket_half = 0.45;
    double bracket_max = 3.0;
    int max_iterations = 200;
};

/// Shooting eigenvalue for index n >= 1: Brent on theta(pi; lambda) - target
/// with an asymptotically seeded bracket.  The root is certified by its node
/// count (n for RobinInit, n-1 for DirichletInit).
EigenResult find_eigenvalue(const PencilProblem& prob, int n, const EigenOptions& opts = {});

/// Interior zeros of y at a fixed lambda, refined by safeguarded Newton on
/// theta(x) - k pi to |theta - k pi| <= 1e-12.
std::vector<double> find_nodes(const PencilProblem& prob, double lambda,
                               const PhaseOptions& opts = {});

}  // namespace pencil
