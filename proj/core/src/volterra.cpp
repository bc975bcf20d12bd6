#include "pencil/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pencil/phase_solver.hpp"
#include "pencil/spectrum.hpp"

namespace pencil {

namespace {

constexpr double kPi = std::numbers::pi;

// Running integral of samples on a uniform grid: two interleaved composite
// Simpson chains (even indices from C[0], odd from C[1]), each fourth order.
void cumulative_simpson(const std::vector<double>& f, double h, std::vector<double>* out) {
    const std::size_t n = f.size();
    std::vector<double>& c = *out;
    c.assign(n, 0.0);
    if (n < 3) {
        if (n == 2) c[1] = 0.5 * h * (f[0] + f[1]);
        return;
    }
    c[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
    for (std::size_t i = 2; i < n; ++i) {
        c[i] = c[i - 2] + h * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
    }
}

}  // namespace

SolutionTrace solve_volterra(const PencilProblem& prob, double lambda, SolutionKind kind,
                             const VolterraOptions& opts) {
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_volterra: lambda must be positive");

    int n = opts.grid_size;
    if (n <= 0) {
        // Simpson error scales like (lambda h)^4, so the grid grows linearly
        // with the frequency.
        n = std::max(4096, static_cast<int>(std::ceil(410.0 * std::max(lambda, 1.0))));
    }
    if (n % 2 != 0) ++n;

    SolutionTrace trace;
    trace.kind = kind;
    trace.lambda = lambda;
    trace.xs.resize(n + 1);
    const double h = kPi / n;
    for (int i = 0; i <= n; ++i) trace.xs[i] = kPi * i / n;

    std::vector<double> forcing(n + 1);
    std::vector<double> g(n + 1);
    std::vector<double> cs(n + 1), sn(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = trace.xs[i];
        cs[i] = std::cos(lambda * x);
        sn[i] = std::sin(lambda * x);
        g[i] = prob.q.eval(x) + 2.0 * lambda * prob.p.eval(x);
        forcing[i] = kind == SolutionKind::phi ? cs[i] + (prob.h / lambda) * sn[i]
                                               : sn[i] / lambda;
    }

    std::vector<double> y = forcing;
    std::vector<double> fc(n + 1), fs(n + 1), ic(n + 1), is(n + 1), next(n + 1);
    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        for (int i = 0; i <= n; ++i) {
            const double gy = g[i] * y[i];
            fc[i] = cs[i] * gy;
            fs[i] = sn[i] * gy;
        }
        cumulative_simpson(fc, h, &ic);
        cumulative_simpson(fs, h, &is);
        double change = 0.0;
        for (int i = 0; i <= n; ++i) {
            next[i] = forcing[i] + (sn[i] * ic[i] - cs[i] * is[i]) / lambda;
            change = std::max(change, std::abs(next[i] - y[i]));
        }
        y.swap(next);
        trace.sweeps = sweep;
        trace.last_change = change;
        if (change <= opts.tol) {
            trace.values = std::move(y);
            return trace;
        }
    }
    throw NonconvergenceError("solve_volterra: Picard iteration did not settle");
}

std::vector<double> phase_route_values(const PencilProblem& prob, double lambda,
                                       SolutionKind kind, const std::vector<double>& xs) {
    PencilProblem copy = prob;
    copy.bc = kind == SolutionKind::phi ? BoundaryCase::RobinInit : BoundaryCase::DirichletInit;
    return left_solution_values(copy, lambda, xs);
}

}  // namespace pencil
