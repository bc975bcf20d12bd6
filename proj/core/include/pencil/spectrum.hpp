#pragma once

#include <vector>

#include "pencil/pencil_problem.hpp"
#include "pencil/phase_solver.hpp"

namespace pencil {

struct SpectrumEntry {
    int n = 0;
    double lambda = 0.0;
    double residual = 0.0;
    int node_count = 0;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;  // indices 1..n_max in order

    int n_max() const { return static_cast<int>(entries.size()); }
    const SpectrumEntry& at(int n) const;
    double lambda(int n) const { return at(n).lambda; }
};

/// Eigenvalues for n = 1..n_max.  Indices are independent shooting problems,
/// so they fan out over `workers` threads; results are validated to be
/// strictly increasing before returning.
Spectrum compute_spectrum(const PencilProblem& prob, int n_max, int workers = 1);

/// Left-normalized solution values at the given abscissas:
/// RobinInit y(0) = 1, y'(0) = h; DirichletInit y(0) = 0, y'(0) = 1.
std::vector<double> left_solution_values(const PencilProblem& prob, double lambda,
                                         const std::vector<double>& xs);

/// integral_0^pi [2 p(x) - lambda_m - lambda_n] y_m y_n dx, which vanishes for
/// distinct eigenvalue indices.  Composite Simpson on a uniform grid.
double orthogonality_defect(const PencilProblem& prob, double lambda_m, double lambda_n,
                            int grid_size = 2048);

}  // namespace pencil
