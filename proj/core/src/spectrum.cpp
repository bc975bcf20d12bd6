#include "pencil/spectrum.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace pencil {

namespace {
constexpr double kPi = std::numbers::pi;
}

const SpectrumEntry& Spectrum::at(int n) const {
    if (n < 1 || n > n_max()) throw std::out_of_range("Spectrum::at: index outside 1..n_max");
    return entries[static_cast<std::size_t>(n) - 1];
}

Spectrum compute_spectrum(const PencilProblem& prob, int n_max, int workers) {
    if (n_max < 1) throw std::invalid_argument("compute_spectrum: n_max must be >= 1");
    Spectrum spec;
    spec.entries.resize(n_max);

    const auto solve_one = [&](int n) {
        const EigenResult r = find_eigenvalue(prob, n);
        spec.entries[n - 1] = {n, r.lambda, r.residual, r.node_count};
    };

    if (workers <= 1) {
        for (int n = 1; n <= n_max; ++n) solve_one(n);
    } else {
        std::atomic<int> next{1};
        std::exception_ptr first_error;
        std::mutex err_mu;
        std::vector<std::thread> pool;
        const int count = std::min(workers, n_max);
        pool.reserve(count);
        for (int t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const int n = next.fetch_add(1);
                    if (n > n_max) return;
                    try {
                        solve_one(n);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mu);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (int n = 2; n <= n_max; ++n) {
        if (!(spec.entries[n - 1].lambda > spec.entries[n - 2].lambda)) {
            throw CertificationError("compute_spectrum: eigenvalues not strictly increasing");
        }
    }
    return spec;
}

std::vector<double> left_solution_values(const PencilProblem& prob, double lambda,
                                         const std::vector<double>& xs) {
    PhaseOptions opts;
    for (double x : xs) {
        if (x > 0.0 && x <= kPi) opts.stops.push_back(x);
    }
    const PhaseTrace trace = integrate_phase(prob, lambda, opts);
    const double theta0 = trace.front().theta;
    // y = r sin(theta) scaled so the left boundary data matches the stated
    // normalization; sin(theta0) > 0 except for extreme h/lambda ratios.
    double scale;
    if (prob.bc == BoundaryCase::DirichletInit) {
        scale = 1.0 / lambda;
    } else {
        const double s0 = std::sin(theta0);
        if (std::abs(s0) < 1e-14) {
            throw std::invalid_argument("left_solution_values: degenerate boundary phase");
        }
        scale = 1.0 / s0;
    }
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const PhaseSample s = trace.at(x);
        out.push_back(std::exp(s.log_r) * std::sin(s.theta) * scale);
    }
    return out;
}

double orthogonality_defect(const PencilProblem& prob, double lambda_m, double lambda_n,
                            int grid_size) {
    if (grid_size < 2 || grid_size % 2 != 0) {
        throw std::invalid_argument("orthogonality_defect: grid_size must be even and >= 2");
    }
    std::vector<double> xs(grid_size + 1);
    for (int i = 0; i <= grid_size; ++i) xs[i] = kPi * i / grid_size;
    const std::vector<double> ym = left_solution_values(prob, lambda_m, xs);
    const std::vector<double> yn = left_solution_values(prob, lambda_n, xs);

    std::vector<double> f(grid_size + 1);
    for (int i = 0; i <= grid_size; ++i) {
        f[i] = (2.0 * prob.p.eval(xs[i]) - lambda_m - lambda_n) * ym[i] * yn[i];
    }
    const double h = kPi / grid_size;
    double acc = f[0] + f[grid_size];
    for (int i = 1; i < grid_size; i += 2) acc += 4.0 * f[i];
    for (int i = 2; i < grid_size; i += 2) acc += 2.0 * f[i];
    return acc * h / 3.0;
}

}  // namespace pencil
