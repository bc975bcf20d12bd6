#include <benchmark/benchmark.h>

#include "pencil/metrics.hpp"
#include "pencil/phase_solver.hpp"
#include "pencil/reconstruction.hpp"
#include "pencil/volterra.hpp"

using namespace pencil;

namespace {

PencilProblem smooth() {
    PencilProblem prob;
    prob.q = RealFunction::sine(3, 1.0);
    prob.p = RealFunction::sine(1, 0.2);
    return prob;
}

void BM_integrate_phase(benchmark::State& state) {
    PencilProblem prob = smooth();
    const double lambda = static_cast<double>(state.range(0));
    for (auto _ : state) {
        PhaseTrace tr = integrate_phase(prob, lambda);
        benchmark::DoNotOptimize(tr.back().theta);
    }
}
BENCHMARK(BM_integrate_phase)->Arg(8)->Arg(32)->Arg(128);

void BM_find_eigenvalue(benchmark::State& state) {
    PencilProblem prob = smooth();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        EigenResult r = find_eigenvalue(prob, n);
        benchmark::DoNotOptimize(r.lambda);
    }
}
BENCHMARK(BM_find_eigenvalue)->Arg(8)->Arg(32)->Arg(128);

void BM_find_nodes(benchmark::State& state) {
    PencilProblem prob = smooth();
    const int n = static_cast<int>(state.range(0));
    const double lambda = find_eigenvalue(prob, n).lambda;
    for (auto _ : state) {
        auto xs = find_nodes(prob, lambda);
        benchmark::DoNotOptimize(xs.data());
    }
}
BENCHMARK(BM_find_nodes)->Arg(16)->Arg(64);

void BM_reconstruct(benchmark::State& state) {
    PencilProblem prob = smooth();
    const int n = static_cast<int>(state.range(0));
    const double lambda = find_eigenvalue(prob, n).lambda;
    const auto xs = find_nodes(prob, lambda);
    for (auto _ : state) {
        ReconstructionResult rec =
            reconstruct_q(xs, lambda, n, prob.p, ReconMode::corrected, 512);
        benchmark::DoNotOptimize(rec.values.data());
    }
}
BENCHMARK(BM_reconstruct)->Arg(16)->Arg(64);

void BM_volterra(benchmark::State& state) {
    PencilProblem prob = smooth();
    const double lambda = static_cast<double>(state.range(0));
    for (auto _ : state) {
        SolutionTrace tr = solve_volterra(prob, lambda, SolutionKind::phi);
        benchmark::DoNotOptimize(tr.values.data());
    }
}
BENCHMARK(BM_volterra)->Arg(5)->Arg(20);

void BM_nodal_distance(benchmark::State& state) {
    NodalSet a = NodalSet::trivial_case1(128);
    NodalSet b = NodalSet::trivial_case1(128);
    RealFunction pa = RealFunction::sine(1, 0.2);
    RealFunction pb = RealFunction::sine(1, 0.25);
    for (auto _ : state) {
        double s = s_n(a, b, 128, pa, pb);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_nodal_distance);

}  // namespace

BENCHMARK_MAIN();
