#pragma once

#include <cstdlib>
#include <string>

#include "pencil/pencil_problem.hpp"

namespace testsupport {

/// Shared on-disk cache so every test binary reuses the same spectra and
/// node sweeps.  PENCIL_CACHE_DIR is set by the test harness; a bare default
/// keeps manual runs working.
inline std::string cache_dir() {
    const char* env = std::getenv("PENCIL_CACHE_DIR");
    return env != nullptr ? env : "pencil_test_cache";
}

/// q = sin 3x, p = 0.2 sin x, h = H = 0: the workhorse smooth problem.
inline pencil::PencilProblem smooth_a() {
    pencil::PencilProblem prob;
    prob.q = pencil::RealFunction::sine(3, 1.0);
    prob.p = pencil::RealFunction::sine(1, 0.2);
    return prob;
}

/// smooth_a with q shifted by 0.2 cos x (same p).
inline pencil::PencilProblem smooth_b() {
    pencil::PencilProblem prob = smooth_a();
    prob.q.add_cos(1, 0.2);
    return prob;
}

/// smooth_a with q shifted by 0.1 cos x (same p).
inline pencil::PencilProblem smooth_c() {
    pencil::PencilProblem prob = smooth_a();
    prob.q.add_cos(1, 0.1);
    return prob;
}

/// p0 = 0.3, q0 = 1.2: closed-form eigenvalues p0 + sqrt(p0^2 + q0 + n^2).
inline pencil::PencilProblem constant_case() {
    pencil::PencilProblem prob;
    prob.p = pencil::RealFunction::constant(0.3);
    prob.q = pencil::RealFunction::constant(1.2);
    return prob;
}

}  // namespace testsupport
