#include "pencil/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "pencil/quadrature.hpp"

namespace pencil {

namespace {

constexpr double kPi = std::numbers::pi;

double integral_0_pi(const std::function<double(double)>& f) {
    return integrate(f, 0.0, kPi, QuadratureOptions{64, 16});
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    if (v.size() % 2 == 1) return v[m];
    return 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

NodalAsymptotics compute_c0_c1(const PencilProblem& prob) {
    NodalAsymptotics asym;
    asym.bc = prob.bc;
    const double int_p = integral_0_pi([&](double x) { return prob.p.eval(x); });
    const double int_qp2 = integral_0_pi([&](double x) {
        const double px = prob.p.eval(x);
        return prob.q.eval(x) + px * px;
    });
    asym.c0 = int_p / kPi;
    asym.c1 = (prob.h + prob.H + 0.5 * int_qp2) / kPi;
    asym.c1_second = (prob.H + 0.5 * int_qp2) / kPi;
    return asym;
}

double lambda_asymptotic(int n, const NodalAsymptotics& asym) {
    if (n < 1) throw std::invalid_argument("lambda_asymptotic: n must be >= 1");
    if (asym.bc == BoundaryCase::RobinInit) {
        return n + asym.c0 + asym.c1 / n;
    }
    const double m = n - 0.5;
    return m + asym.c0 + asym.c1_second / m;
}

AsymptoticNodes nodes_asymptotic(const PencilProblem& prob, double lambda_n, int n,
                                 HShiftVariant variant) {
    if (n < 1) throw std::invalid_argument("nodes_asymptotic: n must be >= 1");
    if (!(lambda_n > 0.0)) throw std::invalid_argument("nodes_asymptotic: lambda must be positive");

    const bool robin = prob.bc == BoundaryCase::RobinInit;
    const int count = robin ? n : n - 1;
    AsymptoticNodes out;
    if (count <= 0) return out;

    const double lam = lambda_n;
    double hterm = 0.0;
    if (robin) {
        hterm = variant == HShiftVariant::calibrated ? std::atan(prob.h / lam) / lam
                                                     : -prob.h / (2.0 * lam * lam);
    }

    std::vector<double> base(count);
    for (int j = 1; j <= count; ++j) {
        const double mult = robin ? (j - 0.5) : double(j);
        base[j - 1] = mult * kPi / lam + hterm;
    }

    const auto g = [&](double t) { return prob.q.eval(t) + 2.0 * lam * prob.p.eval(t); };
    const double osc_sign = robin ? 1.0 : -1.0;

    // Cumulative kernel integral at each tentative node, built from per-gap
    // segments so cost stays linear in the node count.
    const auto kernel_integral_at = [&](const std::vector<double>& xs) {
        std::vector<double> acc(xs.size());
        double run = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double lo = prev;
            const double hi = xs[i];
            if (hi > lo) {
                run += integrate(g, lo, hi, QuadratureOptions{2, 16});
                run += osc_sign * integrate_osc(g, 2.0 * lam, OscPhase::cosine, lo, hi);
            }
            acc[i] = run;
            prev = hi;
        }
        return acc;
    };

    std::vector<double> limits = base;
    for (int pass = 0; pass < 2; ++pass) {
        const std::vector<double> integrals = kernel_integral_at(limits);
        std::vector<double> next(count);
        for (int i = 0; i < count; ++i) {
            next[i] = base[i] + integrals[i] / (2.0 * lam * lam);
        }
        limits = std::move(next);
    }

    out.nodes = limits;
    out.lengths.resize(count > 1 ? count - 1 : 0);
    for (int i = 0; i + 1 < count; ++i) out.lengths[i] = out.nodes[i + 1] - out.nodes[i];
    return out;
}

ClassifyOutcome classify_case(const NodalSet& set, ClassifyOptions opts) {
    if (opts.prefix < 1 || opts.window < 1) {
        throw std::invalid_argument("classify_case: window and prefix must be positive");
    }
    std::vector<double> s1;  // score against the half-offset pattern
    std::vector<double> s2;  // score against the integer-offset pattern
    for (int n : set.levels()) {
        const std::vector<double>& xs = set.nodes(n);
        const int len = static_cast<int>(xs.size());
        if (len < 2) continue;
        // Endpoint-based rate: both patterns predict the same span, so the
        // estimate is pattern-neutral and absorbs the smooth spectral drift.
        const double rate = (len - 1) * kPi / (xs[len - 1] - xs[0]);
        double r1 = 0.0;
        double r2 = 0.0;
        const int kmax = std::min(opts.prefix, len);
        for (int k = 1; k <= kmax; ++k) {
            r1 = std::max(r1, std::abs(xs[k - 1] - (k - 0.5) * kPi / rate));
            r2 = std::max(r2, std::abs(xs[k - 1] - k * kPi / rate));
        }
        s1.push_back(double(n) * n * r1);
        s2.push_back(double(n) * n * r2);
    }
    if (s1.size() < 5) {
        throw std::invalid_argument("classify_case: need at least 5 levels with 2+ nodes");
    }

    const std::size_t w = std::min<std::size_t>(opts.window, s1.size());
    const std::vector<double> t1(s1.end() - w, s1.end());
    const std::vector<double> t2(s2.end() - w, s2.end());
    const double med1 = median_of(t1);
    const double med2 = median_of(t2);
    const double max1 = *std::max_element(t1.begin(), t1.end());
    const double max2 = *std::max_element(t2.begin(), t2.end());
    constexpr double kFloor = 1e-9;

    const bool bounded1 = max1 <= opts.bound_factor * std::max(med1, kFloor);
    const bool bounded2 = max2 <= opts.bound_factor * std::max(med2, kFloor);
    if (bounded1 && med1 <= opts.dominance_ratio * std::max(med2, kFloor)) {
        return ClassifyOutcome::CaseI;
    }
    if (bounded2 && med2 <= opts.dominance_ratio * std::max(med1, kFloor)) {
        return ClassifyOutcome::CaseII;
    }
    return ClassifyOutcome::Indeterminate;
}

}  // namespace pencil
