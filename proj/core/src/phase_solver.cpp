#include "pencil/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pencil/asymptotics.hpp"

namespace pencil {

namespace {

constexpr double kPi = std::numbers::pi;

// Dormand-Prince 5(4) tableau, FSAL form.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = kB1 - 5179.0 / 57600.0, kE3 = kB3 - 7571.0 / 16695.0,
                 kE4 = kB4 - 393.0 / 640.0, kE5 = kB5 + 92097.0 / 339200.0,
                 kE6 = kB6 - 187.0 / 2100.0, kE7 = -1.0 / 40.0;

// Compensated accumulator; the phase and abscissa each absorb tens of
// thousands of small increments and the nodal-length diagnostics amplify any
// drift by lambda^3.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void set(double v) {
        sum = v;
        c = 0.0;
    }
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct Deriv {
    double th;
    double lr;
};

// theta' = lambda - w sin^2(theta), (log r)' = (w/2) sin(2 theta),
// with w = 2p + q/lambda folded into one coefficient list per solve.
inline Deriv rhs(const RealFunction& w, double lambda, double x, double theta) {
    const double wx = w.eval(x);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return {lambda - wx * s * s, wx * s * c};
}

struct StepResult {
    double d_theta;
    double d_logr;
    double err;
    Deriv k7;
};

StepResult dp5_step(const RealFunction& w, double lambda, double x, double theta,
                    double h, const Deriv& k1) {
    const Deriv k2 = rhs(w, lambda, x + h * kA21, theta + h * kA21 * k1.th);
    const Deriv k3 = rhs(w, lambda, x + h * 0.3, theta + h * (kA31 * k1.th + kA32 * k2.th));
    const Deriv k4 =
        rhs(w, lambda, x + h * 0.8, theta + h * (kA41 * k1.th + kA42 * k2.th + kA43 * k3.th));
    const Deriv k5 = rhs(w, lambda, x + h * (8.0 / 9.0),
                         theta + h * (kA51 * k1.th + kA52 * k2.th + kA53 * k3.th + kA54 * k4.th));
    const Deriv k6 = rhs(
        w, lambda, x + h,
        theta + h * (kA61 * k1.th + kA62 * k2.th + kA63 * k3.th + kA64 * k4.th + kA65 * k5.th));
    const double dth = h * (kB1 * k1.th + kB3 * k3.th + kB4 * k4.th + kB5 * k5.th + kB6 * k6.th);
    const double dlr = h * (kB1 * k1.lr + kB3 * k3.lr + kB4 * k4.lr + kB5 * k5.lr + kB6 * k6.lr);
    const Deriv k7 = rhs(w, lambda, x + h, theta + dth);
    const double eth =
        h * (kE1 * k1.th + kE3 * k3.th + kE4 * k4.th + kE5 * k5.th + kE6 * k6.th + kE7 * k7.th);
    const double elr =
        h * (kE1 * k1.lr + kE3 * k3.lr + kE4 * k4.lr + kE5 * k5.lr + kE6 * k6.lr + kE7 * k7.lr);
    return {dth, dlr, std::max(std::abs(eth), std::abs(elr)), k7};
}

double sup_bound(const RealFunction& f) {
    double m = 0.0;
    for (int i = 0; i <= 256; ++i) {
        m = std::max(m, std::abs(f.eval(kPi * i / 256.0)));
    }
    return 1.2 * m + 1e-6;
}

// Classical RK4 from a trace sample to a nearby x; the gap never exceeds one
// accepted step, so eight substeps keep the local error far below the
// integrator budget.
void rk4_local(const RealFunction& w, double lambda, double x0, double theta0, double logr0,
               double x1, double* theta_out, double* logr_out) {
    const int nsub = 8;
    const double h = (x1 - x0) / nsub;
    double x = x0;
    double th = theta0;
    double lr = logr0;
    for (int i = 0; i < nsub; ++i) {
        const Deriv a = rhs(w, lambda, x, th);
        const Deriv b = rhs(w, lambda, x + 0.5 * h, th + 0.5 * h * a.th);
        const Deriv c = rhs(w, lambda, x + 0.5 * h, th + 0.5 * h * b.th);
        const Deriv d = rhs(w, lambda, x + h, th + h * c.th);
        th += h / 6.0 * (a.th + 2.0 * b.th + 2.0 * c.th + d.th);
        lr += h / 6.0 * (a.lr + 2.0 * b.lr + 2.0 * c.lr + d.lr);
        x = x0 + (i + 1) * h;
    }
    *theta_out = th;
    *logr_out = lr;
}

int crossing_lo(double theta0) { return static_cast<int>(std::floor(theta0 / kPi)) + 1; }

int crossing_hi(double theta_end) {
    int k = static_cast<int>(std::floor(theta_end / kPi));
    if (k * kPi >= theta_end) k -= 1;
    return k;
}

}  // namespace

int PhaseTrace::node_count() const {
    const int lo = crossing_lo(samples.front().theta);
    const int hi = crossing_hi(samples.back().theta);
    return hi >= lo ? hi - lo + 1 : 0;
}

PhaseSample PhaseTrace::at(double x) const {
    if (x < -1e-12 || x > kPi + 1e-12) throw std::domain_error("PhaseTrace::at: x outside [0, pi]");
    x = std::clamp(x, samples.front().x, samples.back().x);
    auto it = std::upper_bound(samples.begin(), samples.end(), x,
                               [](double v, const PhaseSample& s) { return v < s.x; });
    const PhaseSample& base = *(it - 1);
    if (x == base.x) return base;
    PhaseSample out;
    out.x = x;
    rk4_local(w, lambda, base.x, base.theta, base.log_r, x, &out.theta, &out.log_r);
    return out;
}

double boundary_theta0(const PencilProblem& prob, double lambda) {
    if (prob.bc == BoundaryCase::DirichletInit) return 0.0;
    return kPi / 2.0 - std::atan(prob.h / lambda);
}

double right_target(const PencilProblem& prob, double lambda, int n) {
    const double base = kPi / 2.0 + std::atan(prob.H / lambda);
    const int turns = prob.bc == BoundaryCase::RobinInit ? n : n - 1;
    return base + turns * kPi;
}

PhaseTrace integrate_phase(const PencilProblem& prob, double lambda, const PhaseOptions& opts) {
    if (!(lambda > 0.0)) throw std::invalid_argument("integrate_phase: lambda must be positive");

    PhaseTrace trace;
    trace.lambda = lambda;
    trace.w = 2.0 * prob.p + (1.0 / lambda) * prob.q;

    std::vector<double> stops = opts.stops;
    for (double s : stops) {
        if (!(s > 0.0) || s > kPi + 1e-12) {
            throw std::invalid_argument("integrate_phase: stops must lie in (0, pi]");
        }
    }
    stops.push_back(kPi);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                stops.end());

    const double wb = sup_bound(trace.w);
    const double cap = opts.theta_cap / (lambda + wb);

    Kahan x;
    Kahan theta;
    Kahan logr;
    x.set(0.0);
    theta.set(boundary_theta0(prob, lambda));
    logr.set(0.0);
    trace.samples.push_back({0.0, theta.sum, 0.0});

    Deriv k1 = rhs(trace.w, lambda, 0.0, theta.sum);
    double h = std::min(cap, 1e-3);
    std::size_t next_stop = 0;

    while (x.sum < kPi - 1e-15) {
        while (next_stop < stops.size() && stops[next_stop] <= x.sum + 1e-15) ++next_stop;
        const double limit = stops[std::min(next_stop, stops.size() - 1)];
        const double room = limit - x.sum;
        double h_try = std::min({h, cap, room});
        bool lands_on_stop = h_try >= room - 1e-15;
        if (lands_on_stop) h_try = room;
        if (h_try < opts.min_step) {
            throw NonconvergenceError("integrate_phase: step size underflow");
        }

        const StepResult st = dp5_step(trace.w, lambda, x.sum, theta.sum, h_try, k1);
        const double tol = opts.budget * h_try / kPi;
        if (st.err <= tol) {
            theta.add(st.d_theta);
            logr.add(st.d_logr);
            if (lands_on_stop) {
                x.set(limit);
            } else {
                x.add(h_try);
            }
            trace.samples.push_back({x.sum, theta.sum, logr.sum});
            trace.max_theta_step = std::max(trace.max_theta_step, std::abs(st.d_theta));
            k1 = st.k7;
            const double grow = st.err > 0.0
                                    ? std::min(5.0, 0.9 * std::pow(tol / st.err, 0.2))
                                    : 5.0;
            h = std::min(cap, h_try * std::max(grow, 1.0));
        } else {
            h = h_try * std::max(0.2, 0.9 * std::pow(tol / st.err, 0.2));
            if (h < opts.min_step) {
                throw NonconvergenceError("integrate_phase: local error target unreachable");
            }
        }
    }
    return trace;
}

EigenResult find_eigenvalue(const PencilProblem& prob, int n, const EigenOptions& opts) {
    if (n < 1) throw std::invalid_argument("find_eigenvalue: n must be >= 1");

    PhaseOptions popts;
    const auto miss = [&](double lam) {
        return integrate_phase(prob, lam, popts).back().theta - right_target(prob, lam, n);
    };

    double seed = opts.seed;
    if (!(seed > 0.0)) {
        seed = lambda_asymptotic(n, compute_c0_c1(prob));
    }
    constexpr double kLambdaMin = 0.05;

    double half = opts.bracket_half;
    double lo = std::max(kLambdaMin, seed - half);
    double hi = seed + half;
    double f_lo = miss(lo);
    double f_hi = miss(hi);
    // theta(pi; lambda) - target grows roughly like pi * lambda, so widen
    // toward the signed side only.
    while (f_lo * f_hi > 0.0) {
        if (half >= opts.bracket_max) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "find_eigenvalue: no sign change near n=%d (seed %.6f)", n, seed);
            throw NonconvergenceError(buf);
        }
        half = std::min(opts.bracket_max, half + opts.bracket_half);
        if (f_lo > 0.0) {
            const double new_lo = std::max(kLambdaMin, seed - half);
            if (new_lo == lo && f_lo > 0.0 && f_hi > 0.0) {
                throw NonconvergenceError("find_eigenvalue: bracket pinned at lambda floor");
            }
            lo = new_lo;
            f_lo = miss(lo);
        } else {
            hi = seed + half;
            f_hi = miss(hi);
        }
    }

    // Brent-Dekker on the phase miss.
    double a = lo, b = hi, fa = f_lo, fb = f_hi;
    double c = a, fc = fa;
    double d = b - a, e = d;
    int iter = 0;
    while (true) {
        if (++iter > opts.max_iterations) {
            throw NonconvergenceError("find_eigenvalue: iteration budget exhausted");
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 1e-13 * std::max(1.0, std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) <= opts.residual_tol || std::abs(xm) <= tol1) break;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, qd;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                qd = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                qd = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) qd = -qd;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * qd - std::abs(tol1 * qd), std::abs(e * qd))) {
                e = d;
                d = p / qd;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = miss(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }

    EigenResult res;
    res.n = n;
    res.lambda = b;
    res.residual = std::abs(fb);
    if (res.residual > 1e-10) {
        throw NonconvergenceError("find_eigenvalue: residual above 1e-10");
    }
    const PhaseTrace trace = integrate_phase(prob, res.lambda, popts);
    res.node_count = trace.node_count();
    const int expected = prob.bc == BoundaryCase::RobinInit ? n : n - 1;
    if (res.node_count != expected) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "find_eigenvalue: index %d certified %d interior zeros, expected %d", n,
                      res.node_count, expected);
        throw CertificationError(buf);
    }
    return res;
}

std::vector<double> find_nodes(const PencilProblem& prob, double lambda,
                               const PhaseOptions& opts) {
    const PhaseTrace trace = integrate_phase(prob, lambda, opts);
    const auto& s = trace.samples;
    const int k_lo = crossing_lo(s.front().theta);
    const int k_hi = crossing_hi(s.back().theta);
    std::vector<double> nodes;
    if (k_hi < k_lo) return nodes;
    nodes.reserve(k_hi - k_lo + 1);

    std::size_t i = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double target = k * kPi;
        while (i + 1 < s.size() && s[i + 1].theta < target) ++i;
        if (s[i].theta == target) {
            nodes.push_back(s[i].x);
            continue;
        }
        // Bracket [lo, hi] with theta(lo) < target <= theta(hi); the phase
        // crosses each multiple of pi exactly once, upward.
        double xlo = s[i].x;
        double xhi = s[i + 1].x;
        const double base_x = s[i].x;
        const double base_th = s[i].theta;
        const double base_lr = s[i].log_r;
        const auto theta_at = [&](double x) {
            double th, lr;
            rk4_local(trace.w, lambda, base_x, base_th, base_lr, x, &th, &lr);
            return th;
        };
        double x = xlo + (target - base_th) / std::max(rhs(trace.w, lambda, xlo, base_th).th, 1e-8);
        x = std::clamp(x, xlo, xhi);
        double diff = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double th = theta_at(x);
            diff = th - target;
            if (th >= target) {
                xhi = std::min(xhi, x);
            } else {
                xlo = std::max(xlo, x);
            }
            if (std::abs(diff) <= 1e-13) break;
            const double slope = rhs(trace.w, lambda, x, th).th;
            double next = slope > 1e-8 ? x - diff / slope : 0.5 * (xlo + xhi);
            if (!(next > xlo) || !(next < xhi)) next = 0.5 * (xlo + xhi);
            if (next == x) break;
            x = next;
        }
        if (std::abs(diff) > 1e-12) {
            throw NonconvergenceError("find_nodes: zero refinement stalled");
        }
        nodes.push_back(x);
        if (nodes.size() > 1 && nodes[nodes.size() - 2] >= x) {
            throw NonconvergenceError("find_nodes: zeros out of order");
        }
    }
    return nodes;
}

}  // namespace pencil
