#include "pencil/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pencil {

namespace {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Nodes/weights by Newton iteration on P_n; converges to machine precision in
// a handful of steps and avoids transcribing tables.
GaussRule make_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& rule(int points) {
    static const GaussRule g8 = make_rule(8);
    static const GaussRule g16 = make_rule(16);
    if (points == 8) return g8;
    if (points == 16) return g16;
    throw std::invalid_argument("quadrature: points_per_panel must be 8 or 16");
}

double panel_sum(const std::function<double(double)>& f, double a, double b,
                 const GaussRule& g) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i)
        s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts) {
    if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
    if (opts.panels < 1) throw std::invalid_argument("integrate: panels < 1");
    if (a == b) return 0.0;
    const GaussRule& g = rule(opts.points_per_panel);
    const double h = (b - a) / opts.panels;
    double s = 0.0;
    for (int p = 0; p < opts.panels; ++p)
        s += panel_sum(f, a + p * h, a + (p + 1) * h, g);
    return s;
}

double integrate_osc(const std::function<double(double)>& f, double omega,
                     OscPhase phase, double a, double b) {
    if (!(b >= a)) throw std::invalid_argument("integrate_osc: b < a");
    if (omega < 0.0) throw std::invalid_argument("integrate_osc: omega < 0");
    auto carrier = [&](double t) {
        return phase == OscPhase::cosine ? std::cos(omega * t) : std::sin(omega * t);
    };
    auto integrand = [&](double t) { return f(t) * carrier(t); };
    // >= 10 panels per carrier period; the 16-point panels give >= 40 samples
    // per period with a wide margin.
    const double periods = omega * (b - a) / (2.0 * std::numbers::pi);
    const int panels = static_cast<int>(std::ceil(std::max(1.0, periods) * 10.0));
    return integrate(integrand, a, b, {panels, 16});
}

namespace {

// Bisection for a sign change of d inside [lo, hi] where d(lo), d(hi) have
// opposite signs.
double bisect_root(const std::function<double(double)>& d, double lo, double hi,
                   double flo) {
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = d(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double l1_distance_fn(const std::function<double(double)>& diff, double a, double b) {
    if (!(b >= a)) throw std::invalid_argument("l1_distance: b < a");
    if (a == b) return 0.0;
    constexpr int kScan = 4096;
    std::vector<double> cuts{a};
    const double h = (b - a) / kScan;
    double prev = diff(a);
    for (int i = 1; i <= kScan; ++i) {
        const double x = (i == kScan) ? b : a + i * h;
        const double cur = diff(x);
        if (prev == 0.0 || (prev > 0) != (cur > 0)) {
            if (prev != 0.0 && cur != 0.0)
                cuts.push_back(bisect_root(diff, x - h, x, prev));
            else if (prev == 0.0 && i > 1)
                cuts.push_back(x - h);
        }
        prev = cur;
    }
    cuts.push_back(b);
    double total = 0.0;
    auto absdiff = [&](double x) { return std::abs(diff(x)); };
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        // smooth on each piece; panel count scaled to piece length
        const int panels = std::max(2, static_cast<int>(std::ceil(16.0 * (cuts[i + 1] - cuts[i]) / (b - a))));
        total += integrate(absdiff, cuts[i], cuts[i + 1], {panels, 16});
    }
    return total;
}

double l1_distance(const RealFunction& f, const RealFunction& g, int m,
                   double a, double b) {
    return l1_distance_fn([&](double x) { return f.eval(x, m) - g.eval(x, m); }, a, b);
}

}  // namespace pencil
