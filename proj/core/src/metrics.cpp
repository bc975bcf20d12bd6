#include "pencil/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pencil/quadrature.hpp"

namespace pencil {

namespace {

constexpr double kPi = std::numbers::pi;

// n-1 interval lengths at level n; a set following the zero-count convention
// K = n-1 gets a virtual zero at pi.
std::vector<double> padded_lengths(const NodalSet& set, int n) {
    std::vector<double> xs = set.nodes(n);
    const int K = static_cast<int>(xs.size());
    if (K == n - 1) {
        xs.push_back(kPi);
    } else if (K != n) {
        throw std::invalid_argument("padded_lengths: zero count matches neither convention");
    }
    std::vector<double> len;
    len.reserve(xs.size() > 0 ? xs.size() - 1 : 0);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) len.push_back(xs[k + 1] - xs[k]);
    return len;
}

int convention_of(const NodalSet& set, int n) {
    const int K = static_cast<int>(set.nodes(n).size());
    if (K == n) return 1;
    if (K == n - 1) return 2;
    throw std::invalid_argument("dsigma: zero count matches neither convention");
}

}  // namespace

double s_n(const NodalSet& a, const NodalSet& b, int n, const RealFunction& pa,
           const RealFunction& pb, MetricWeights w) {
    if (n < 2) throw std::invalid_argument("s_n: level must be >= 2");
    const std::vector<double> la = padded_lengths(a, n);
    const std::vector<double> lb = padded_lengths(b, n);
    if (la.size() != lb.size()) throw std::invalid_argument("s_n: length counts differ");
    double sum = 0.0;
    for (std::size_t k = 0; k < la.size(); ++k) sum += std::abs(la[k] - lb[k]);
    const double pdist = l1_distance(pa, pb, 0, 0.0, kPi);
    const double nn = static_cast<double>(n);
    if (w == MetricWeights::paper) return nn * nn * kPi * sum + nn * pdist;
    return nn * nn * sum + (nn / kPi) * pdist;
}

double s_mn(const NodalSet& a, const NodalSet& b, int n, int m, double lambda_a,
            double lambda_b, const RealFunction& pa, const RealFunction& pb, MetricWeights w) {
    if (m < 1) throw std::invalid_argument("s_mn: m must be >= 1");
    const std::vector<double> la = padded_lengths(a, n);
    const std::vector<double> lb = padded_lengths(b, n);
    if (static_cast<int>(la.size()) <= m) {
        throw std::invalid_argument("s_mn: not enough lengths for this order");
    }
    const std::vector<double> da = difference_quotient(la, m);
    const std::vector<double> db = difference_quotient(lb, m);
    double sum = 0.0;
    for (std::size_t k = 0; k < da.size(); ++k) sum += std::abs(da[k] - db[k]);
    const double pdist = l1_distance(pa, pb, m, 0.0, kPi);
    const double lam = 0.5 * (lambda_a + lambda_b);
    const double nn = static_cast<double>(n);
    if (w == MetricWeights::paper) return std::sqrt(lam) * sum + nn * pdist;
    return lam * lam * sum + (nn / kPi) * pdist;
}

LimsupEstimate limsup_estimate(const std::vector<int>& n_values,
                               const std::vector<double>& s_values, int window) {
    if (n_values.size() != s_values.size() || s_values.empty()) {
        throw std::invalid_argument("limsup_estimate: mismatched or empty inputs");
    }
    const std::size_t w = std::min<std::size_t>(std::max(window, 1), s_values.size());
    LimsupEstimate est;
    est.value = *std::max_element(s_values.end() - w, s_values.end());

    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    int used = 0;
    for (std::size_t i = s_values.size() - w; i < s_values.size(); ++i) {
        if (s_values[i] <= 0.0) continue;
        const double x = std::log(static_cast<double>(n_values[i]));
        const double y = std::log(s_values[i]);
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
        ++used;
    }
    const double det = used * sxx - sx * sx;
    est.slope = (used >= 2 && std::abs(det) > 1e-30) ? (used * sxy - sx * sy) / det : 0.0;
    return est;
}

DsigmaResult dsigma(const NodalSet& a, const NodalSet& b, const std::vector<int>& levels,
                    const RealFunction& pa, const RealFunction& pb, MetricWeights w,
                    int window) {
    if (levels.empty()) throw std::invalid_argument("dsigma: no levels given");
    DsigmaResult res;
    std::vector<int> ns = levels;
    std::sort(ns.begin(), ns.end());
    for (int n : ns) {
        if (convention_of(a, n) != convention_of(b, n)) {
            res.case_mismatch = true;
            res.d0 = std::numeric_limits<double>::infinity();
            res.dsigma = 1.0;
            return res;
        }
        res.levels.push_back(n);
        res.s_values.push_back(s_n(a, b, n, pa, pb, w));
    }
    res.d0 = limsup_estimate(res.levels, res.s_values, window).value;
    res.dsigma = res.d0 / (1.0 + res.d0);
    return res;
}

SelfcheckReport pseudometric_selfcheck(const NodalSet& a, const NodalSet& b, const NodalSet& c,
                                       const std::vector<int>& levels, const RealFunction& pa,
                                       const RealFunction& pb, const RealFunction& pc,
                                       MetricWeights w) {
    SelfcheckReport rep;
    rep.symmetric = true;
    rep.identity_zero = true;
    rep.triangle = true;
    rep.worst_triangle_margin = std::numeric_limits<double>::infinity();
    for (int n : levels) {
        const double ab = s_n(a, b, n, pa, pb, w);
        const double ba = s_n(b, a, n, pb, pa, w);
        const double bc = s_n(b, c, n, pb, pc, w);
        const double ac = s_n(a, c, n, pa, pc, w);
        const double aa = s_n(a, a, n, pa, pa, w);
        if (std::abs(ab - ba) > 1e-12 * (1.0 + std::abs(ab))) rep.symmetric = false;
        if (std::abs(aa) > 1e-12) rep.identity_zero = false;
        const double margin = ab + bc - ac;
        rep.worst_triangle_margin = std::min(rep.worst_triangle_margin, margin);
        if (margin < -1e-12 * (1.0 + ac)) rep.triangle = false;
    }
    return rep;
}

}  // namespace pencil
