#pragma once

#include <vector>

#include "pencil/nodal_set.hpp"
#include "pencil/real_function.hpp"

namespace pencil {

/// `paper` keeps the published weights (n^2 pi on the length sum, n on the
/// p distance, n^(1/2) in the high-order sum).  `corrected` rescales so the
/// level-n statistic converges to half the L1 distance of the potentials:
/// n^2 on lengths, n/pi on p, lambda_n^2 in the high-order sum.
enum class MetricWeights { paper, corrected };

/// Level-n nodal distance between two sets.  A level with n zeros contributes
/// its n-1 interval lengths; a level with n-1 zeros is padded with a virtual
/// zero at pi so both conventions yield n-1 lengths.
double s_n(const NodalSet& a, const NodalSet& b, int n, const RealFunction& pa,
           const RealFunction& pb, MetricWeights w = MetricWeights::corrected);

/// High-order variant on m-th difference quotients of the lengths; lambda_n
/// enters the weight, so it must be supplied per set.
double s_mn(const NodalSet& a, const NodalSet& b, int n, int m, double lambda_a,
            double lambda_b, const RealFunction& pa, const RealFunction& pb,
            MetricWeights w = MetricWeights::corrected);

struct LimsupEstimate {
    double value = 0.0;  // max of the trailing window
    double slope = 0.0;  // log-log least-squares slope over the window
};

/// Trailing-window estimate of limsup s_n together with its growth exponent;
/// n_values and s_values are parallel arrays.
LimsupEstimate limsup_estimate(const std::vector<int>& n_values,
                               const std::vector<double>& s_values, int window = 5);

struct DsigmaResult {
    double d0 = 0.0;
    double dsigma = 0.0;        // d0 / (1 + d0), or 1 on case mismatch
    bool case_mismatch = false;
    std::vector<int> levels;
    std::vector<double> s_values;
};

/// Pseudometric between nodal sequences: d0 = limsup-window of s_n, mapped to
/// [0, 1] by t / (1 + t).  Sets whose zero counts follow different boundary
/// conventions are maximally distant by definition.
DsigmaResult dsigma(const NodalSet& a, const NodalSet& b, const std::vector<int>& levels,
                    const RealFunction& pa, const RealFunction& pb,
                    MetricWeights w = MetricWeights::corrected, int window = 5);

struct SelfcheckReport {
    bool symmetric = false;
    bool identity_zero = false;
    bool triangle = false;
    double worst_triangle_margin = 0.0;  // min over levels of s(ab)+s(bc)-s(ac)
};

/// Pseudometric axioms on a concrete triple, checked level by level.
SelfcheckReport pseudometric_selfcheck(const NodalSet& a, const NodalSet& b, const NodalSet& c,
                                       const std::vector<int>& levels, const RealFunction& pa,
                                       const RealFunction& pb, const RealFunction& pc,
                                       MetricWeights w = MetricWeights::corrected);

}  // namespace pencil
