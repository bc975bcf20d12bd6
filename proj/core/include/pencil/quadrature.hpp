#pragma once

#include <functional>

#include "pencil/real_function.hpp"

namespace pencil {

struct QuadratureOptions {
    int panels = 32;           // composite Gauss-Legendre panels
    int points_per_panel = 16; // supported: 8 or 16
};

/// Composite Gauss-Legendre quadrature of a smooth integrand.
/// Absolute error well below 1e-10 for the coefficient-function family at the
/// default resolution.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts = {});

enum class OscPhase { cosine, sine };

/// integral of f(t) * cos(omega t) (or sin) with panel count scaled to the
/// oscillation: at least 10 panels per period of the carrier, i.e. >= 40
/// samples per period.  omega = 0 falls back to plain integrate().
double integrate_osc(const std::function<double(double)>& f, double omega,
                     OscPhase phase, double a, double b);

/// L1 distance of m-th derivatives on [a, b].  Sign changes of the difference
/// are located by a 4096-point scan plus bisection and the integral is split
/// there, so kinks of |.| never sit inside a quadrature panel.
double l1_distance(const RealFunction& f, const RealFunction& g, int m,
                   double a, double b);

/// Same splitting machinery for a generic difference; used by studies to
/// compare reconstructed samples against a reference.
double l1_distance_fn(const std::function<double(double)>& diff, double a, double b);

}  // namespace pencil
