#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "pencil/real_function.hpp"

namespace pencil {

/// Left-end condition selecting which solution family the spectrum uses.
/// RobinInit:     y'(0) = h y(0)   (normalized y(0) = 1)
/// DirichletInit: y(0) = 0, y'(0) = 1
/// The right end always imposes y'(pi) + H y(pi) = 0.
enum class BoundaryCase { RobinInit, DirichletInit };

struct PencilProblem {
    RealFunction p;  // first-order (energy) coefficient
    RealFunction q;  // potential
    double h = 0.0;  // left Robin constant, RobinInit only
    double H = 0.0;  // right Robin constant
    BoundaryCase bc = BoundaryCase::RobinInit;
    int max_derivative_order = 0;  // highest m the experiment will request

    bool trivial() const { return p.is_zero() && q.is_zero() && h == 0.0 && H == 0.0; }

    /// Canonical text form; also the digest preimage.
    std::string canonical_text() const {
        std::string s;
        s += p.to_text("p");
        s += q.to_text("q");
        char buf[96];
        std::snprintf(buf, sizeof buf, "h = %.17g\nH = %.17g\n", h, H);
        s += buf;
        s += (bc == BoundaryCase::RobinInit) ? "case = robin\n" : "case = dirichlet\n";
        s += "N = " + std::to_string(max_derivative_order) + "\n";
        return s;
    }

    /// FNV-1a content hash of the canonical text, as fixed-width hex.
    std::string digest() const {
        const std::string text = canonical_text();
        std::uint64_t hash = 1469598103934665603ull;
        for (unsigned char c : text) {
            hash ^= c;
            hash *= 1099511628211ull;
        }
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
        return buf;
    }
};

}  // namespace pencil
