#pragma once

#include <cmath>

#include "grushin/params.hpp"

namespace grushin {

/// Warping profile of the perturbed finite cylinder [0,3] x S^1 with metric
/// dr^2 + h(r)^2 dv^2:
///   h(r) = r^{-2a} on (0,1],  h = 1/2 on [2,3],
/// bridged on [1,2] by exp of a cubic Hermite in log h (C^1 at both ends).
/// The bridge is decreasing, and convex for the supported alpha range;
/// check_shape() verifies both by sampling.
struct WarpProfile {
    double alpha = 0.5;
    double r_break1 = 1.0;
    double r_break2 = 2.0;
    double r_end = 3.0;

    double value(double r) const {
        if (r <= r_break1) return std::pow(r, -2.0 * alpha);
        if (r >= r_break2) return 0.5;
        double t = (r - r_break1) / (r_break2 - r_break1);
        // log h: H(0)=0, H(1)=-log2, H'(0)=-2a, H'(1)=0
        double h10 = t * (1.0 - t) * (1.0 - t);          // Hermite basis
        double h01 = t * t * (3.0 - 2.0 * t);
        double L = -2.0 * alpha * h10 - std::log(2.0) * h01;
        return std::exp(L);
    }

    double derivative(double r) const {  // sampled-difference, for checks
        double h = 1e-6;
        return (value(r + h) - value(r - h)) / (2.0 * h);
    }

    /// Measure density h^{1 - (n-1)/(4a)} (times c_m); on (0,1] this equals
    /// r^{(n-1)/2 - 2a} exactly.
    double density(const GrushinParams& p, double r) const {
        double q = 1.0 - (p.n - 1) / (4.0 * p.alpha);
        return p.c_m * std::pow(value(r), q);
    }

    /// Sampled monotonicity/convexity check of the bridge.
    bool check_shape(int samples = 512) const {
        double prev_val = value(r_break1);
        double prev_slope = 0.0;
        bool first = true;
        for (int i = 1; i <= samples; ++i) {
            double r = r_break1 + (r_break2 - r_break1) * i / samples;
            double val = value(r);
            if (val > prev_val + 1e-12) return false;  // must decrease
            double slope = (val - prev_val) * samples;
            if (!first && slope < prev_slope - 1e-9) return false;  // convex
            prev_slope = slope;
            prev_val = val;
            first = false;
        }
        return true;
    }
};

}  // namespace grushin
