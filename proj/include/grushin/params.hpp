#pragma once

#include <cmath>

#include "grushin/errors.hpp"

namespace grushin {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Model parameters of the weighted Grushin half-plane/cylinder:
/// metric dr^2 + r^{-4*alpha} dv^2, measure c_m * r^{(n-1)/2 - 2*alpha} dr dv,
/// v-period `period` on the quotient cylinder.
struct GrushinParams {
    double alpha = 0.5;
    int n = 9;
    double c_m = 1.0;
    double period = kTwoPi;
    // Curvature-dimension flag: n >= max(4a+3, 16a^2+8a+1). Operations never
    // refuse an invalid n; they just carry the flag.
    bool rcd_valid = false;

    // Exponent of the measure density r^{(n-1)/2 - 2a}.
    double measure_exponent() const { return 0.5 * (n - 1) - 2.0 * alpha; }
    // Exponent (n+1)/2 - 2a appearing in all box/ball volume formulas.
    double volume_exponent() const { return 0.5 * (n + 1) - 2.0 * alpha; }
    // Hausdorff dimension of the singular axis.
    double axis_dimension() const { return 1.0 + 2.0 * alpha; }
    // Scaling power of the measure under the dilation F_lambda.
    double dilation_measure_power() const { return 0.5 * (n + 3); }
};

inline bool rcd_dimension_ok(double alpha, int n) {
    double bound = std::max(4.0 * alpha + 3.0,
                            16.0 * alpha * alpha + 8.0 * alpha + 1.0);
    return static_cast<double>(n) >= bound - 1e-12;
}

inline GrushinParams validate_params(double alpha, int n, double c_m = 1.0,
                                     double period = kTwoPi) {
    if (!(alpha > 0.0)) throw NonPositiveAlpha("alpha must be positive");
    if (n < 1) throw InvalidParameter("n must be a positive integer");
    if (!(c_m > 0.0)) throw InvalidParameter("c_m must be positive");
    if (!(period > 0.0)) throw InvalidParameter("period must be positive");
    if (n + 1 <= 4.0 * alpha)
        throw MeasureExponentNonIntegrable(
            "n+1 <= 4*alpha: measure density is not integrable at the axis");
    GrushinParams p;
    p.alpha = alpha;
    p.n = n;
    p.c_m = c_m;
    p.period = period;
    p.rcd_valid = rcd_dimension_ok(alpha, n);
    return p;
}

}  // namespace grushin
