#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "grushin/errors.hpp"

namespace grushin {

namespace detail {
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double fa, double fm,
                               double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    // accept on tolerance or when delta is at rounding level for this panel
    double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                   (std::abs(left) + std::abs(right) + std::abs(whole));
    if (std::abs(delta) <= std::max(15.0 * tol, noise))
        return left + right + delta / 15.0;
    if (depth <= 0) {
        if (std::abs(delta) > std::max(64.0 * tol, 4.0 * noise))
            throw QuadratureFailure("adaptive quadrature did not converge");
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson on [a,b]; tol is an absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_depth = 40) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol,
                                    max_depth);
}

}  // namespace grushin
