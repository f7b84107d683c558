#pragma once

#include <cmath>
#include <utility>

#include "grushin/params.hpp"

namespace grushin {

/// Coordinates on the half-plane: r >= 0 radial, v translational.
/// r = 0 is the singular axis.
struct Point {
    double r = 0.0;
    double v = 0.0;
};

/// Diagonal metric coefficients (g_rr, g_vv) = (1, r^{-4*alpha}).
inline std::pair<double, double> metric_coefficients(const GrushinParams& p,
                                                     const Point& pt) {
    if (pt.r <= 0.0)
        throw SingularAxis("metric degenerates on the axis r=0");
    return {1.0, std::pow(pt.r, -4.0 * p.alpha)};
}

/// Measure density c_m * r^{(n-1)/2 - 2*alpha}; zero at the axis when the
/// exponent is positive.
inline double measure_density(const GrushinParams& p, double r) {
    double e = p.measure_exponent();
    if (r == 0.0) return e > 0.0 ? 0.0 : (e == 0.0 ? p.c_m : HUGE_VAL);
    return p.c_m * std::pow(r, e);
}

/// Metric dilation F_lambda: (r, v) -> (lambda r, lambda^{1+2a} v).
/// Scales all distances by lambda exactly.
inline Point dilate(const GrushinParams& p, const Point& pt, double lambda) {
    if (!(lambda > 0.0)) throw NonPositiveScale("dilation scale must be > 0");
    return Point{lambda * pt.r, std::pow(lambda, 1.0 + 2.0 * p.alpha) * pt.v};
}

// Dilation-adapted chart. With y = r^{1+2a}/(1+2a), x = v the metric becomes
// conformal, ((1+2a)y)^{-2c} (dx^2 + dy^2) with c = 2a/(1+2a), and F_lambda
// acts as the Euclidean scaling by lambda^{1+2a}. All distance-field work
// happens in this chart.
struct Chart {
    double alpha;
    double conf_exp;  // c = 2a/(1+2a)

    explicit Chart(double a) : alpha(a), conf_exp(2.0 * a / (1.0 + 2.0 * a)) {}

    double y_of_r(double r) const {
        double k = 1.0 + 2.0 * alpha;
        return std::pow(r, k) / k;
    }
    double r_of_y(double y) const {
        double k = 1.0 + 2.0 * alpha;
        return std::pow(k * y, 1.0 / k);
    }
    // Conformal factor ((1+2a)y)^{-c}; equals r^{-2a}.
    double factor(double y) const {
        return std::pow((1.0 + 2.0 * alpha) * y, -conf_exp);
    }
    // Exact line integral of the conformal factor along a straight chord
    // from y1 to y2 (per unit Euclidean chord length). Power-law
    // antiderivative, valid down to y=0.
    double chord_factor(double y1, double y2) const {
        if (y1 > y2) std::swap(y1, y2);
        if (y2 - y1 < 1e-14 * (y2 + 1e-300)) return factor(0.5 * (y1 + y2));
        double k = 1.0 + 2.0 * alpha;
        double e = 1.0 - conf_exp;  // > 0
        double num = std::pow(y2, e) - std::pow(y1, e);
        return std::pow(k, -conf_exp) * num / (e * (y2 - y1));
    }
};

/// Length of the explicit comparison path (out 2s in r, across in v, back):
/// 2s + (r+s)^{-2a} * L, minimized over s >= 0. Upper-bounds d((r,v),(r,v+L)).
inline double comparison_path_bound(double alpha, double r, double L) {
    auto cost = [&](double s) {
        return 2.0 * s + std::pow(r + s, -2.0 * alpha) * L;
    };
    // Golden-section on [0, s_hi]; the cost is convex in s.
    double lo = 0.0, hi = std::pow(L, 1.0 / (1.0 + 2.0 * alpha)) + L + 1.0;
    const double gr = 0.61803398874989484820;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = cost(a), fb = cost(b);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + hi); ++it) {
        if (fa < fb) {
            hi = b; b = a; fb = fa;
            a = hi - gr * (hi - lo); fa = cost(a);
        } else {
            lo = a; a = b; fa = fb;
            b = lo + gr * (hi - lo); fb = cost(b);
        }
    }
    return std::min(cost(lo), std::min(cost(0.5 * (lo + hi)), cost(hi)));
}

/// Axis translation-distance upper bound constant: the comparison path with
/// s = L^{1/(1+2a)} gives d((0,v),(0,v+L)) <= C_up * L^{1/(1+2a)}.
inline double axis_constant_upper(double alpha) {
    double g = 1.0 / (1.0 + 2.0 * alpha);
    return 2.0 * std::pow(alpha, g) + std::pow(alpha, -2.0 * alpha * g);
}

/// Explicit positive lower-bound constant C(r) = min(C1, C2 r^{-2a}) with
/// C1 = 3^{-1/(2a)}, C2 = (1 + 2^{2a}/C1^{1+2a})^{-2a}.
inline double translation_lower_constant(double alpha, double r) {
    double C1 = std::pow(3.0, -1.0 / (2.0 * alpha));
    double C2 = std::pow(1.0 + std::pow(2.0, 2.0 * alpha) /
                                   std::pow(C1, 1.0 + 2.0 * alpha),
                         -2.0 * alpha);
    if (r <= 0.0) return C1;
    return std::min(C1, C2 * std::pow(r, -2.0 * alpha));
}

}  // namespace grushin
