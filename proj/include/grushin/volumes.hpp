#pragma once

#include <optional>

#include "grushin/distance_field.hpp"
#include "grushin/util.hpp"

namespace grushin {

enum class VolumeMethod { QuadratureOverDistanceField, ClosedForm };

struct VolumeResult {
    double value = 0.0;
    VolumeMethod method = VolumeMethod::ClosedForm;
    double error_estimate = 0.0;
};

struct BallQuadratureOptions {
    int nr = 121;
    int nv = 121;
    int stencil = 32;  // boundary curvature dominates; the wide stencil pays
    bool refine = true;  // one refinement for the error estimate
};

/// Weighted measure of the geodesic ball B_s(center): quadrature of the
/// measure density over the sublevel set {d < s} of a local distance field,
/// with marching-squares area fractions on the boundary cells.
VolumeResult ball_volume(const GrushinParams& params, const Point& center,
                         double s,
                         const BallQuadratureOptions& opts = {});

/// Closed-form measure of the dilated unit box
/// {(r0-s)_+ < r < r0+s} x {|v| < s^{1+2a}}:
/// c_m * 2 s^{1+2a} / ((n+1)/2 - 2a) * ((r0+s)^{(n+1)/2-2a} - (r0-s)_+^{...}).
VolumeResult box_volume(const GrushinParams& params, double r0, double s);

/// f(tau^{-1}) = m(C_1(x)) / m(B_1(x)) at x = (tau_inv, 0); the axis case is
/// evaluated directly at tau_inv = 0.
double f_ratio(const GrushinParams& params, double tau_inv,
               const BallQuadratureOptions& opts = {});

/// G(tau) = ((1+tau)^{(n+1)/2-2a} - (1-tau)_+^{(n+1)/2-2a})^{-1} f(tau^{-1}).
double G_of_tau(const GrushinParams& params, double tau,
                const BallQuadratureOptions& opts = {});

struct RatioTable {
    std::vector<double> tau;
    std::vector<double> f;
    std::vector<double> G;

    // log-tau interpolation with constant extension on both sides
    double f_at(double tau_q) const;
    double G_at(double tau_q) const;
};

RatioTable build_ratio_table(const GrushinParams& params, double tau_min,
                             double tau_max, int count, int workers = 1,
                             const BallQuadratureOptions& opts = {});

/// Hausdorff measure of a v-interval of length `v_length` on the singular
/// axis, where the induced metric is the snowflake d = C |dv|^{1/k} with
/// k = 1+2a: exact value c_k (C/2)^k L. The normalization c_k defaults to
/// the unit-ball volume in (possibly fractional) dimension k.
double hausdorff_measure_singular(const GrushinParams& params, double k,
                                  double C_boundary, double v_length,
                                  std::optional<double> c_k = {});

}  // namespace grushin
