#include "grushin/volumes.hpp"

#include <algorithm>
#include <array>

#include "../src/kernels/kernels.hpp"

namespace grushin {

namespace {

// Area fraction of the unit cell where the bilinear interpolant of the
// corner values (v00,v10,v11,v01 counter-clockwise) is positive.
// Crossing points are placed by linear interpolation along edges; the
// saddle case is disambiguated by the corner average.
double positive_fraction(double v00, double v10, double v11, double v01) {
    std::array<double, 4> c = {v00, v10, v11, v01};
    std::array<std::array<double, 2>, 4> xy = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    int inside = 0;
    for (double v : c)
        if (v > 0) ++inside;
    if (inside == 4) return 1.0;
    if (inside == 0) return 0.0;

    auto polygon_area = [](const std::vector<std::array<double, 2>>& p) {
        double a = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            auto& u = p[i];
            auto& w = p[(i + 1) % p.size()];
            a += u[0] * w[1] - w[0] * u[1];
        }
        return 0.5 * std::abs(a);
    };

    bool saddle = (inside == 2) && (c[0] > 0) == (c[2] > 0);
    if (!saddle) {
        std::vector<std::array<double, 2>> poly;
        for (int i = 0; i < 4; ++i) {
            int j = (i + 1) % 4;
            if (c[i] > 0) poly.push_back(xy[i]);
            if ((c[i] > 0) != (c[j] > 0)) {
                double t = c[i] / (c[i] - c[j]);
                poly.push_back({xy[i][0] + t * (xy[j][0] - xy[i][0]),
                                xy[i][1] + t * (xy[j][1] - xy[i][1])});
            }
        }
        return polygon_area(poly);
    }
    // Saddle: two opposite corners positive. Each positive corner owns a
    // right triangle; when the center is positive the two triangles are
    // joined by the complement band instead.
    double center = 0.25 * (c[0] + c[1] + c[2] + c[3]);
    double corner_area = 0.0, negative_corner_area = 0.0;
    for (int i = 0; i < 4; ++i) {
        int prev = (i + 3) % 4, next = (i + 1) % 4;
        double tp = c[i] / (c[i] - c[prev]);
        double tn = c[i] / (c[i] - c[next]);
        if (c[i] > 0)
            corner_area += 0.5 * std::abs(tp) * std::abs(tn);
        else
            negative_corner_area += 0.5 * std::abs(tp) * std::abs(tn);
    }
    return center > 0 ? 1.0 - negative_corner_area : corner_area;
}

double ball_volume_pass(const GrushinParams& params, const Point& center,
                        double s, const GridSpec& spec, double* v_reach,
                        double* y_reach) {
    DistanceFieldOptions o;
    o.refine_check = false;
    DistanceField f = distance_field(params, center, spec, o);
    const TensorGrid& g = f.grid;
    if (v_reach) {
        *v_reach = 0.0;
        *y_reach = 0.0;
        for (std::size_t i = 0; i < g.ny(); ++i)
            for (std::size_t j = 0; j < g.nx(); ++j)
                if (f.at_node(i, j) < s) {
                    *v_reach = std::max(*v_reach,
                                        std::abs(g.x[j] - center.v));
                    *y_reach = std::max(*y_reach, g.y[i]);
                }
    }

    const std::size_t ny = g.ny(), nx = g.nx();
    std::vector<double> cell_maxd((ny - 1) * (nx - 1));
    std::vector<double> cell_mass((ny - 1) * (nx - 1));
    for (std::size_t i = 0; i + 1 < ny; ++i)
        for (std::size_t j = 0; j + 1 < nx; ++j) {
            double d00 = f.at_node(i, j), d01 = f.at_node(i, j + 1);
            double d10 = f.at_node(i + 1, j), d11 = f.at_node(i + 1, j + 1);
            cell_maxd[i * (nx - 1) + j] =
                std::max(std::max(d00, d01), std::max(d10, d11));
            cell_mass[i * (nx - 1) + j] =
                cell_measure(params, g.chart, g.y[i], g.y[i + 1], g.x[j],
                             g.x[j + 1]);
        }
    // interior cells in one masked reduction
    double total = kernels::sum_where_below(cell_maxd, cell_mass, s);
    // boundary cells get area fractions
    for (std::size_t i = 0; i + 1 < ny; ++i)
        for (std::size_t j = 0; j + 1 < nx; ++j) {
            if (cell_maxd[i * (nx - 1) + j] < s) continue;
            double d00 = f.at_node(i, j), d01 = f.at_node(i, j + 1);
            double d10 = f.at_node(i + 1, j), d11 = f.at_node(i + 1, j + 1);
            double mind = std::min(std::min(d00, d01), std::min(d10, d11));
            if (mind >= s) continue;
            double frac = positive_fraction(s - d00, s - d10, s - d11,
                                            s - d01);
            total += frac * cell_mass[i * (nx - 1) + j];
        }
    return total;
}

// Window the grid twice: a coarse probe finds how far the ball actually
// reaches (the conservative a-priori v-bound can overshoot by an order of
// magnitude near the axis, starving the real pass of resolution).
double ball_volume_once(const GrushinParams& params, const Point& center,
                        double s, int nr, int nv, int stencil) {
    Chart chart(params.alpha);
    double a2 = 2.0 * params.alpha;
    double r_hi = center.r + 1.15 * s;
    double v_half = 1.3 * s * std::pow(r_hi, a2);
    if (center.r < 2.5 * s) {
        double c_low = 0.7 * axis_constant_upper(params.alpha);
        double gamma = 1.0 / (1.0 + a2);
        v_half += 1.3 * std::pow(s / c_low, 1.0 / gamma);
    }
    GridSpec spec;
    double r_lo = std::max(0.0, center.r - 1.15 * s);
    spec.r_min = (r_lo > 0.05 * s) ? r_lo : 0.0;
    spec.r_max = r_hi;
    spec.nr = std::max(41, nr / 3);
    spec.nv = std::max(41, nv / 3);
    spec.v_min = center.v - v_half;
    spec.v_max = center.v + v_half;
    spec.grading = spec.r_min == 0.0 ? 1.02 : 1.0;
    spec.stencil = stencil;

    double v_reach = 0.0, y_reach = 0.0;
    ball_volume_pass(params, center, s, spec, &v_reach, &y_reach);

    double hv_coarse = 2.0 * v_half / spec.nv;
    spec.v_min = center.v - 1.1 * v_reach - 2.0 * hv_coarse;
    spec.v_max = center.v + 1.1 * v_reach + 2.0 * hv_coarse;
    if (spec.r_min == 0.0) {
        double r_reach = chart.r_of_y(y_reach);
        spec.r_max = std::min(r_hi, 1.05 * r_reach + 0.1 * s);
    }
    spec.nr = nr;
    spec.nv = nv;
    return ball_volume_pass(params, center, s, spec, nullptr, nullptr);
}

}  // namespace

VolumeResult ball_volume(const GrushinParams& params, const Point& center,
                         double s, const BallQuadratureOptions& opts) {
    if (!(s > 0.0)) throw InvalidParameter("ball radius must be positive");
    VolumeResult out;
    out.method = VolumeMethod::QuadratureOverDistanceField;
    out.value = ball_volume_once(params, center, s, opts.nr, opts.nv,
                                 opts.stencil);
    if (opts.refine) {
        double v2 = ball_volume_once(params, center, s, 2 * opts.nr - 1,
                                     2 * opts.nv - 1, opts.stencil);
        out.error_estimate = std::abs(v2 - out.value);
        out.value = v2;
    }
    return out;
}

VolumeResult box_volume(const GrushinParams& params, double r0, double s) {
    if (s < 0.0) throw InvalidParameter("box scale must be nonnegative");
    VolumeResult out;
    out.method = VolumeMethod::ClosedForm;
    if (s == 0.0) return out;
    double e = params.volume_exponent();  // (n+1)/2 - 2a > 0
    double lo = std::max(0.0, r0 - s);
    double hi = r0 + s;
    out.value = params.c_m * 2.0 * std::pow(s, 1.0 + 2.0 * params.alpha) / e *
                (std::pow(hi, e) - std::pow(lo, e));
    return out;
}

double f_ratio(const GrushinParams& params, double tau_inv,
               const BallQuadratureOptions& opts) {
    if (tau_inv < 0.0) throw InvalidParameter("tau_inv must be >= 0");
    double rect = box_volume(params, tau_inv, 1.0).value;
    double ball = ball_volume(params, Point{tau_inv, 0.0}, 1.0, opts).value;
    return rect / ball;
}

double G_of_tau(const GrushinParams& params, double tau,
                const BallQuadratureOptions& opts) {
    if (!(tau > 0.0)) throw InvalidParameter("tau must be positive");
    double e = params.volume_exponent();
    double denom = std::pow(1.0 + tau, e) -
                   (tau < 1.0 ? std::pow(1.0 - tau, e) : 0.0);
    return f_ratio(params, 1.0 / tau, opts) / denom;
}

namespace {
double interp_log(const std::vector<double>& tau,
                  const std::vector<double>& val, double q) {
    if (q <= tau.front()) return val.front();
    if (q >= tau.back()) return val.back();
    auto it = std::upper_bound(tau.begin(), tau.end(), q);
    std::size_t k = it - tau.begin() - 1;
    double t = (std::log(q) - std::log(tau[k])) /
               (std::log(tau[k + 1]) - std::log(tau[k]));
    return (1 - t) * val[k] + t * val[k + 1];
}
}  // namespace

double RatioTable::f_at(double q) const { return interp_log(tau, f, q); }
double RatioTable::G_at(double q) const { return interp_log(tau, G, q); }

RatioTable build_ratio_table(const GrushinParams& params, double tau_min,
                             double tau_max, int count, int workers,
                             const BallQuadratureOptions& opts) {
    if (!(tau_min > 0.0) || !(tau_max > tau_min) || count < 2)
        throw InvalidParameter("bad tau range");
    RatioTable tbl;
    tbl.tau = logspace(tau_min, tau_max, count);
    tbl.f.assign(count, 0.0);
    tbl.G.assign(count, 0.0);
    double e = params.volume_exponent();
    parallel_for(count, workers, [&](std::size_t i) {
        double tau = tbl.tau[i];
        tbl.f[i] = f_ratio(params, 1.0 / tau, opts);
        double denom = std::pow(1.0 + tau, e) -
                       (tau < 1.0 ? std::pow(1.0 - tau, e) : 0.0);
        tbl.G[i] = tbl.f[i] / denom;
    });
    return tbl;
}

double hausdorff_measure_singular(const GrushinParams& params, double k,
                                  double C_boundary, double v_length,
                                  std::optional<double> c_k) {
    if (!(k > 0.0) || !(C_boundary > 0.0) || !(v_length > 0.0))
        throw InvalidParameter("hausdorff arguments must be positive");
    (void)params;
    double ck = c_k ? *c_k : unit_ball_volume(k);
    return ck * std::pow(0.5 * C_boundary, k) * v_length;
}

}  // namespace grushin
