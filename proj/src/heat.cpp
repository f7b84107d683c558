#include "grushin/heat.hpp"

#include <algorithm>
#include <cmath>

#include "grushin/distance_field.hpp"
#include "grushin/quadrature.hpp"
#include "grushin/util.hpp"
#include "../src/kernels/kernels.hpp"

namespace grushin {

TraceSeries heat_trace(const Spectrum& spec, std::vector<double> t_values) {
    std::sort(t_values.begin(), t_values.end(), std::greater<double>());
    double tmin = t_min_for(spec.lambda_max);
    TraceSeries out;
    out.t = t_values;
    out.Z.resize(t_values.size());
    out.truncation_error.resize(t_values.size());

    // crude tail model: N' at the top of the computed range
    double lm = spec.lambda_max;
    double Ntop = static_cast<double>(spec.counting(lm));
    double Nlow = static_cast<double>(spec.counting(0.5 * lm));
    double dN = std::max(1.0, (Ntop - Nlow) / (0.5 * lm));

    for (std::size_t i = 0; i < t_values.size(); ++i) {
        double t = t_values[i];
        if (t < tmin * (1.0 - 1e-12))
            throw TailDominates("t below the resolvable minimum " +
                                std::to_string(tmin));
        out.Z[i] = kernels::exp_weighted_sum(spec.lambdas(), spec.mults(), t);
        out.truncation_error[i] = 2.0 * dN * std::exp(-lm * t) / t;
    }
    return out;
}

DiagonalKernel::DiagonalKernel(const ModalBasis& basis) : basis_(&basis) {
    lam_.reserve(basis.modes.size());
    modes_.reserve(basis.modes.size());
    for (const auto& m : basis.modes) {
        lam_.push_back(m.lambda);
        modes_.push_back(&m);
    }
}

double DiagonalKernel::at(double r, double t) const {
    const auto& rr = basis_->r;
    // linear interpolation weights on the shared radial grid
    std::size_t k = std::upper_bound(rr.begin(), rr.end(), r) - rr.begin();
    if (k == 0) k = 1;
    if (k >= rr.size()) k = rr.size() - 1;
    std::size_t i0 = k - 1, i1 = k;
    double w1 = (r - rr[i0]) / (rr[i1] - rr[i0]);
    w1 = std::clamp(w1, 0.0, 1.0);
    std::vector<double> wts(lam_.size());
    for (std::size_t j = 0; j < lam_.size(); ++j) {
        const Mode& m = *modes_[j];
        if (m.phi.empty())
            throw InvalidParameter("basis assembled without eigenvectors");
        double phi = (1.0 - w1) * m.phi[i0] + w1 * m.phi[i1];
        wts[j] = m.mult * phi * phi;
    }
    return kernels::exp_weighted_sum(lam_, wts, t) / basis_->params.period;
}

double DiagonalKernel::trace(double t) const {
    std::vector<double> wts(lam_.size());
    for (std::size_t j = 0; j < lam_.size(); ++j)
        wts[j] = modes_[j]->mult;
    return kernels::exp_weighted_sum(lam_, wts, t);
}

std::vector<double> DiagonalKernel::box_weights(double r2) const {
    std::vector<double> w(lam_.size());
    for (std::size_t j = 0; j < lam_.size(); ++j) {
        const Mode& m = *modes_[j];
        if (!m.phi.empty())
            w[j] = m.mult * basis_->mass_in(m, 0.0, r2);
        else if (m.box_mass >= 0.0)
            w[j] = m.mult * m.box_mass;  // streamed at assembly time
        else
            throw InvalidParameter(
                "basis has neither eigenvectors nor streamed box masses");
    }
    return w;
}

double DiagonalKernel::box_trace(const std::vector<double>& w, double v1,
                                 double v2, double t) const {
    return kernels::exp_weighted_sum(lam_, w, t) * (v2 - v1) /
           basis_->params.period;
}

namespace {

// Numeric translation distance d((r,0),(r,L)) on a local window; paths dip
// outward where v-steps are cheaper, so pad the outside generously.
double wrap_distance_numeric(const GrushinParams& params, double r, double L) {
    double bound = comparison_path_bound(params.alpha, r, L);
    GridSpec spec;
    spec.r_min = std::max(0.0, r - 0.15 * bound);
    spec.r_max = r + 1.2 * bound + 0.05;
    spec.v_min = -0.06 * L;
    spec.v_max = 1.06 * L;
    spec.nr = 141;
    spec.nv = 201;
    spec.grading = spec.r_min == 0.0 ? 1.03 : 1.0;
    spec.stencil = 16;
    spec.anchors_v = {0.0, L};
    DistanceFieldOptions o;
    o.refine_check = false;
    DistanceField f = distance_field(params, Point{r, 0.0}, spec, o);
    return f.value_at(Point{r, L});
}

}  // namespace

double HFunctionTable::h_at(double tau_q) const {
    if (tau.empty()) throw InvalidParameter("empty h table");
    if (tau_q <= tau.front()) return h.front();
    if (tau_q >= tau.back()) {
        // blend continuously into the axis limit h(0,1) over half a decade
        double blend_hi = 4.0 * tau.back();
        if (tau_q >= blend_hi) return axis_value;
        double t = (std::log(tau_q) - std::log(tau.back())) /
                   (std::log(blend_hi) - std::log(tau.back()));
        return (1 - t) * h.back() + t * axis_value;
    }
    auto it = std::upper_bound(tau.begin(), tau.end(), tau_q);
    std::size_t k = it - tau.begin() - 1;
    double t = (std::log(tau_q) - std::log(tau[k])) /
               (std::log(tau[k + 1]) - std::log(tau[k]));
    return (1 - t) * h[k] + t * h[k + 1];
}

HFunctionTable build_h_table(const GrushinParams& params,
                             const HTableOptions& opts) {
    const double P = params.period;

    HFunctionTable tbl;
    tbl.tau = logspace(opts.tau_min, opts.tau_max, opts.count);

    // Map out, on a log grid of radii, the largest resolution scale s(r)
    // the quotient allows: s = d_wrap(r) / safety. Entries pick their
    // representative radius from this curve.
    std::vector<double> r_probe;
    std::vector<double> s_allow;
    {
        double r_lo = 0.05, r_hi = 5.0;
        // extend until both tau extremes are covered
        for (int grow = 0; grow < 40; ++grow) {
            double s = std::min(opts.s_cap,
                                wrap_distance_numeric(params, r_hi, P) /
                                    opts.wrap_safety);
            if (s / r_hi < 0.8 * opts.tau_min) break;
            r_hi *= 1.7;
        }
        for (int grow = 0; grow < 40; ++grow) {
            double s = std::min(opts.s_cap,
                                wrap_distance_numeric(params, r_lo, P) /
                                    opts.wrap_safety);
            if (s / r_lo > 1.2 * opts.tau_max) break;
            r_lo /= 1.7;
        }
        int probes = 9;
        r_probe = logspace(r_lo, r_hi, probes);
        s_allow.resize(probes);
        for (int i = 0; i < probes; ++i)
            s_allow[i] = std::min(
                opts.s_cap,
                wrap_distance_numeric(params, r_probe[i], P) /
                    opts.wrap_safety);
    }
    auto allowed_s = [&](double r) {
        // log-interp of the allowance curve
        if (r <= r_probe.front()) return s_allow.front();
        if (r >= r_probe.back()) return s_allow.back();
        auto it = std::upper_bound(r_probe.begin(), r_probe.end(), r);
        std::size_t k = it - r_probe.begin() - 1;
        double t = (std::log(r) - std::log(r_probe[k])) /
                   (std::log(r_probe[k + 1]) - std::log(r_probe[k]));
        return std::exp((1 - t) * std::log(s_allow[k]) +
                        t * std::log(s_allow[k + 1]));
    };

    tbl.r_eval.resize(opts.count);
    tbl.s_eval.resize(opts.count);
    double s_min = HUGE_VAL;
    for (int i = 0; i < opts.count; ++i) {
        double tau = tbl.tau[i];
        // largest r with tau * r <= allowed_s(r): bisection on log r
        double lo = r_probe.front(), hi = r_probe.back();
        for (int it = 0; it < 80; ++it) {
            double mid = std::sqrt(lo * hi);
            if (tau * mid <= allowed_s(mid))
                lo = mid;
            else
                hi = mid;
        }
        tbl.r_eval[i] = lo;
        tbl.s_eval[i] = tau * lo;
        s_min = std::min(s_min, tbl.s_eval[i]);
    }
    double s_axis =
        std::min(opts.s_cap,
                 wrap_distance_numeric(params, 0.0, P) / opts.wrap_safety);
    s_min = std::min(s_min, s_axis);

    tbl.lambda_max = 25.0 / (s_min * s_min);

    SpectrumOptions so;
    so.grid.nodes = opts.grid_nodes;
    so.k_min = 0;  // truncated k=0 sector participates in the kernel
    so.with_vectors = true;
    so.workers = opts.workers;
    so.check_truncation = false;
    ModalBasis basis =
        assemble_modal_basis(params, Space::Ybar, tbl.lambda_max, so);
    DiagonalKernel kernel(basis);

    tbl.h.resize(opts.count);
    double wrap_worst = 0.0;
    for (int i = 0; i < opts.count; ++i) {
        double r = tbl.r_eval[i], s = tbl.s_eval[i];
        double H = kernel.at(r, s * s);
        double B = ball_volume(params, Point{r, 0.0}, s, opts.ball).value;
        tbl.h[i] = H * B;
        double dw = allowed_s(r) * opts.wrap_safety;
        wrap_worst = std::max(wrap_worst,
                              std::exp(-dw * dw / (6.0 * s * s)));
    }
    {
        double H = kernel.at(0.0, s_axis * s_axis);
        double B =
            ball_volume(params, Point{0.0, 0.0}, s_axis, opts.ball).value;
        tbl.axis_value = H * B;
    }
    tbl.wrap_bound = wrap_worst;
    tbl.bound_lower = tbl.axis_value;
    tbl.bound_upper = tbl.axis_value;
    for (double v : tbl.h) {
        tbl.bound_lower = std::min(tbl.bound_lower, v);
        tbl.bound_upper = std::max(tbl.bound_upper, v);
    }
    return tbl;
}

double h_function(const GrushinParams& params, double r, double s,
                  const HFunctionTable& table) {
    (void)params;
    if (!(s > 0.0)) throw InvalidParameter("s must be positive");
    if (r < 0.0) throw InvalidParameter("r must be nonnegative");
    if (r == 0.0) return table.axis_value;
    return table.h_at(s / r);
}

namespace {
double h_G_integral(const GrushinParams& params, double tau_lo, double tau_hi,
                    const HFunctionTable& h_table,
                    const RatioTable& G_table) {
    (void)params;
    // integrate h(1,tau) G(tau) dtau/tau = (...) du on u = log tau.
    // Both factors are piecewise linear in u, so split at the table knots
    // and let Simpson handle each smooth piece.
    auto f = [&](double u) {
        double tau = std::exp(u);
        return h_table.h_at(tau) * G_table.G_at(tau);
    };
    double u_lo = std::log(tau_lo);
    double u_hi = std::log(tau_hi);
    std::vector<double> knots = {u_lo, u_hi};
    for (double t : h_table.tau) {
        double u = std::log(t);
        if (u > u_lo && u < u_hi) knots.push_back(u);
    }
    {
        double u = std::log(4.0 * h_table.tau.back());  // axis blend knot
        if (u > u_lo && u < u_hi) knots.push_back(u);
    }
    for (double t : G_table.tau) {
        double u = std::log(t);
        if (u > u_lo && u < u_hi) knots.push_back(u);
    }
    std::sort(knots.begin(), knots.end());
    double scale = std::max(1e-12, h_table.bound_upper);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (knots[i + 1] - knots[i] < 1e-14) continue;
        total += integrate(f, knots[i], knots[i + 1],
                           1e-8 * scale * (knots[i + 1] - knots[i] + 0.1));
    }
    return total;
}
}  // namespace

double trace_integral(const GrushinParams& params, double v1, double v2,
                      double r1, double r2, double s,
                      const HFunctionTable& h_table,
                      const RatioTable& G_table) {
    if (!(r2 > r1) || r1 < 0.0 || !(v2 > v1) || !(s > 0.0))
        throw InvalidParameter("bad rectangle for trace integral");
    double Cp = (params.n + 1 - 4.0 * params.alpha) / 4.0;
    double tau_lo = s / r2;
    // tau_hi: infinity for r1 = 0; the integrand decays like
    // tau^{-(n+1)/2+2a-?}; cut where G is negligible.
    double tau_hi = r1 > 0.0 ? s / r1 : std::max(50.0, 10.0 * tau_lo);
    double integral = h_G_integral(params, tau_lo, tau_hi, h_table, G_table);
    return Cp * std::pow(s, -1.0 - 2.0 * params.alpha) * (v2 - v1) * integral;
}

double Ltilde(const GrushinParams& params, double s, double r2,
              const HFunctionTable& h_table, const RatioTable& G_table) {
    if (!(s > 0.0) || !(r2 > 0.0)) throw InvalidParameter("need s, r2 > 0");
    return h_G_integral(params, s / r2, 50.0, h_table, G_table);
}

LogFit log_fit(const std::vector<double>& s, const std::vector<double>& y,
               bool with_linear_term) {
    std::vector<std::function<double(double)>> basis = {
        [](double v) { return -std::log(v); },
        [](double) { return 1.0; }};
    if (with_linear_term) basis.push_back([](double v) { return v; });
    LinearFit f = fit_linear(s, y, basis);
    LogFit out;
    out.slope = f.coeffs[0];
    out.intercept = f.coeffs[1];
    out.linear = with_linear_term ? f.coeffs[2] : 0.0;
    out.residual_rms = f.residual_rms;
    return out;
}

std::pair<double, double> covering_sum_circle(double t, double x, double y,
                                              int terms) {
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    double d = x - y;
    double lattice = 0.0;
    for (int l = -terms; l <= terms; ++l)
        lattice += std::exp(-(d + l) * (d + l) / (4.0 * t));
    lattice /= std::sqrt(4.0 * M_PI * t);
    double fourier = 0.0;
    for (int k = -terms; k <= terms; ++k)
        fourier += std::exp(-4.0 * M_PI * M_PI * k * k * t) *
                   std::cos(kTwoPi * k * d);
    return {lattice, fourier};
}

CoveringTail covering_tail(const GrushinParams& params, double r0, double s,
                           int terms, double C_LY) {
    if (!(s > 0.0) || terms < 1) throw InvalidParameter("bad covering tail");
    CoveringTail out;
    double P = params.period;
    // one field gives every translate
    double bound1 = comparison_path_bound(params.alpha, r0, terms * P);
    GridSpec spec;
    spec.r_min = 0.0;
    spec.r_max = r0 + 1.2 * bound1 + 0.1;
    spec.v_min = -0.1 * P;
    spec.v_max = (terms + 0.2) * P;
    spec.nr = 141;
    spec.nv = std::max(241, 48 * terms);
    spec.grading = 1.03;
    DistanceFieldOptions o;
    o.refine_check = false;
    DistanceField f = distance_field(params, Point{r0, 0.0}, spec, o);
    out.terms.resize(terms);
    out.distances.resize(terms);
    for (int l = 1; l <= terms; ++l) {
        double dl = f.value_at(Point{r0, l * P});
        out.distances[l - 1] = dl;
        out.terms[l - 1] = 2.0 * C_LY * std::exp(-dl * dl / (6.0 * s * s));
        out.bound += out.terms[l - 1];
    }
    return out;
}

KaramataResult karamata_limits(const std::function<double(double)>& Z,
                               const std::function<double(double)>& N,
                               double beta, TauberianLaw law, double t_lo,
                               double t_hi, double lam_lo, double lam_hi,
                               const KaramataOptions& opts) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo) || !(lam_lo > 0.0) ||
        !(lam_hi > lam_lo))
        throw InvalidParameter("bad karamata windows");
    if (t_hi / t_lo < 8.0 || lam_hi / lam_lo < 8.0)
        throw InvalidParameter("karamata windows must span >= a decade");
    std::vector<double> ts = logspace(t_lo, t_hi, opts.samples);
    std::vector<double> ls = logspace(lam_lo, lam_hi, opts.samples);

    KaramataResult res;
    auto variation = [](const std::vector<double>& v) {
        double mn = v[0], mx = v[0], mean = 0.0;
        for (double x : v) {
            mn = std::min(mn, x);
            mx = std::max(mx, x);
            mean += x;
        }
        mean /= v.size();
        return (mx - mn) / std::max(1e-300, std::abs(mean));
    };

    if (law == TauberianLaw::Power) {
        std::vector<double> yh(ts.size()), yc(ls.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            yh[i] = std::pow(ts[i], 0.5 * beta) * Z(ts[i]);
        for (std::size_t i = 0; i < ls.size(); ++i)
            yc[i] = N(ls[i]) / std::pow(ls[i], 0.5 * beta);
        // mean over the limit-facing half of each window: small t for the
        // heat side, large lambda for the counting side
        std::size_t nh = ts.size() / 2, nc = ls.size() / 2;
        double sh = 0.0, sc = 0.0;
        for (std::size_t i = 0; i < nh; ++i) sh += yh[i];
        res.heat_side = sh / nh;
        for (std::size_t i = 0; i < nc; ++i) sc += yc[ls.size() - 1 - i];
        res.counting_side = sc / nc;
        res.heat_variation = variation(yh);
        res.counting_variation = variation(yc);
    } else {
        // two-term fits: t Z = a(-log t) + b ; N/lambda = a log lambda + b
        std::vector<double> yh(ts.size()), yc(ls.size());
        for (std::size_t i = 0; i < ts.size(); ++i) yh[i] = ts[i] * Z(ts[i]);
        for (std::size_t i = 0; i < ls.size(); ++i) yc[i] = N(ls[i]) / ls[i];
        LogFit fh = log_fit(ts, yh, false);
        LinearFit fc = fit_linear(
            ls, yc,
            {[](double l) { return std::log(l); }, [](double) { return 1.0; }});
        res.heat_side = fh.slope;
        res.counting_side = fc.coeffs[0];
        // stability of the slopes under dropping half of each window
        std::vector<double> ts2(ts.begin(), ts.begin() + ts.size() / 2);
        std::vector<double> yh2(yh.begin(), yh.begin() + ts.size() / 2);
        std::vector<double> ls2(ls.begin() + ls.size() / 2, ls.end());
        std::vector<double> yc2(yc.begin() + ls.size() / 2, yc.end());
        LogFit fh2 = log_fit(ts2, yh2, false);
        LinearFit fc2 = fit_linear(
            ls2, yc2,
            {[](double l) { return std::log(l); }, [](double) { return 1.0; }});
        res.heat_variation =
            std::abs(fh2.slope - fh.slope) / std::abs(fh.slope);
        res.counting_variation =
            std::abs(fc2.coeffs[0] - fc.coeffs[0]) / std::abs(fc.coeffs[0]);
    }
    res.ratio = res.heat_side / res.counting_side;
    res.plateau_ok = res.heat_variation <= opts.plateau_tol &&
                     res.counting_variation <= opts.plateau_tol;
    if (!res.plateau_ok && opts.throw_on_no_plateau)
        throw NoPlateau("karamata windows show no plateau");
    return res;
}

}  // namespace grushin
