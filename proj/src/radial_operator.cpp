#include "grushin/radial_operator.hpp"

#include <cmath>

namespace grushin {

const char* space_name(Space s) {
    switch (s) {
        case Space::Ybar: return "ybar";
        case Space::Ytilde: return "ytilde";
        case Space::Xdouble: return "xdouble";
    }
    return "?";
}

const char* bc_name(OuterBC b) {
    return b == OuterBC::Neumann ? "neumann" : "dirichlet";
}

double auto_truncation_radius(const GrushinParams& params, double lambda_max) {
    double mu1 = std::pow(kTwoPi / params.period, 2);  // k = 1
    double r_star = std::pow(lambda_max / mu1, 1.0 / (4.0 * params.alpha));
    return std::max(8.0, 2.0 * r_star);
}

namespace {

std::vector<double> radial_nodes(double R, int count, double grading) {
    std::vector<double> r(count);
    if (std::abs(grading - 1.0) < 1e-12) {
        for (int i = 0; i < count; ++i) r[i] = R * i / (count - 1.0);
        return r;
    }
    double h0 = R * (grading - 1.0) / (std::pow(grading, count - 1) - 1.0);
    r[0] = 0.0;
    double h = h0;
    for (int i = 1; i < count; ++i) {
        r[i] = r[i - 1] + h;
        h *= grading;
    }
    r[count - 1] = R;
    return r;
}

// Composite Simpson over [a,b] with panels subintervals (even count).
template <class F>
double simpson(const F& f, double a, double b, int panels = 8) {
    double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

RadialOperator build_radial_operator(const GrushinParams& params,
                                     const ModeProblem& problem,
                                     double lambda_max,
                                     const WarpProfile* warp) {
    const bool ybar = problem.space == Space::Ybar;
    if (!ybar && warp == nullptr)
        throw InvalidParameter("perturbed spaces need a warp profile");
    if (problem.grid.nodes < 16)
        throw InvalidParameter("radial grid too small");

    double R = ybar ? (problem.grid.truncation_radius > 0.0
                           ? problem.grid.truncation_radius
                           : auto_truncation_radius(params, lambda_max))
                    : (warp ? warp->r_end : 3.0);

    std::vector<double> nodes =
        radial_nodes(R, problem.grid.nodes, problem.grid.grading);

    const double p_exp = params.measure_exponent();
    const double mu = std::pow(kTwoPi * problem.k / params.period, 2);

    // Weight (measure density without c_m; the constant cancels from the
    // eigenproblem) and the angular potential factor h^{-2}.
    auto weight = [&](double r) -> double {
        if (ybar) return r <= 0.0 ? 0.0 : std::pow(r, p_exp);
        return r <= 0.0 ? 0.0 : warp->density(params, r) / params.c_m;
    };
    auto hm2 = [&](double r) -> double {  // h(r)^{-2}
        if (ybar) return std::pow(r, 4.0 * params.alpha);
        double h = warp->value(r);
        return 1.0 / (h * h);
    };
    // exact power-law cell integrals on the pure Grushin zone
    auto weight_cell = [&](double a, double b) -> double {
        bool pure = ybar || b <= (warp ? warp->r_break1 : 1.0);
        if (pure) {
            double e = p_exp + 1.0;
            if (std::abs(e) < 1e-12) return std::log(b / std::max(a, 1e-300));
            if (e < 0.0 && a <= 0.0) return HUGE_VAL;  // non-integrable
            return (std::pow(b, e) - std::pow(a, e)) / e;
        }
        return simpson(weight, a, b);
    };
    auto potential_cell = [&](double a, double b) -> double {
        bool pure = ybar || b <= (warp ? warp->r_break1 : 1.0);
        if (pure) {
            double e = p_exp + 4.0 * params.alpha + 1.0;
            return mu * (std::pow(b, e) - std::pow(a, e)) / e;
        }
        return mu * simpson([&](double r) { return weight(r) * hm2(r); }, a, b);
    };

    RadialOperator op;
    op.outer_radius = R;
    op.angular_eigenvalue = mu;
    op.axis_dropped = (p_exp <= -1.0 + 1e-12);

    const int n_all = static_cast<int>(nodes.size());
    const int i_lo = op.axis_dropped ? 1 : 0;
    const int i_hi =
        problem.outer_bc == OuterBC::Dirichlet ? n_all - 2 : n_all - 1;
    const int m = i_hi - i_lo + 1;
    if (m < 8) throw InvalidParameter("radial grid too small after BCs");

    std::vector<double> flux(n_all - 1);  // c_{i+1/2} = w(mid)/dr
    for (int i = 0; i + 1 < n_all; ++i) {
        double mid = 0.5 * (nodes[i] + nodes[i + 1]);
        flux[i] = weight(mid) / (nodes[i + 1] - nodes[i]);
    }

    op.r.resize(m);
    op.mass.resize(m);
    std::vector<double> diag(m, 0.0);
    op.sym_e.assign(m - 1, 0.0);

    for (int i = i_lo; i <= i_hi; ++i) {
        double a = (i == i_lo)
                       ? (op.axis_dropped ? 0.5 * (nodes[0] + nodes[1]) : 0.0)
                       : 0.5 * (nodes[i - 1] + nodes[i]);
        double b = (i == n_all - 1) ? nodes[n_all - 1]
                                    : 0.5 * (nodes[i] + nodes[i + 1]);
        int j = i - i_lo;
        op.r[j] = nodes[i];
        op.mass[j] = weight_cell(a, b);
        double d = 0.0;
        if (i > 0) d += flux[i - 1];          // includes the Dirichlet wall
        if (i + 1 < n_all) d += flux[i];      // at a dropped node
        diag[j] = (d + potential_cell(a, b)) / op.mass[j];
    }
    op.sym_d = diag;
    for (int j = 0; j + 1 < m; ++j) {
        int i = j + i_lo;
        op.sym_e[j] = -flux[i] / std::sqrt(op.mass[j] * op.mass[j + 1]);
    }
    return op;
}

}  // namespace grushin
