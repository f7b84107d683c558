#include "grushin/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grushin/util.hpp"
#include "../src/kernels/kernels.hpp"

namespace grushin {

namespace {

double pivmin_for(const std::vector<double>& e2) {
    double m = 1.0;
    for (double v : e2) m = std::max(m, v);
    return std::numeric_limits<double>::min() * m;
}

}  // namespace

std::vector<double> eigenvalues_below(const SymTridiag& T, double lambda_max,
                                      double rel_tol) {
    const std::size_t n = T.d.size();
    if (n == 0) return {};
    std::vector<double> e2(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = T.e[i] * T.e[i];
    const double pivmin = pivmin_for(e2);

    // Gershgorin lower bound
    double lo = T.d[0];
    for (std::size_t i = 0; i < n; ++i) {
        double rad = (i > 0 ? std::abs(T.e[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(T.e[i]) : 0.0);
        lo = std::min(lo, T.d[i] - rad);
    }
    lo -= 1e-3 * (std::abs(lo) + 1.0);

    int m = 0;
    {
        // counts are strictly-below; nudge to include lambda_max itself
        std::vector<double> xs = {std::nextafter(lambda_max, HUGE_VAL)};
        std::vector<int> out(1);
        kernels::sturm_counts(T.d, e2, xs, out, pivmin);
        m = out[0];
    }
    if (m == 0) return {};

    std::vector<double> a(m, lo), b(m, lambda_max);
    std::vector<double> mids(m);
    std::vector<int> counts(m);
    const double scale = std::max(std::abs(lo), std::abs(lambda_max));
    for (int sweep = 0; sweep < 120; ++sweep) {
        bool any = false;
        for (int j = 0; j < m; ++j) {
            mids[j] = 0.5 * (a[j] + b[j]);
            if (b[j] - a[j] > rel_tol * scale) any = true;
        }
        if (!any) break;
        kernels::sturm_counts(T.d, e2, mids, counts, pivmin);
        for (int j = 0; j < m; ++j) {
            if (counts[j] >= j + 1)
                b[j] = mids[j];
            else
                a[j] = mids[j];
        }
    }
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) out[j] = 0.5 * (a[j] + b[j]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> eigenvector(const SymTridiag& T, double lambda) {
    const std::size_t n = T.d.size();
    if (n == 0) throw EigenSolveFailure("empty operator");

    // Tridiagonal solve of (T - lambda I) x = rhs with partial pivoting.
    auto solve_shifted = [&](std::vector<double> rhs) {
        std::vector<double> dd(n), du(n > 1 ? n - 1 : 0),
            du2(n > 2 ? n - 2 : 0), dl(n > 1 ? n - 1 : 0);
        for (std::size_t i = 0; i < n; ++i) dd[i] = T.d[i] - lambda;
        for (std::size_t i = 0; i + 1 < n; ++i) du[i] = T.e[i], dl[i] = T.e[i];
        // forward elimination
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(dd[i]) >= std::abs(dl[i])) {
                if (dd[i] == 0.0) dd[i] = 1e-300;
                double f = dl[i] / dd[i];
                dd[i + 1] -= f * du[i];
                rhs[i + 1] -= f * rhs[i];
                if (i + 2 < n) du2[i] = 0.0;
                dl[i] = 0.0;  // marker: no row swap
            } else {
                double f = dd[i] / dl[i];
                dd[i] = dl[i];
                double tmp = dd[i + 1];
                dd[i + 1] = du[i] - f * tmp;
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                du[i] = tmp;
                std::swap(rhs[i], rhs[i + 1]);
                rhs[i + 1] -= f * rhs[i];
                dl[i] = 1.0;  // marker: row swap happened
            }
        }
        if (dd[n - 1] == 0.0) dd[n - 1] = 1e-300;
        // back substitution
        std::vector<double> x(n);
        x[n - 1] = rhs[n - 1] / dd[n - 1];
        if (n > 1)
            x[n - 2] = (rhs[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2];
        for (std::size_t ii = n; ii-- > 2;) {
            std::size_t i = ii - 2;
            double s = rhs[i] - du[i] * x[i + 1];
            if (i + 2 < n) s -= du2[i] * x[i + 2];
            x[i] = s / dd[i];
        }
        return x;
    };

    Lcg rng(0x5eed5eed1234ull);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform() - 0.5;
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    for (auto& v : x) v /= std::sqrt(nrm);

    for (int it = 0; it < 4; ++it) {
        x = solve_shifted(std::move(x));
        nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw EigenSolveFailure("inverse iteration diverged");
        for (auto& v : x) v /= nrm;
    }
    // sign convention: first significant entry positive
    for (double v : x) {
        if (std::abs(v) > 1e-8) {
            if (v < 0)
                for (auto& w : x) w = -w;
            break;
        }
    }
    return x;
}

}  // namespace grushin
