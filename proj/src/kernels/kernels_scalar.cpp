#include <cmath>

#include "kernels.hpp"

namespace grushin::kernels::detail {

// exp(-x) underflows to 0 beyond this.
static constexpr double kExpCut = 745.0;

double exp_weighted_sum_scalar(std::span<const double> lam,
                               std::span<const double> w, double t) {
    const std::size_t n = lam.size();
    // lam ascending: everything past the underflow cut contributes zero.
    std::size_t m = n;
    if (t > 0.0) {
        while (m > 0 && lam[m - 1] * t > kExpCut) --m;
    }
    // Four-stripe accumulation, matching the SIMD lane layout so that the
    // two backends reduce in the same order.
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        acc[0] += w[i + 0] * std::exp(-lam[i + 0] * t);
        acc[1] += w[i + 1] * std::exp(-lam[i + 1] * t);
        acc[2] += w[i + 2] * std::exp(-lam[i + 2] * t);
        acc[3] += w[i + 3] * std::exp(-lam[i + 3] * t);
    }
    double total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; i < m; ++i) total += w[i] * std::exp(-lam[i] * t);
    return total;
}

double sum_where_below_scalar(std::span<const double> v,
                              std::span<const double> w, double threshold) {
    const std::size_t n = v.size();
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += (v[i + 0] < threshold) ? w[i + 0] : 0.0;
        acc[1] += (v[i + 1] < threshold) ? w[i + 1] : 0.0;
        acc[2] += (v[i + 2] < threshold) ? w[i + 2] : 0.0;
        acc[3] += (v[i + 3] < threshold) ? w[i + 3] : 0.0;
    }
    double total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; i < n; ++i)
        if (v[i] < threshold) total += w[i];
    return total;
}

void sturm_counts_scalar(std::span<const double> d, std::span<const double> e2,
                         std::span<const double> x, std::span<int> out,
                         double pivmin) {
    const std::size_t n = d.size();
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj = x[j];
        int cnt = 0;
        double q = d[0] - xj;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++cnt;
        for (std::size_t i = 1; i < n; ++i) {
            q = d[i] - xj - e2[i - 1] / q;
            if (std::fabs(q) < pivmin) q = -pivmin;
            if (q < 0.0) ++cnt;
        }
        out[j] = cnt;
    }
}

}  // namespace grushin::kernels::detail
