#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "grushin/errors.hpp"

namespace grushin {

/// Deterministic 64-bit LCG for reproducible sampling (no global RNG state).
struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : s(seed) {}
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s;
    }
    double uniform() {  // in [0,1)
        return (next() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

/// Static-chunk parallel for; each index writes its own slot, so the result
/// is independent of the worker count.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    int w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += w) fn(i);
        });
    for (auto& th : pool) th.join();
}

/// Least squares y ~ a*f0(x) + b*f1(x) [+ c*f2(x)] via normal equations.
struct LinearFit {
    std::vector<double> coeffs;
    double residual_rms = 0.0;
};

inline LinearFit fit_linear(const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::vector<std::function<double(double)>>& basis) {
    const std::size_t m = basis.size(), n = x.size();
    if (n < m) throw InvalidParameter("not enough samples for fit");
    std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    std::vector<double> f(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < m; ++a) f[a] = basis[a](x[i]);
        for (std::size_t a = 0; a < m; ++a) {
            rhs[a] += f[a] * y[i];
            for (std::size_t b = 0; b < m; ++b) A[a][b] += f[a] * f[b];
        }
    }
    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> piv(m);
    for (std::size_t c = 0; c < m; ++c) piv[c] = c;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t best = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (std::abs(A[r][c]) > std::abs(A[best][c])) best = r;
        std::swap(A[c], A[best]);
        std::swap(rhs[c], rhs[best]);
        if (A[c][c] == 0.0) throw EigenSolveFailure("singular fit matrix");
        for (std::size_t r = c + 1; r < m; ++r) {
            double f2 = A[r][c] / A[c][c];
            for (std::size_t k = c; k < m; ++k) A[r][k] -= f2 * A[c][k];
            rhs[r] -= f2 * rhs[c];
        }
    }
    LinearFit out;
    out.coeffs.assign(m, 0.0);
    for (std::size_t c = m; c-- > 0;) {
        double s = rhs[c];
        for (std::size_t k = c + 1; k < m; ++k) s -= A[c][k] * out.coeffs[k];
        out.coeffs[c] = s / A[c][c];
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t a = 0; a < m; ++a) pred += out.coeffs[a] * basis[a](x[i]);
        ss += (y[i] - pred) * (y[i] - pred);
    }
    out.residual_rms = std::sqrt(ss / n);
    return out;
}

/// Volume of the unit ball in dimension k (k may be fractional).
inline double unit_ball_volume(double k) {
    return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

inline std::vector<double> logspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        v[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
    return v;
}

inline std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

}  // namespace grushin
