#include "grushin/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "../src/kernels/kernels.hpp"

namespace grushin {

PowerLawSpectrum::PowerLawSpectrum(double b) : beta(b) {
    if (!(b > 0.0)) throw InvalidParameter("beta must be positive");
}

double PowerLawSpectrum::counting(double lambda) const {
    if (lambda < 1.0) return 0.0;
    return std::floor(std::pow(lambda, 0.5 * beta));
}

double PowerLawSpectrum::trace(double t) const {
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    // lambda_j t <= 50 keeps the discarded tail below 1e-18 relative
    double jmax = std::pow(50.0 / t, 0.5 * beta);
    const std::size_t chunk = 1 << 16;
    std::vector<double> lam(chunk), w(chunk, 1.0);
    double total = 0.0;
    double e = 2.0 / beta;
    for (double j0 = 1.0; j0 <= jmax; j0 += chunk) {
        std::size_t m = static_cast<std::size_t>(
            std::min<double>(chunk, jmax - j0 + 1.0));
        for (std::size_t i = 0; i < m; ++i)
            lam[i] = std::pow(j0 + i, e);
        total += kernels::exp_weighted_sum(
            std::span<const double>(lam.data(), m),
            std::span<const double>(w.data(), m), t);
    }
    return total;
}

DivisorSpectrum::DivisorSpectrum(long j_max) {
    if (j_max < 1) throw InvalidParameter("j_max must be >= 1");
    std::vector<int> d(j_max + 1, 0);
    for (long i = 1; i <= j_max; ++i)
        for (long j = i; j <= j_max; j += i) d[j]++;
    lambda.resize(j_max);
    mult.resize(j_max);
    cum.resize(j_max);
    long long c = 0;
    for (long j = 1; j <= j_max; ++j) {
        lambda[j - 1] = 4.0 * j;
        mult[j - 1] = 2.0 * d[j];
        c += 2 * d[j];
        cum[j - 1] = c;
    }
}

long long DivisorSpectrum::counting(double lam) const {
    if (lam < 4.0) return 0;
    long j = static_cast<long>(lam / 4.0);
    j = std::min<long>(j, lambda.size());
    return cum[j - 1];
}

double DivisorSpectrum::trace(double t) const {
    return kernels::exp_weighted_sum(lambda, mult, t);
}

long long DivisorSpectrum::counting_bruteforce(double lam) {
    long long n = 0;
    long kmax = static_cast<long>(lam / 4.0);
    for (long k = 1; k <= kmax; ++k)
        n += 2 * static_cast<long long>(lam / (4.0 * k));
    return n;
}

}  // namespace grushin
