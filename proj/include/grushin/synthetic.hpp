#pragma once

#include <vector>

#include "grushin/errors.hpp"

namespace grushin {

/// lambda_j = j^{2/beta}, j >= 1: exact counting N(lambda) = floor(lambda^{beta/2})
/// and a streamed heat trace (the list is never materialized).
struct PowerLawSpectrum {
    double beta;
    explicit PowerLawSpectrum(double b);
    double counting(double lambda) const;
    double trace(double t) const;
};

/// The model spectrum {4 k m : k,m >= 1} with multiplicity 2, stored as
/// lambda = 4j with multiplicity 2 d(j) via a divisor sieve.
struct DivisorSpectrum {
    std::vector<double> lambda;  // 4, 8, 12, ...
    std::vector<double> mult;    // 2 d(j)
    std::vector<long long> cum;

    explicit DivisorSpectrum(long j_max);
    double lambda_max() const { return lambda.back(); }
    long long counting(double lam) const;
    double trace(double t) const;
    /// Independent brute-force count 2 sum_k floor(lambda/(4k)).
    static long long counting_bruteforce(double lam);
};

}  // namespace grushin
