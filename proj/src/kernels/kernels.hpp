#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops used by the heat-trace, quadrature and
// eigenvalue-counting hot paths. Each kernel has a scalar reference
// implementation and an AVX2 variant; the backend is picked at runtime
// (cpuid) unless forced. The two variants are equivalence-tested against
// each other: sturm_counts must agree exactly, the floating-point
// reductions within a small relative tolerance.
namespace grushin::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Backend Auto resolves to this at runtime.
Backend detected_backend();
const char* backend_name(Backend b);
bool avx2_available();

// sum_i w[i] * exp(-lam[i]*t) for lam sorted ascending, t >= 0.
// Terms with lam[i]*t beyond the exp underflow threshold are skipped.
double exp_weighted_sum(std::span<const double> lam,
                        std::span<const double> w, double t,
                        Backend backend = Backend::Auto);

// sum_i w[i] over indices with v[i] < threshold.
double sum_where_below(std::span<const double> v, std::span<const double> w,
                       double threshold, Backend backend = Backend::Auto);

// Sturm counts for the symmetric tridiagonal with diagonal d and squared
// off-diagonal e2 (size n-1): out[j] = #eigenvalues strictly below x[j].
// pivmin guards the recurrence against zero pivots.
void sturm_counts(std::span<const double> d, std::span<const double> e2,
                  std::span<const double> x, std::span<int> out,
                  double pivmin, Backend backend = Backend::Auto);

namespace detail {
double exp_weighted_sum_scalar(std::span<const double> lam,
                               std::span<const double> w, double t);
double sum_where_below_scalar(std::span<const double> v,
                              std::span<const double> w, double threshold);
void sturm_counts_scalar(std::span<const double> d,
                         std::span<const double> e2,
                         std::span<const double> x, std::span<int> out,
                         double pivmin);
#if defined(__x86_64__) || defined(_M_X64)
double exp_weighted_sum_avx2(std::span<const double> lam,
                             std::span<const double> w, double t);
double sum_where_below_avx2(std::span<const double> v,
                            std::span<const double> w, double threshold);
void sturm_counts_avx2(std::span<const double> d, std::span<const double> e2,
                       std::span<const double> x, std::span<int> out,
                       double pivmin);
#endif
}  // namespace detail

}  // namespace grushin::kernels
