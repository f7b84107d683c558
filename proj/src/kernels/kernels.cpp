#include "kernels.hpp"

namespace grushin::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detected_backend() {
    static const Backend b = avx2_available() ? Backend::Avx2 : Backend::Scalar;
    return b;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

static Backend resolve(Backend b) {
    return b == Backend::Auto ? detected_backend() : b;
}

double exp_weighted_sum(std::span<const double> lam,
                        std::span<const double> w, double t, Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
    if (resolve(backend) == Backend::Avx2)
        return detail::exp_weighted_sum_avx2(lam, w, t);
#endif
    return detail::exp_weighted_sum_scalar(lam, w, t);
}

double sum_where_below(std::span<const double> v, std::span<const double> w,
                       double threshold, Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
    if (resolve(backend) == Backend::Avx2)
        return detail::sum_where_below_avx2(v, w, threshold);
#endif
    return detail::sum_where_below_scalar(v, w, threshold);
}

void sturm_counts(std::span<const double> d, std::span<const double> e2,
                  std::span<const double> x, std::span<int> out,
                  double pivmin, Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
    if (resolve(backend) == Backend::Avx2) {
        detail::sturm_counts_avx2(d, e2, x, out, pivmin);
        return;
    }
#endif
    detail::sturm_counts_scalar(d, e2, x, out, pivmin);
}

}  // namespace grushin::kernels
