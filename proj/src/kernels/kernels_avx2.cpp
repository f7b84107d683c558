#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "kernels.hpp"

namespace grushin::kernels::detail {

namespace {

// Cephes-style vectorized exp for non-positive arguments.
// Max observed error vs std::exp is ~1 ulp over [-745, 0].
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d P0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d P1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d P2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d Q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d Q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d Q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d Q3 = _mm256_set1_pd(2.00000000000000000005e0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d underflow = _mm256_set1_pd(-708.0);

    __m256d mask_uf = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_fnmadd_pd(n, c1, x);
    x = _mm256_fnmadd_pd(n, c2, x);

    __m256d xx = _mm256_mul_pd(x, x);
    __m256d px = _mm256_fmadd_pd(P0, xx, P1);
    px = _mm256_fmadd_pd(px, xx, P2);
    px = _mm256_mul_pd(px, x);
    __m256d qx = _mm256_fmadd_pd(Q0, xx, Q1);
    qx = _mm256_fmadd_pd(qx, xx, Q2);
    qx = _mm256_fmadd_pd(qx, xx, Q3);
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(two, e, one);

    // scale by 2^n via exponent-field arithmetic; |n| < 1075 here
    __m128i ni = _mm256_cvtpd_epi32(n);
    __m256i nl = _mm256_cvtepi32_epi64(ni);
    nl = _mm256_add_epi64(nl, _mm256_set1_epi64x(1023));
    nl = _mm256_slli_epi64(nl, 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(nl));

    return _mm256_andnot_pd(mask_uf, e);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    // (l0+l1) + (l2+l3), matching the scalar stripe reduction
    __m128d s01 = _mm_hadd_pd(lo, lo);
    __m128d s23 = _mm_hadd_pd(hi, hi);
    return _mm_cvtsd_f64(s01) + _mm_cvtsd_f64(s23);
}

}  // namespace

double exp_weighted_sum_avx2(std::span<const double> lam,
                             std::span<const double> w, double t) {
    const std::size_t n = lam.size();
    std::size_t m = n;
    if (t > 0.0) {
        while (m > 0 && lam[m - 1] * t > 745.0) --m;
    }
    const __m256d mt = _mm256_set1_pd(-t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d l = _mm256_loadu_pd(&lam[i]);
        __m256d ww = _mm256_loadu_pd(&w[i]);
        acc = _mm256_fmadd_pd(ww, exp_pd(_mm256_mul_pd(l, mt)), acc);
    }
    // lane sums as (a0+a1)+(a2+a3): hadd of (a0,a1) gives a0+a1
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    double total = (_mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo))) +
                   (_mm_cvtsd_f64(hi) + _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi)));
    for (; i < m; ++i) total += w[i] * std::exp(-lam[i] * t);
    return total;
}

double sum_where_below_avx2(std::span<const double> v,
                            std::span<const double> w, double threshold) {
    const std::size_t n = v.size();
    const __m256d thr = _mm256_set1_pd(threshold);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vv = _mm256_loadu_pd(&v[i]);
        __m256d ww = _mm256_loadu_pd(&w[i]);
        __m256d mask = _mm256_cmp_pd(vv, thr, _CMP_LT_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(mask, ww));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    double total = (_mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo))) +
                   (_mm_cvtsd_f64(hi) + _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi)));
    for (; i < n; ++i)
        if (v[i] < threshold) total += w[i];
    return total;
}

void sturm_counts_avx2(std::span<const double> d, std::span<const double> e2,
                       std::span<const double> x, std::span<int> out,
                       double pivmin) {
    const std::size_t n = d.size();
    const __m256d vpiv = _mm256_set1_pd(pivmin);
    const __m256d vnegpiv = _mm256_set1_pd(-pivmin);
    const __m256d signmask = _mm256_set1_pd(-0.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);

    std::size_t j = 0;
    for (; j + 4 <= x.size(); j += 4) {
        __m256d xj = _mm256_loadu_pd(&x[j]);
        __m256d cnt = _mm256_setzero_pd();
        __m256d q = _mm256_sub_pd(_mm256_set1_pd(d[0]), xj);
        __m256d small =
            _mm256_cmp_pd(_mm256_andnot_pd(signmask, q), vpiv, _CMP_LT_OQ);
        q = _mm256_blendv_pd(q, vnegpiv, small);
        cnt = _mm256_add_pd(
            cnt, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
        for (std::size_t i = 1; i < n; ++i) {
            __m256d num = _mm256_set1_pd(e2[i - 1]);
            q = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(d[i]), xj),
                              _mm256_div_pd(num, q));
            small = _mm256_cmp_pd(_mm256_andnot_pd(signmask, q), vpiv,
                                  _CMP_LT_OQ);
            q = _mm256_blendv_pd(q, vnegpiv, small);
            cnt = _mm256_add_pd(
                cnt, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
        }
        alignas(32) double c[4];
        _mm256_store_pd(c, cnt);
        for (int l = 0; l < 4; ++l) out[j + l] = static_cast<int>(c[l]);
    }
    if (j < x.size())
        sturm_counts_scalar(d, e2, x.subspan(j), out.subspan(j), pivmin);
}

}  // namespace grushin::kernels::detail

#endif  // x86_64
