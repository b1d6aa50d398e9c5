// Compiled with -mavx2 -mfma; only reached through runtime dispatch.

#include "dmldc/kernels.hpp"

#include <immintrin.h>

#include <cfloat>
#include <cmath>

namespace dmldc::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

// log2 for positive normal doubles. The mantissa is reduced to
// [sqrt(1/2), sqrt(2)) and ln(m) = 2 atanh(s), s = (m-1)/(m+1), |s| < 0.1716,
// is summed as an odd series; eleven terms put truncation below 2^-53.
inline __m256d log2_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i mantissa_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mantissa_mask), one_bits));
    // Biased exponent as a double via the 2^52 magic constant.
    const __m256i biased = _mm256_srli_epi64(bits, 52);
    const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic_bits)),
                              _mm256_set1_pd(4503599627370496.0 + 1023.0));

    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d s2 = _mm256_mul_pd(s, s);

    __m256d poly = _mm256_set1_pd(1.0 / 21.0);
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 19.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 17.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 15.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 13.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 11.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 9.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 7.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 5.0));
    poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / 3.0));
    poly = _mm256_fmadd_pd(poly, s2, one);

    const __m256d ln_m = _mm256_mul_pd(_mm256_add_pd(s, s), poly);
    return _mm256_fmadd_pd(ln_m, _mm256_set1_pd(1.4426950408889634), e);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y.data() + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x.data() + i), vy);
        _mm256_storeu_pd(y.data() + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double neg_plogp_sum(std::span<const double> p) {
    const std::size_t n = p.size();
    const __m256d tiny = _mm256_set1_pd(DBL_MIN);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p.data() + i);
        // Zero and subnormal cells contribute nothing (|p log p| < 1e-305).
        const __m256d live = _mm256_cmp_pd(v, tiny, _CMP_GE_OQ);
        const __m256d safe = _mm256_blendv_pd(one, v, live);
        const __m256d term = _mm256_mul_pd(safe, log2_pd(safe));
        acc = _mm256_sub_pd(acc, _mm256_and_pd(term, live));
    }
    double total = hsum(acc);
    for (; i < n; ++i)
        if (p[i] > 0.0) total -= p[i] * std::log2(p[i]);
    return total;
}

}  // namespace dmldc::kernels::avx2
