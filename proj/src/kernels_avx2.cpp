#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstddef>

#include "logcap/kernels.hpp"

// AVX2 + FMA variants. The log kernel ports the classic fdlibm/musl
// algorithm (argument reduction to [sqrt(1/2), sqrt(2)), rational
// minimax in s = f/(2+f)), accurate to < 1 ulp for normal inputs.
// Non-normal or non-finite lanes fall back to std::log.

namespace logcap::kernels {

namespace {

const __m256d kLn2Hi = _mm256_set1_pd(6.93147180369123816490e-01);
const __m256d kLn2Lo = _mm256_set1_pd(1.90821492927058770002e-10);
const __m256d kLg1 = _mm256_set1_pd(6.666666666666735130e-01);
const __m256d kLg2 = _mm256_set1_pd(3.999999999940941908e-01);
const __m256d kLg3 = _mm256_set1_pd(2.857142874366239149e-01);
const __m256d kLg4 = _mm256_set1_pd(2.222219843214978396e-01);
const __m256d kLg5 = _mm256_set1_pd(1.818357216161805012e-01);
const __m256d kLg6 = _mm256_set1_pd(1.531383769920937332e-01);
const __m256d kLg7 = _mm256_set1_pd(1.479819860511658591e-01);

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    lo = _mm_add_sd(lo, sh);
    return _mm_cvtsd_f64(lo);
}

/// ln of four positive normal doubles; lanes listed in fallback need scalar
/// recomputation (zero, denormal, negative, inf, nan).
inline __m256d log4(__m256d v, int& fallback) {
    const __m256d min_normal = _mm256_set1_pd(DBL_MIN);
    const __m256d inf = _mm256_set1_pd(HUGE_VAL);
    const __m256d small = _mm256_cmp_pd(v, min_normal, _CMP_LT_OQ);
    const __m256d notfin = _mm256_cmp_pd(v, inf, _CMP_NLT_UQ);
    fallback = _mm256_movemask_pd(_mm256_or_pd(small, notfin));

    const __m256i bits = _mm256_castpd_si256(v);
    __m256i k64 = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    const __m256i mant_bits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3ff0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant_bits);
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    // mask lanes are all-ones (-1 as epi64); subtracting adds 1 to k
    k64 = _mm256_sub_epi64(k64, _mm256_castpd_si256(big));

    const __m256i packed =
        _mm256_permutevar8x32_epi32(k64, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    const __m256d dk = _mm256_cvtepi32_pd(_mm256_castsi256_si128(packed));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d f = _mm256_sub_pd(m, one);
    const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    const __m256d w = _mm256_mul_pd(z, z);
    const __m256d t1 =
        _mm256_mul_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, kLg6, kLg4), kLg2));
    const __m256d t2 = _mm256_mul_pd(
        z, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, kLg7, kLg5), kLg3), kLg1));
    const __m256d r = _mm256_add_pd(t1, t2);
    const __m256d t = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, r), _mm256_mul_pd(dk, kLn2Lo));
    return _mm256_sub_pd(_mm256_mul_pd(dk, kLn2Hi), _mm256_sub_pd(_mm256_sub_pd(hfsq, t), f));
}

inline __m256d log_dist2_block(const double* xre, const double* xim, std::size_t i, __m256d vzre,
                               __m256d vzim) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xre + i), vzre);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(xim + i), vzim);
    const __m256d d2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    int fb = 0;
    __m256d lg = log4(d2, fb);
    if (fb) {
        double d2s[4], lgs[4];
        _mm256_storeu_pd(d2s, d2);
        _mm256_storeu_pd(lgs, lg);
        for (int l = 0; l < 4; ++l)
            if (fb & (1 << l)) lgs[l] = std::log(d2s[l]);
        lg = _mm256_loadu_pd(lgs);
    }
    return lg;
}

void accum_log_dist2_avx2(const double* xre, const double* xim, std::size_t n, double zre,
                          double zim, double* acc) {
    const __m256d vzre = _mm256_set1_pd(zre);
    const __m256d vzim = _mm256_set1_pd(zim);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d lg = log_dist2_block(xre, xim, i, vzre, vzim);
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), lg));
    }
    for (; i < n; ++i) {
        const double dx = xre[i] - zre;
        const double dy = xim[i] - zim;
        acc[i] += std::log(dx * dx + dy * dy);
    }
}

double wsum_log_dist2_avx2(const double* xre, const double* xim, const double* w, std::size_t n,
                           double zre, double zim) {
    const __m256d vzre = _mm256_set1_pd(zre);
    const __m256d vzim = _mm256_set1_pd(zim);
    __m256d vsum = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d lg = log_dist2_block(xre, xim, i, vzre, vzim);
        vsum = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), lg, vsum);
    }
    double sum = hsum(vsum);
    for (; i < n; ++i) {
        const double dx = xre[i] - zre;
        const double dy = xim[i] - zim;
        sum += w[i] * std::log(dx * dx + dy * dy);
    }
    return sum;
}

void horner_grid_avx2(const double* coeffs, std::size_t ncoeff, const double* xs, std::size_t n,
                      double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = ncoeff; k-- > 0;)
            acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(coeffs[k]));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        const double x = xs[i];
        double acc = 0.0;
        for (std::size_t k = ncoeff; k-- > 0;) acc = acc * x + coeffs[k];
        out[i] = acc;
    }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d vsum = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vsum = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vsum);
    double sum = hsum(vsum);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{accum_log_dist2_avx2, wsum_log_dist2_avx2, horner_grid_avx2,
                                   dot_avx2, "avx2"};
    return table;
}

}  // namespace logcap::kernels
