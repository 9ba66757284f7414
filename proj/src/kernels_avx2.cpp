#include "lpembed/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace lpembed::kernels {

namespace {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc0);
    double r = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double alpha, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc0);
    double r = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) r += x[i];
    return r;
}

double l1_norm_avx2(const double* x, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double r = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) r += std::fabs(x[i]);
    return r;
}

double min_positive_avx2(const double* x, std::size_t n) {
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    const __m256d zero = _mm256_setzero_pd();
    __m256d vmin = inf;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        __m256d pos = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
        vmin = _mm256_min_pd(vmin, _mm256_blendv_pd(inf, v, pos));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vmin);
    double m = std::min(std::min(lane[0], lane[1]), std::min(lane[2], lane[3]));
    for (; i < n; ++i)
        if (x[i] > 0.0 && x[i] < m) m = x[i];
    return m;
}

// log(x) for positive finite x. Mantissa reduced to [sqrt(2)/2, sqrt(2)],
// then log(m) = 2 atanh((m-1)/(m+1)) via its odd series in z^2.
__m256d vlog(__m256d x) {
    const __m256d min_normal = _mm256_set1_pd(0x1p-1022);
    const __m256d two54 = _mm256_set1_pd(0x1p54);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d sqrt2 = _mm256_set1_pd(1.41421356237309504880);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    // Scale subnormals into the normal range, remembering the shift.
    __m256d subn = _mm256_cmp_pd(x, min_normal, _CMP_LT_OQ);
    x = _mm256_blendv_pd(x, _mm256_mul_pd(x, two54), subn);
    __m256d ebias = _mm256_and_pd(subn, _mm256_set1_pd(-54.0));

    // Exponent as double: offset into [0, 2^12), OR into a 2^52 payload,
    // subtract the magic constant. Exact because the offset exponent is tiny.
    __m256i bits = _mm256_castpd_si256(x);
    __m256i expi = _mm256_srli_epi64(bits, 52);
    expi = _mm256_sub_epi64(expi, _mm256_set1_epi64x(1023));
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
    __m256i off = _mm256_add_epi64(expi, _mm256_set1_epi64x(2048));
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(off, magic)),
                              _mm256_set1_pd(0x1p52 + 2048.0));

    // Mantissa in [1, 2).
    __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                   _mm256_set1_epi64x(0x3FF0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant);

    // Fold [sqrt2, 2) down to [sqrt2/2, sqrt2).
    __m256d gt = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), gt);
    e = _mm256_add_pd(e, _mm256_and_pd(gt, one));
    e = _mm256_add_pd(e, ebias);

    __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d w = _mm256_mul_pd(z, z);

    // atanh series coefficients 1/(2k+1), k = 10 .. 1.
    __m256d p = _mm256_set1_pd(1.0 / 21.0);
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 19.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, w, one);

    __m256d r = _mm256_mul_pd(_mm256_add_pd(z, z), p);
    r = _mm256_add_pd(r, _mm256_mul_pd(e, ln2_lo));
    r = _mm256_fmadd_pd(e, ln2_hi, r);
    return r;
}

void log_avx2(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, vlog(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = std::log(x[i]);
}

void spmv_avx2(const CsrView& a, const double* x, double* y) {
    for (std::size_t i = 0; i < a.n; ++i) {
        const std::int64_t lo = a.row_ptr[i], hi = a.row_ptr[i + 1];
        std::int64_t k = lo;
        __m256d acc = _mm256_setzero_pd();
        for (; k + 4 <= hi; k += 4) {
            __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.col_idx + k));
            __m256d xv = _mm256_i32gather_pd(x, idx, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.values + k), xv, acc);
        }
        alignas(32) double lane[4];
        _mm256_store_pd(lane, acc);
        double r = (lane[0] + lane[1]) + (lane[2] + lane[3]);
        for (; k < hi; ++k) r += a.values[k] * x[a.col_idx[k]];
        y[i] = r;
    }
}

}  // namespace

const Ops avx2_ops = {dot_avx2,          axpy_avx2, scale_avx2, sum_avx2, l1_norm_avx2,
                      min_positive_avx2, log_avx2,  spmv_avx2,  "avx2"};

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace lpembed::kernels

#else

namespace lpembed::kernels {
const Ops avx2_ops = {nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, "avx2"};
bool avx2_available() { return false; }
}  // namespace lpembed::kernels

#endif
