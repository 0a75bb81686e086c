// Compiled with -mavx2 -mfma; only called after a runtime CPU check.

#include <immintrin.h>

#include <cstdint>

#include "hetbound/kernels.hpp"

namespace hetbound::kernels::avx2 {

namespace {

// fdlibm e_log.c reduction: x = 2^e (1 + f), sqrt(2)/2 <= 1 + f < sqrt(2).
inline __m256d log_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);

    // Biased exponent to double via the 2^52 magic constant.
    const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, magic)),
                              _mm256_set1_pd(4503599627370496.0));
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

    const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    const __m256d s2 = _mm256_mul_pd(s, s);
    const __m256d s4 = _mm256_mul_pd(s2, s2);

    __m256d t1 = _mm256_fmadd_pd(s4, _mm256_set1_pd(1.479819860511658591e-01),
                                 _mm256_set1_pd(1.818357216161805012e-01));
    t1 = _mm256_fmadd_pd(s4, t1, _mm256_set1_pd(2.857142874366239149e-01));
    t1 = _mm256_fmadd_pd(s4, t1, _mm256_set1_pd(6.666666666666735130e-01));
    t1 = _mm256_mul_pd(s2, t1);
    __m256d t2 = _mm256_fmadd_pd(s4, _mm256_set1_pd(1.531383769920937332e-01),
                                 _mm256_set1_pd(2.222219843214978396e-01));
    t2 = _mm256_fmadd_pd(s4, t2, _mm256_set1_pd(3.999999999940941908e-01));
    t2 = _mm256_mul_pd(s4, t2);
    const __m256d R = _mm256_add_pd(t1, t2);

    const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    // e*ln2_hi - ((hfsq - (s*(hfsq + R) + e*ln2_lo)) - f)
    const __m256d inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R), _mm256_mul_pd(e, ln2_lo));
    const __m256d corr = _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f);
    return _mm256_fmsub_pd(e, ln2_hi, corr);
}

constexpr std::size_t kLanes = 4;

}  // namespace

void log(const double* in, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(out + i, log_pd(_mm256_loadu_pd(in + i)));
    }
    if (i < n) {
        alignas(32) double buf[kLanes] = {1.0, 1.0, 1.0, 1.0};
        for (std::size_t j = i; j < n; ++j) buf[j - i] = in[j];
        _mm256_store_pd(buf, log_pd(_mm256_load_pd(buf)));
        for (std::size_t j = i; j < n; ++j) out[j] = buf[j - i];
    }
}

void field(const FieldCoeffs& k, const double* x, const double* y, double* dx, double* dy,
           std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d c = _mm256_set1_pd(k.c);
    const __m256d a0 = _mm256_set1_pd(k.a0);
    const __m256d a1 = _mm256_set1_pd(k.a1);
    const __m256d b0 = _mm256_set1_pd(k.b0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        const __m256d d = _mm256_fnmadd_pd(c, xv, one);
        const __m256d a = _mm256_div_pd(_mm256_fmadd_pd(a1, xv, a0), d);
        const __m256d b = _mm256_div_pd(b0, d);
        _mm256_storeu_pd(dx + i, _mm256_sub_pd(yv, xv));
        _mm256_storeu_pd(dy + i, _mm256_mul_pd(yv, _mm256_fnmadd_pd(b, yv, a)));
    }
    scalar::field(k, x + i, y + i, dx + i, dy + i, n - i);
}

void lyapunov(const LyapunovCoeffs& k, const double* x, const double* y, double* v,
              std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d c = _mm256_set1_pd(k.field.c);
    const __m256d z = _mm256_set1_pd(k.z);
    const __m256d lin = _mm256_set1_pd(k.lin);
    const __m256d quad = _mm256_set1_pd(k.quad);
    const __m256d log_coeff = _mm256_set1_pd(k.log_coeff);
    const __m256d offset = _mm256_set1_pd(k.offset);
    alignas(32) double zz[kLanes] = {k.z, k.z, k.z, k.z};
    const __m256d log_z = log_pd(_mm256_load_pd(zz));
    const bool has_log = k.log_coeff != 0.0;
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        __m256d pot = _mm256_fmadd_pd(_mm256_fmadd_pd(quad, xv, lin), xv, offset);
        if (has_log) pot = _mm256_fmadd_pd(log_coeff, log_pd(_mm256_fnmadd_pd(c, xv, one)), pot);
        const __m256d ylog = _mm256_sub_pd(log_pd(yv), log_z);
        const __m256d val = _mm256_fnmadd_pd(z, ylog, _mm256_add_pd(pot, _mm256_sub_pd(yv, z)));
        _mm256_storeu_pd(v + i, val);
    }
    scalar::lyapunov(k, x + i, y + i, v + i, n - i);
}

void lyapunov_rate(const LyapunovCoeffs& k, const double* x, const double* y, double* rate,
                   std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d c = _mm256_set1_pd(k.field.c);
    const __m256d b0 = _mm256_set1_pd(k.field.b0);
    const __m256d neg_a1 = _mm256_set1_pd(-k.field.a1);
    const __m256d z = _mm256_set1_pd(k.z);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        const __m256d d = _mm256_fnmadd_pd(c, xv, one);
        const __m256d b = _mm256_div_pd(b0, d);
        const __m256d r = _mm256_div_pd(neg_a1, d);
        const __m256d dy = _mm256_sub_pd(yv, z);
        const __m256d dx = _mm256_sub_pd(z, xv);
        const __m256d sum = _mm256_fmadd_pd(b, _mm256_mul_pd(dy, dy),
                                            _mm256_mul_pd(r, _mm256_mul_pd(dx, dx)));
        _mm256_storeu_pd(rate + i, _mm256_sub_pd(_mm256_setzero_pd(), sum));
    }
    scalar::lyapunov_rate(k, x + i, y + i, rate + i, n - i);
}

}  // namespace hetbound::kernels::avx2
