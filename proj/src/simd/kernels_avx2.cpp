// Compiled with -mavx2 only (no -mfma): mul and add stay separate so the
// lanes round exactly like the scalar reference.

#include <immintrin.h>

#include "fkt/simd/kernels.hpp"

namespace fkt::simd::detail {

namespace {

inline __m256d lerp_table(const double* table, __m128i idx, __m256d frac) {
    const __m256d lo = _mm256_i32gather_pd(table, idx, 8);
    const __m256d hi = _mm256_i32gather_pd(table + 1, idx, 8);
    return _mm256_add_pd(lo, _mm256_mul_pd(frac, _mm256_sub_pd(hi, lo)));
}

void step_avx2(const StepTables& t, double* x, const double* noise, double* acc_a,
               double* acc_b, std::size_t count) {
    const __m256d n = _mm256_set1_pd(static_cast<double>(t.n));
    const __m256d dt = _mm256_set1_pd(t.dt);
    const __m256d sqrt_dt = _mm256_set1_pd(t.sqrt_dt);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d s = _mm256_mul_pd(xv, n);
        const __m256d fl = _mm256_floor_pd(s);
        const __m256d frac = _mm256_sub_pd(s, fl);
        const __m128i idx = _mm256_cvttpd_epi32(fl);

        if (t.integrand_a) {
            const __m256d v = _mm256_mul_pd(lerp_table(t.integrand_a, idx, frac), dt);
            _mm256_storeu_pd(acc_a + i, _mm256_add_pd(_mm256_loadu_pd(acc_a + i), v));
        }
        if (t.integrand_b) {
            const __m256d v = _mm256_mul_pd(lerp_table(t.integrand_b, idx, frac), dt);
            _mm256_storeu_pd(acc_b + i, _mm256_add_pd(_mm256_loadu_pd(acc_b + i), v));
        }
        const __m256d drift =
            t.drift ? _mm256_mul_pd(lerp_table(t.drift, idx, frac), dt) : zero;
        __m256d y = _mm256_add_pd(_mm256_add_pd(xv, drift),
                                  _mm256_mul_pd(sqrt_dt, _mm256_loadu_pd(noise + i)));
        y = _mm256_sub_pd(y, _mm256_floor_pd(y));
        const __m256d past_end = _mm256_cmp_pd(y, one, _CMP_GE_OQ);
        _mm256_storeu_pd(x + i, _mm256_blendv_pd(y, zero, past_end));
    }
    if (i < count) {
        step_scalar(t, x + i, noise + i, acc_a ? acc_a + i : nullptr, acc_b ? acc_b + i : nullptr,
                    count - i);
    }
}

void interpolate_avx2(const double* table, std::size_t n, const double* x, double* out,
                      std::size_t count) {
    const __m256d nv = _mm256_set1_pd(static_cast<double>(n));
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d s = _mm256_mul_pd(_mm256_loadu_pd(x + i), nv);
        const __m256d fl = _mm256_floor_pd(s);
        _mm256_storeu_pd(out + i,
                         lerp_table(table, _mm256_cvttpd_epi32(fl), _mm256_sub_pd(s, fl)));
    }
    if (i < count) interpolate_scalar(table, n, x + i, out + i, count - i);
}

}  // namespace

const KernelSet* avx2_kernel_set() noexcept {
    static const KernelSet set{"avx2", &step_avx2, &interpolate_avx2};
    return &set;
}

}  // namespace fkt::simd::detail
