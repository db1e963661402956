// Copyright 2026 The qnet-energy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include "qnet/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define QNET_HAVE_AVX2 1
#else
#define QNET_HAVE_AVX2 0
#endif

namespace qnet::kernels::avx2 {

#if QNET_HAVE_AVX2

namespace {

// exp(x) for 4 doubles. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, Taylor to r^13.
inline __m256d exp_pd(__m256d x) {
    const __m256d hi_lim = _mm256_set1_pd(709.782712893384);
    const __m256d lo_lim = _mm256_set1_pd(-708.39641853226408);
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    __m256d overflow = _mm256_cmp_pd(x, hi_lim, _CMP_GT_OQ);
    __m256d underflow = _mm256_cmp_pd(x, lo_lim, _CMP_LT_OQ);
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo_lim), hi_lim);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, xc);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    static constexpr double c[14] = {
        1.0,
        1.0,
        1.0 / 2,
        1.0 / 6,
        1.0 / 24,
        1.0 / 120,
        1.0 / 720,
        1.0 / 5040,
        1.0 / 40320,
        1.0 / 362880,
        1.0 / 3628800,
        1.0 / 39916800,
        1.0 / 479001600,
        1.0 / 6227020800,
    };
    __m256d p = _mm256_set1_pd(c[13]);
    for (int i = 12; i >= 0; i--) {
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));
    }

    // 2^n split in two factors so n near +-1023 stays representable.
    __m128i ni = _mm256_cvtpd_epi32(n);
    __m128i n1 = _mm_srai_epi32(ni, 1);
    __m128i n2 = _mm_sub_epi32(ni, n1);
    auto pow2 = [](__m128i k) {
        __m256i k64 = _mm256_cvtepi32_epi64(k);
        k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
        return _mm256_castsi256_pd(_mm256_slli_epi64(k64, 52));
    };
    __m256d y = _mm256_mul_pd(_mm256_mul_pd(p, pow2(n1)), pow2(n2));
    y = _mm256_blendv_pd(y, _mm256_set1_pd(INFINITY), overflow);
    y = _mm256_blendv_pd(y, _mm256_setzero_pd(), underflow);
    return y;
}

}  // namespace

bool compiled() {
    return true;
}

void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s) {
    const double k = p.loss_dB_per_km * std::numbers::ln10 / 10;
    const double t0 = p.n_target_bits == 0 ? 0.0 : p.n_target_bits / p.rate_at_zero_bps;
    const __m256d vk = _mm256_set1_pd(k);
    const __m256d vt0 = _mm256_set1_pd(t0);
    const __m256d vp = _mm256_set1_pd(p.power_W);
    const __m256d ve0 = _mm256_set1_pd(p.startup_J);
    const size_t n = distances_km.size();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(distances_km.data() + i);
        __m256d t = _mm256_mul_pd(vt0, exp_pd(_mm256_mul_pd(vk, d)));
        _mm256_storeu_pd(runtime_s.data() + i, t);
        _mm256_storeu_pd(energy_J.data() + i, _mm256_fmadd_pd(vp, t, ve0));
    }
    if (i < n) {
        alignas(32) double dbuf[4] = {0, 0, 0, 0};
        alignas(32) double tbuf[4];
        alignas(32) double ebuf[4];
        for (size_t j = i; j < n; j++) {
            dbuf[j - i] = distances_km[j];
        }
        __m256d t = _mm256_mul_pd(vt0, exp_pd(_mm256_mul_pd(vk, _mm256_load_pd(dbuf))));
        _mm256_store_pd(tbuf, t);
        _mm256_store_pd(ebuf, _mm256_fmadd_pd(vp, t, ve0));
        for (size_t j = i; j < n; j++) {
            runtime_s[j] = tbuf[j - i];
            energy_J[j] = ebuf[j - i];
        }
    }
}

#else

bool compiled() {
    return false;
}

void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s) {
    scalar::dv_energy_curve(distances_km, p, energy_J, runtime_s);
}

#endif

}  // namespace qnet::kernels::avx2
