// Copyright 2026 The fhsim Authors
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

#include "fhsim/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace fhsim::kernels {

namespace {

// (re + i*im) * v over two interleaved complex<double> lanes.
inline __m256d cmul(__m256d re, __m256d im, __m256d v) {
    const __m256d vs = _mm256_permute_pd(v, 0x5);
    return _mm256_fmaddsub_pd(re, v, _mm256_mul_pd(im, vs));
}

struct Coef {
    __m256d re, im;
    explicit Coef(cxd c) : re(_mm256_set1_pd(c.real())), im(_mm256_set1_pd(c.imag())) {}
};

}  // namespace

void apply_1q_avx2(cxd* a, std::size_t n, const cxd u[4], int q) {
    if (q == 0 || n < 4) {
        apply_1q_scalar(a, n, u, q);
        return;
    }
    const std::size_t bit = std::size_t{1} << q;
    const Coef u00(u[0]), u01(u[1]), u10(u[2]), u11(u[3]);
    auto* d = reinterpret_cast<double*>(a);
    for (std::size_t base = 0; base < n; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; i += 2) {
            double* p0 = d + 2 * i;
            double* p1 = d + 2 * (i | bit);
            const __m256d a0 = _mm256_loadu_pd(p0);
            const __m256d a1 = _mm256_loadu_pd(p1);
            const __m256d r0 = _mm256_add_pd(cmul(u00.re, u00.im, a0), cmul(u01.re, u01.im, a1));
            const __m256d r1 = _mm256_add_pd(cmul(u10.re, u10.im, a0), cmul(u11.re, u11.im, a1));
            _mm256_storeu_pd(p0, r0);
            _mm256_storeu_pd(p1, r1);
        }
    }
}

void apply_2q_avx2(cxd* a, std::size_t n, const cxd u[16], int q1, int q2) {
    const int qmin = std::min(q1, q2);
    if (qmin == 0 || n < 8) {
        apply_2q_scalar(a, n, u, q1, q2);
        return;
    }
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t b2 = std::size_t{1} << q2;
    const std::size_t lo = std::min(b1, b2);
    const std::size_t hi = std::max(b1, b2);
    Coef c[16] = {Coef(u[0]),  Coef(u[1]),  Coef(u[2]),  Coef(u[3]), Coef(u[4]),  Coef(u[5]),
                  Coef(u[6]),  Coef(u[7]),  Coef(u[8]),  Coef(u[9]), Coef(u[10]), Coef(u[11]),
                  Coef(u[12]), Coef(u[13]), Coef(u[14]), Coef(u[15])};
    auto* d = reinterpret_cast<double*>(a);
    for (std::size_t blk = 0; blk < n; blk += 2 * hi) {
        for (std::size_t mid = blk; mid < blk + hi; mid += 2 * lo) {
            for (std::size_t i = mid; i < mid + lo; i += 2) {
                double* p00 = d + 2 * i;
                double* p01 = d + 2 * (i | b2);
                double* p10 = d + 2 * (i | b1);
                double* p11 = d + 2 * (i | b1 | b2);
                const __m256d a00 = _mm256_loadu_pd(p00);
                const __m256d a01 = _mm256_loadu_pd(p01);
                const __m256d a10 = _mm256_loadu_pd(p10);
                const __m256d a11 = _mm256_loadu_pd(p11);
                __m256d r0 = _mm256_add_pd(cmul(c[0].re, c[0].im, a00), cmul(c[1].re, c[1].im, a01));
                r0 = _mm256_add_pd(r0, _mm256_add_pd(cmul(c[2].re, c[2].im, a10), cmul(c[3].re, c[3].im, a11)));
                __m256d r1 = _mm256_add_pd(cmul(c[4].re, c[4].im, a00), cmul(c[5].re, c[5].im, a01));
                r1 = _mm256_add_pd(r1, _mm256_add_pd(cmul(c[6].re, c[6].im, a10), cmul(c[7].re, c[7].im, a11)));
                __m256d r2 = _mm256_add_pd(cmul(c[8].re, c[8].im, a00), cmul(c[9].re, c[9].im, a01));
                r2 = _mm256_add_pd(r2, _mm256_add_pd(cmul(c[10].re, c[10].im, a10), cmul(c[11].re, c[11].im, a11)));
                __m256d r3 = _mm256_add_pd(cmul(c[12].re, c[12].im, a00), cmul(c[13].re, c[13].im, a01));
                r3 = _mm256_add_pd(r3, _mm256_add_pd(cmul(c[14].re, c[14].im, a10), cmul(c[15].re, c[15].im, a11)));
                _mm256_storeu_pd(p00, r0);
                _mm256_storeu_pd(p01, r1);
                _mm256_storeu_pd(p10, r2);
                _mm256_storeu_pd(p11, r3);
            }
        }
    }
}

}  // namespace fhsim::kernels
