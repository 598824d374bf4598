// Copyright 2026 The repcycle Authors
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


#include "repcycle/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

// Compiled with -mavx2 -mfma; only reached through the dispatch table after
// a CPUID check.

namespace repcycle::kernels::avx2 {

namespace {

// A __m256d holds two interleaved complex doubles: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline cplx hsum2(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

constexpr std::size_t kBlockK = 64;
constexpr std::size_t kBlockN = 256;

// crow[j0..j1) += sum_{q<count} a[q] * brows[q][j0..j1)
// Real and imaginary contributions are accumulated separately and merged
// with one addsub per vector.
inline void row_update(cplx* crow, std::size_t j0, std::size_t j1, const cplx* a, const cplx* const* brows,
                       std::size_t count) {
    __m256d ar[4];
    __m256d ai[4];
    for (std::size_t q = 0; q < count; ++q) {
        ar[q] = _mm256_set1_pd(a[q].real());
        ai[q] = _mm256_set1_pd(a[q].imag());
    }
    std::size_t j = j0;
    for (; j + 2 <= j1; j += 2) {
        __m256d acc_r = load2(crow + j);
        __m256d acc_i = _mm256_setzero_pd();
        for (std::size_t q = 0; q < count; ++q) {
            const __m256d b = load2(brows[q] + j);
            acc_r = _mm256_fmadd_pd(ar[q], b, acc_r);
            acc_i = _mm256_fmadd_pd(ai[q], swap_re_im(b), acc_i);
        }
        store2(crow + j, _mm256_addsub_pd(acc_r, acc_i));
    }
    for (; j < j1; ++j) {
        double cr = crow[j].real();
        double ci = crow[j].imag();
        for (std::size_t q = 0; q < count; ++q) {
            const cplx& b = brows[q][j];
            cr = std::fma(a[q].real(), b.real(), cr);
            cr = std::fma(-a[q].imag(), b.imag(), cr);
            ci = std::fma(a[q].real(), b.imag(), ci);
            ci = std::fma(a[q].imag(), b.real(), ci);
        }
        crow[j] = {cr, ci};
    }
}

}  // namespace

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    std::fill(c, c + m * n, cplx{});
    for (std::size_t p0 = 0; p0 < k; p0 += kBlockK) {
        const std::size_t p1 = std::min(k, p0 + kBlockK);
        for (std::size_t j0 = 0; j0 < n; j0 += kBlockN) {
            const std::size_t j1 = std::min(n, j0 + kBlockN);
            for (std::size_t i = 0; i < m; ++i) {
                cplx* crow = c + i * n;
                cplx coef[4];
                const cplx* brows[4];
                std::size_t count = 0;
                for (std::size_t p = p0; p < p1; ++p) {
                    const cplx av = a[i * k + p];
                    if (av.real() == 0.0 && av.imag() == 0.0) continue;
                    coef[count] = av;
                    brows[count] = b + p * n;
                    if (++count == 4) {
                        row_update(crow, j0, j1, coef, brows, count);
                        count = 0;
                    }
                }
                if (count > 0) row_update(crow, j0, j1, coef, brows, count);
            }
        }
    }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* row = a + i * n;
        __m256d acc_r = _mm256_setzero_pd();
        __m256d acc_i = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            const __m256d av = load2(row + j);
            const __m256d xv = load2(x + j);
            acc_r = _mm256_fmadd_pd(_mm256_movedup_pd(av), xv, acc_r);
            acc_i = _mm256_fmadd_pd(_mm256_permute_pd(av, 0b1111), swap_re_im(xv), acc_i);
        }
        cplx s = hsum2(_mm256_addsub_pd(acc_r, acc_i));
        for (; j < n; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

cplx dotc(std::size_t n, const cplx* a, const cplx* b) {
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d av = load2(a + j);
        const __m256d bv = load2(b + j);
        acc_r = _mm256_fmadd_pd(_mm256_movedup_pd(av), bv, acc_r);
        acc_i = _mm256_fmadd_pd(_mm256_permute_pd(av, 0b1111), swap_re_im(bv), acc_i);
    }
    // conj(a)*b: re = ar*br + ai*bi, im = ar*bi - ai*br
    const __m256d neg_i = _mm256_sub_pd(_mm256_setzero_pd(), acc_i);
    cplx s = hsum2(_mm256_addsub_pd(acc_r, neg_i));
    for (; j < n; ++j) s += std::conj(a[j]) * b[j];
    return s;
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d xv = load2(x + j);
        const __m256d t = _mm256_fmadd_pd(ar, xv, load2(y + j));
        store2(y + j, _mm256_addsub_pd(t, _mm256_mul_pd(ai, swap_re_im(xv))));
    }
    for (; j < n; ++j) y[j] += alpha * x[j];
}

}  // namespace repcycle::kernels::avx2
