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

#include <algorithm>

namespace repcycle::kernels::scalar {

// Reference kernels. Complex products are spelled out on real/imaginary
// parts so the compiler cannot fall back to the Annex G NaN-checking path.

namespace {
inline void mul_acc(double ar, double ai, const cplx& b, double& cr, double& ci) {
    cr += ar * b.real() - ai * b.imag();
    ci += ar * b.imag() + ai * b.real();
}
}  // namespace

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    std::fill(c, c + m * n, cplx{});
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            if (ar == 0.0 && ai == 0.0) continue;
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                double cr = crow[j].real();
                double ci = crow[j].imag();
                mul_acc(ar, ai, brow[j], cr, ci);
                crow[j] = {cr, ci};
            }
        }
    }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < m; ++i) {
        double sr = 0.0;
        double si = 0.0;
        const cplx* row = a + i * n;
        for (std::size_t j = 0; j < n; ++j) mul_acc(row[j].real(), row[j].imag(), x[j], sr, si);
        y[i] = {sr, si};
    }
}

cplx dotc(std::size_t n, const cplx* a, const cplx* b) {
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t i = 0; i < n; ++i) mul_acc(a[i].real(), -a[i].imag(), b[i], sr, si);
    return {sr, si};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double yr = y[i].real();
        double yi = y[i].imag();
        mul_acc(ar, ai, x[i], yr, yi);
        y[i] = {yr, yi};
    }
}

}  // namespace repcycle::kernels::scalar
