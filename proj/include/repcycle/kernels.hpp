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


#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace repcycle::kernels {

using cplx = std::complex<double>;

// Instruction-set variants. Every variant computes the same function; they
// differ only in rounding (the AVX2 path contracts multiply-adds into FMA).
enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Row-major dense complex kernels. Output buffers must not alias inputs.
struct KernelTable {
    // C[m x n] = A[m x k] * B[k x n]
    void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);
    // y[m] = A[m x n] * x[n]
    void (*gemv)(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y);
    // sum_i conj(a_i) * b_i
    cplx (*dotc)(std::size_t n, const cplx* a, const cplx* b);
    // y += alpha * x
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
};

bool isa_supported(Isa isa);

// Table for a specific variant; throws std::invalid_argument if the variant
// was not compiled in or the CPU lacks it.
const KernelTable& table(Isa isa);

// Variant chosen once per process: the best supported one, unless the
// REPCYCLE_ISA environment variable names another ("scalar" or "avx2").
Isa active_isa();
const KernelTable& active();

namespace scalar {
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* a, const cplx* b);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace scalar

#if defined(REPCYCLE_HAVE_AVX2)
namespace avx2 {
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* a, const cplx* b);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace avx2
#endif

}  // namespace repcycle::kernels
