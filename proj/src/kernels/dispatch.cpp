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


#include <cstdlib>
#include <stdexcept>
#include <string>

#include "repcycle/kernels.hpp"

namespace repcycle::kernels {

namespace {

constexpr KernelTable kScalarTable{&scalar::gemm, &scalar::gemv, &scalar::dotc, &scalar::axpy};

#if defined(REPCYCLE_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::gemm, &avx2::gemv, &avx2::dotc, &avx2::axpy};
#endif

bool cpu_has_avx2_fma() {
#if defined(REPCYCLE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa select_isa() {
    if (const char* env = std::getenv("REPCYCLE_ISA")) {
        const std::string name(env);
        if (name == "scalar") return Isa::scalar;
        if (name == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) {
    if (isa == Isa::scalar) return true;
    static const bool avx2 = cpu_has_avx2_fma();
    return avx2;
}

const KernelTable& table(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
    }
#if defined(REPCYCLE_HAVE_AVX2)
    if (isa == Isa::avx2) return kAvx2Table;
#endif
    return kScalarTable;
}

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

const KernelTable& active() {
    static const KernelTable& t = table(active_isa());
    return t;
}

}  // namespace repcycle::kernels
