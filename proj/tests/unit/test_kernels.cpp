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


#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "repcycle/kernels.hpp"

namespace {

using repcycle::kernels::cplx;
using repcycle::kernels::Isa;

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {u(eng), u(eng)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Naive triple loop, kept apart from the scalar kernel it checks.
std::vector<cplx> naive_gemm(std::size_t m, std::size_t k, std::size_t n, const std::vector<cplx>& a,
                             const std::vector<cplx>& b) {
    std::vector<cplx> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t p = 0; p < k; ++p) c[i * n + j] += a[i * k + p] * b[p * n + j];
    return c;
}

struct Shape {
    std::size_t m, k, n;
};

const Shape kShapes[] = {{1, 1, 1}, {2, 2, 2}, {3, 5, 7}, {4, 4, 4}, {16, 16, 16}, {17, 33, 9},
                         {64, 64, 64}, {65, 130, 257}, {256, 256, 1}, {1, 300, 300}};

TEST(ScalarKernels, GemmMatchesNaiveLoop) {
    std::mt19937_64 eng(1);
    for (const auto& s : kShapes) {
        const auto a = random_vec(s.m * s.k, eng);
        const auto b = random_vec(s.k * s.n, eng);
        std::vector<cplx> c(s.m * s.n, cplx(9.0, 9.0));
        repcycle::kernels::scalar::gemm(s.m, s.k, s.n, a.data(), b.data(), c.data());
        EXPECT_LT(max_diff(c, naive_gemm(s.m, s.k, s.n, a, b)), 1e-12 * static_cast<double>(s.k));
    }
}

TEST(ScalarKernels, DotcConjugatesFirstArgument) {
    const std::vector<cplx> a{{0.0, 1.0}, {2.0, 0.0}};
    const std::vector<cplx> b{{0.0, 1.0}, {1.0, 1.0}};
    const cplx d = repcycle::kernels::scalar::dotc(2, a.data(), b.data());
    EXPECT_DOUBLE_EQ(d.real(), 3.0);
    EXPECT_DOUBLE_EQ(d.imag(), 2.0);
}

TEST(Dispatch, ScalarAlwaysSupported) {
    EXPECT_TRUE(repcycle::kernels::isa_supported(Isa::scalar));
    EXPECT_NO_THROW(repcycle::kernels::table(Isa::scalar));
    EXPECT_TRUE(repcycle::kernels::isa_supported(repcycle::kernels::active_isa()));
}

class IsaEquivalence : public ::testing::Test {
  protected:
    void SetUp() override {
        if (!repcycle::kernels::isa_supported(Isa::avx2)) GTEST_SKIP() << "AVX2 not available";
    }
    const repcycle::kernels::KernelTable& ref = repcycle::kernels::table(Isa::scalar);
    const repcycle::kernels::KernelTable& vec() { return repcycle::kernels::table(Isa::avx2); }
};

TEST_F(IsaEquivalence, Gemm) {
    std::mt19937_64 eng(2);
    for (const auto& s : kShapes) {
        const auto a = random_vec(s.m * s.k, eng);
        const auto b = random_vec(s.k * s.n, eng);
        std::vector<cplx> c0(s.m * s.n), c1(s.m * s.n, cplx(7.0, -7.0));
        ref.gemm(s.m, s.k, s.n, a.data(), b.data(), c0.data());
        vec().gemm(s.m, s.k, s.n, a.data(), b.data(), c1.data());
        EXPECT_LT(max_diff(c0, c1), 1e-13 * static_cast<double>(s.k)) << s.m << "x" << s.k << "x" << s.n;
    }
}

TEST_F(IsaEquivalence, GemmWithZeroEntries) {
    std::mt19937_64 eng(3);
    auto a = random_vec(40 * 40, eng);
    for (std::size_t i = 0; i < a.size(); i += 3) a[i] = 0.0;
    const auto b = random_vec(40 * 40, eng);
    std::vector<cplx> c0(1600), c1(1600);
    ref.gemm(40, 40, 40, a.data(), b.data(), c0.data());
    vec().gemm(40, 40, 40, a.data(), b.data(), c1.data());
    EXPECT_LT(max_diff(c0, c1), 1e-12);
}

TEST_F(IsaEquivalence, GemvDotcAxpy) {
    std::mt19937_64 eng(4);
    for (std::size_t n : {1u, 2u, 3u, 7u, 8u, 31u, 256u, 1025u}) {
        const auto a = random_vec(n * n, eng);
        const auto x = random_vec(n, eng);
        std::vector<cplx> y0(n), y1(n);
        ref.gemv(n, n, a.data(), x.data(), y0.data());
        vec().gemv(n, n, a.data(), x.data(), y1.data());
        EXPECT_LT(max_diff(y0, y1), 1e-13 * static_cast<double>(n));

        const auto b = random_vec(n, eng);
        EXPECT_LT(std::abs(ref.dotc(n, x.data(), b.data()) - vec().dotc(n, x.data(), b.data())),
                  1e-13 * static_cast<double>(n));

        std::vector<cplx> z0 = b, z1 = b;
        ref.axpy(n, cplx(0.3, -1.1), x.data(), z0.data());
        vec().axpy(n, cplx(0.3, -1.1), x.data(), z1.data());
        EXPECT_LT(max_diff(z0, z1), 1e-15);
    }
}

}  // namespace
