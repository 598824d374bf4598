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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "repcycle/channels.hpp"
#include "repcycle/dynamics.hpp"

namespace {

using namespace repcycle;

constexpr double kXi = 1e-3;

double elem(const Superoperator& l, const LiouvilleVector& v) { return liouville_inner(v, l.apply(v)).real(); }

const ChannelKind kAllKinds[] = {ChannelKind::spontaneous_emission, ChannelKind::excitation, ChannelKind::depolarizing,
                                 ChannelKind::decoherence, ChannelKind::thermal};

TEST(Dissipator, SpontaneousEmissionElements) {
    const auto l = dissipator_single(ChannelKind::spontaneous_emission, kXi);
    EXPECT_NEAR(elem(l, up_l()), -kXi, 1e-12);
    EXPECT_NEAR(elem(l, down_l()), 0.0, 1e-12);
    EXPECT_NEAR(elem(l, plus_l()), -kXi / 4, 1e-12);
    EXPECT_EQ(l.kind(), SuperKind::dissipator);
}

TEST(Dissipator, DepolarizingElements) {
    const auto l = dissipator_single(ChannelKind::depolarizing, kXi);
    EXPECT_NEAR(elem(l, up_l()), -kXi, 1e-12);
    EXPECT_NEAR(elem(l, down_l()), -kXi, 1e-12);
    EXPECT_NEAR(elem(l, plus_l()), -kXi / 2, 1e-12);
}

TEST(Dissipator, DecoherenceElements) {
    const auto l = dissipator_single(ChannelKind::decoherence, kXi);
    EXPECT_NEAR(elem(l, up_l()), 0.0, 1e-12);
    EXPECT_NEAR(elem(l, down_l()), 0.0, 1e-12);
    EXPECT_NEAR(elem(l, plus_l()), -kXi / 2, 1e-12);
}

TEST(Dissipator, DecoherenceEqualsHalfXiZZMinusIdentity) {
    const auto l = dissipator_single(ChannelKind::decoherence, kXi);
    const double diag[] = {0.0, -kXi, -kXi, 0.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(l.matrix()(i, j) - cplx(i == j ? diag[i] : 0.0)), 0.0, 1e-18);
}

TEST(Dissipator, SpontaneousEmissionMatchesKroneckerFormula) {
    // ξ[a⊗(a†)ᵗ − ½a†a⊗I − ½I⊗a†a] written out by hand.
    const auto l = dissipator_single(ChannelKind::spontaneous_emission, kXi);
    CMatrix want(4, 4);
    want(liouville_index(1, 1, 2), liouville_index(0, 0, 2)) = kXi;  // |up><up| -> |down><down|
    want(0, 0) = -kXi;
    want(1, 1) = -kXi / 2;
    want(2, 2) = -kXi / 2;
    EXPECT_LT(max_abs_diff(l.matrix(), want), 1e-18);
}

TEST(Dissipator, ZeroRateIsZero) {
    for (auto kind : kAllKinds) {
        const auto l = dissipator_single(kind, 0.0, 0.5);
        for (const cplx& z : l.matrix().values()) EXPECT_EQ(z, cplx(0.0));
    }
}

TEST(Dissipator, RejectsNegativeRate) {
    EXPECT_THROW(dissipator_single(ChannelKind::decoherence, -1e-3), ValidationError);
    EXPECT_THROW(parse_channel_kind("amplitude"), ValidationError);
}

TEST(Property, TracePreservingAndPureElementsNonpositive) {
    std::mt19937_64 eng(31);
    std::normal_distribution<double> nd;
    const LiouvilleVector id = vectorize(CMatrix::identity(2));
    for (auto kind : kAllKinds) {
        const auto l = dissipator_single(kind, 0.37, 0.8);
        for (std::size_t c = 0; c < 4; ++c) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < 4; ++r) s += std::conj(id[r]) * l.matrix()(r, c);
            EXPECT_LT(std::abs(s), 1e-12) << channel_name(kind);
        }
        for (int draw = 0; draw < 50; ++draw) {
            const auto v = vectorize(DensityMatrix::pure(std::vector<cplx>{{nd(eng), nd(eng)}, {nd(eng), nd(eng)}}));
            const cplx e = liouville_inner(v, l.apply(v));
            EXPECT_LE(e.real(), 1e-12);
            EXPECT_LT(std::abs(e.imag()), 1e-12);
        }
        if (is_hermitian_lindblad(kind)) EXPECT_TRUE(is_hermitian(l.matrix(), 1e-12)) << channel_name(kind);
    }
    EXPECT_FALSE(is_hermitian(dissipator_single(ChannelKind::spontaneous_emission, 0.1).matrix(), 1e-6));
}

TEST(Embed, SingleQubitIsUnchanged) {
    const auto l = dissipator_single(ChannelKind::depolarizing, kXi);
    EXPECT_EQ(embed(l, 0, 1).matrix(), l.matrix());
    EXPECT_THROW(embed(l, 2, 2), ShapeError);
}

TEST(Embed, DependsOnlyOnTargetFactor) {
    const auto l = embed(dissipator_single(ChannelKind::decoherence, kXi), 0, 2);
    const double s = 1.0 / std::sqrt(2.0);
    const auto rho = DensityMatrix::pure(std::vector<cplx>{s, 0.0, s, 0.0});  // |+>|up>
    EXPECT_NEAR(elem(l, vectorize(rho)), -kXi / 2, 1e-15);
}

TEST(Embed, MatchesKroneckerLiftOracle) {
    // For row-major vectorization, vec((A⊗B) ρ (C⊗D)) lifts to a permuted
    // Kronecker product; compare against the Hilbert-space action instead.
    std::mt19937_64 eng(32);
    for (std::size_t q : {0u, 1u, 2u}) {
        const auto local = dissipator_single(ChannelKind::spontaneous_emission, 0.2);
        const auto lifted = embed(local, q, 3);
        const CMatrix a = embed_operator(CMatrix{{0.0, 0.0}, {1.0, 0.0}}, q, 3);
        const oracle::Dense rho = oracle::random_density(8, eng);
        const CMatrix r = oracle::to(rho);
        const CMatrix ad = adjoint(a);
        CMatrix want = a * r * ad;
        want -= cplx(0.5) * (ad * a * r + r * ad * a);
        want *= cplx(0.2);
        EXPECT_LT(max_abs_diff(devectorize(lifted.apply(vectorize(r))), want), 1e-15) << q;
    }
}

TEST(Assemble, AdditiveOverQubits) {
    const NoiseModel m{2, {{ChannelKind::decoherence, 1e-3, 0, 0.0}, {ChannelKind::decoherence, 4e-4, 1, 0.0}}};
    const auto l = assemble(m);
    const auto rho = DensityMatrix::pure(std::vector<cplx>{0.5, 0.5, 0.5, 0.5});
    EXPECT_NEAR(elem(l, vectorize(rho)), -(1e-3 + 4e-4) / 2, 1e-15);
}

TEST(Assemble, EmptyModelIsZeroAndRepeatedChannelsSum) {
    const auto zero = assemble(NoiseModel{3, {}});
    EXPECT_EQ(zero.dim2(), 64u);
    for (const cplx& z : zero.matrix().values()) EXPECT_EQ(z, cplx(0.0));

    const NoiseModel twice{1, {{ChannelKind::decoherence, 1e-3, 0, 0.0}, {ChannelKind::decoherence, 2e-3, 0, 0.0}}};
    EXPECT_LT(max_abs_diff(assemble(twice).matrix(), dissipator_single(ChannelKind::decoherence, 3e-3).matrix()), 1e-18);
}

TEST(Assemble, RejectsBadModel) {
    EXPECT_THROW(assemble(NoiseModel{2, {{ChannelKind::decoherence, 1e-3, 2, 0.0}}}), ValidationError);
    EXPECT_THROW(assemble(NoiseModel{2, {{ChannelKind::thermal, 1e-3, 0, INFINITY}}}), ValidationError);
}

TEST(ThermalRatio, InfiniteTemperature) {
    EXPECT_NEAR(thermal_ratio(dissipator_single(ChannelKind::thermal, 2e-3, 0.0)), 1.0, 1e-14);
}

TEST(ThermalRatio, DetailedBalance) {
    EXPECT_NEAR(thermal_ratio(dissipator_single(ChannelKind::thermal, 2e-3, 1.0)), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(thermal_ratio(dissipator_single(ChannelKind::thermal, 5e-2, 2.5)), std::exp(-2.5), 1e-12);
}

TEST(ThermalRatio, SpontaneousEmissionIsNonThermal) {
    EXPECT_THROW(thermal_ratio(dissipator_single(ChannelKind::spontaneous_emission, 1e-3)), NonThermalChannel);
    EXPECT_THROW(thermal_ratio(dissipator_single(ChannelKind::decoherence, 1e-3)), NonThermalChannel);
}

}  // namespace
