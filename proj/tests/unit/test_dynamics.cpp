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
#include "repcycle/dynamics.hpp"
#include "repcycle/experiments.hpp"

namespace {

using namespace repcycle;

CircuitSpec dephasing_qubit(double xi) {
    CircuitSpec s;
    s.qubits = 1;
    s.noise = NoiseModel{1, {{ChannelKind::decoherence, xi, 0, 0.0}}};
    return s;
}

CircuitSpec xx_pair(double g) {
    CircuitSpec s;
    s.qubits = 2;
    const CMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    s.hamiltonian = Observable(cplx(g) * kron(x, x), "gXX");
    s.noise = NoiseModel{2, {}};
    return s;
}

DensityMatrix plus_rho(std::size_t n) { return DensityMatrix::pure(plus_state(n)); }

TEST(Propagator, ZeroSpecIsIdentity) {
    CircuitSpec s;
    s.qubits = 2;
    s.hamiltonian = Observable(CMatrix(4, 4));
    s.noise = NoiseModel{2, {}};
    const auto k = propagator(s);
    EXPECT_EQ(k.kind(), SuperKind::propagator);
    EXPECT_LT(max_abs_diff(k.matrix(), CMatrix::identity(16)), 1e-15);
}

TEST(Propagator, NoiselessIsUnitary) {
    const auto k = propagator(random_circuit(2, 0.3, 5));
    EXPECT_LT(max_abs_diff(adjoint(k.matrix()) * k.matrix(), CMatrix::identity(16)), 1e-10);
}

TEST(Propagator, DephasingDecaysCoherences) {
    const double xi = 0.013;
    const auto k = propagator(dephasing_qubit(xi));
    EXPECT_NEAR(k.matrix()(1, 1).real(), std::exp(-xi), 1e-14);
    EXPECT_NEAR(k.matrix()(2, 2).real(), std::exp(-xi), 1e-14);
    EXPECT_NEAR(k.matrix()(0, 0).real(), 1.0, 1e-14);
}

TEST(Propagator, GammaScalesHamiltonian) {
    CircuitSpec a = random_circuit(2, 0.3, 6);
    CircuitSpec b = a;
    a.gamma = 0.5;
    b.hamiltonian = Observable(cplx(0.5) * a.hamiltonian.matrix());
    EXPECT_LT(max_abs_diff(propagator(a).matrix(), propagator(b).matrix()), 1e-14);
    a.gamma = 0.0;
    EXPECT_THROW(propagator(a), ValidationError);
}

TEST(RunCycles, IdentityDynamicsGivesConstantSurvival) {
    CircuitSpec s;
    s.qubits = 1;
    s.hamiltonian = Observable(CMatrix(2, 2));
    s.noise = NoiseModel{1, {}};
    const auto rho = plus_rho(1);
    const auto t = run_cycles(s, rho, {Observable(rho.matrix())}, 5)[0];
    ASSERT_EQ(t.values.size(), 6u);
    for (double v : t.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(RunCycles, DephasingSurvivalClosedForm) {
    const double xi = 0.02;
    const auto rho = plus_rho(1);
    const auto t = run_cycles(dephasing_qubit(xi), rho, {Observable(rho.matrix())}, 6)[0];
    for (int k = 0; k <= 6; ++k) EXPECT_NEAR(t.values[k], oracle::dephasing_survival(xi, k), 1e-14);
}

TEST(RunCycles, MixedStateSurvivalIsWeightedReturnProbability) {
    // ρ0 = Σ p_i |i><i|; tr[ρ0 K(ρ0)] = Σ_ij p_i p_j <j|K(|i><i|)|j>.
    const CircuitSpec s = [] {
        CircuitSpec c = random_circuit(2, 0.2, 9);
        c.noise = NoiseModel{2, {{ChannelKind::spontaneous_emission, 0.05, 0, 0.0}}};
        return c;
    }();
    const std::vector<double> p{0.5, 0.3, 0.15, 0.05};
    const std::vector<cplx> pc(p.begin(), p.end());
    const DensityMatrix rho(CMatrix::diagonal(pc));
    const auto t = run_cycles(s, rho, {Observable(rho.matrix())}, 2)[0];
    const CycleMap map = CycleMap::for_spec(s);
    double want = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const CMatrix out = map.apply(outer(basis_state(2, i)));
        for (std::size_t j = 0; j < 4; ++j) want += p[i] * p[j] * out(j, j).real();
    }
    EXPECT_NEAR(t.values[1], want, 1e-14);
}

TEST(RunCycles, RequiresTwoCycles) {
    const auto rho = plus_rho(1);
    EXPECT_THROW(run_cycles(dephasing_qubit(0.1), rho, {Observable(rho.matrix())}, 1), ValidationError);
}

TEST(CycleMap, MatrixFreeMatchesDense) {
    CircuitSpec s = random_circuit(3, 0.2, 10);
    s.noise = NoiseModel{3,
                         {{ChannelKind::thermal, 0.01, 0, 0.3}, {ChannelKind::decoherence, 0.02, 2, 0.0},
                          {ChannelKind::spontaneous_emission, 0.005, 1, 0.0}}};
    s.gamma = 0.7;
    const auto rho = plus_rho(3);
    const std::vector<Observable> obs{pauli_x_on(0, 3), pauli_x_on(2, 3), Observable(rho.matrix())};
    const auto dense = run_cycles(s, rho, obs, 4, Propagation::dense);
    const auto free = run_cycles(s, rho, obs, 4, Propagation::matrix_free);
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t k = 0; k <= 4; ++k) EXPECT_NEAR(dense[i].values[k], free[i].values[k], 1e-13);
}

TEST(Property, TraceAndUnitalPurityMonotone) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        CircuitSpec s = random_circuit(2, 0.3, seed);
        s.noise = NoiseModel{2, {{ChannelKind::decoherence, 0.03, 0, 0.0}, {ChannelKind::depolarizing, 0.02, 1, 0.0}}};
        const CycleMap map = CycleMap::for_spec(s);
        std::mt19937_64 eng(seed);
        CMatrix rho = oracle::to(oracle::random_density(4, eng));
        double prev = purity(DensityMatrix(rho));
        for (int k = 1; k <= 10; ++k) {
            rho = map.apply(rho);
            EXPECT_NEAR(trace(rho).real(), 1.0, 1e-10);
            const double p = purity(DensityMatrix(rho));
            EXPECT_LE(p, prev + 1e-12);
            prev = p;
        }
    }
}

TEST(Property, NonUnitalTracePreserved) {
    CircuitSpec s = random_circuit(3, 0.3, 77);
    s.noise = NoiseModel{3, {{ChannelKind::spontaneous_emission, 0.1, 1, 0.0}, {ChannelKind::thermal, 0.05, 2, 1.0}}};
    const CycleMap map = CycleMap::for_spec(s);
    CMatrix rho = plus_rho(3).matrix();
    for (int k = 1; k <= 10; ++k) {
        rho = map.apply(rho);
        EXPECT_NEAR(std::abs(trace(rho) - 1.0), 0.0, 1e-10);
    }
}

TEST(Reset, NoCouplingEvolvesAAlone) {
    // H acts on qubit 0 only; A = {0}, B = {1}.
    CircuitSpec s;
    s.qubits = 2;
    const CMatrix h1{{0.3, cplx(0.1, -0.2)}, {cplx(0.1, 0.2), -0.1}};
    s.hamiltonian = Observable(kron(h1, CMatrix::identity(2)));
    s.noise = NoiseModel{2, {}};
    const ResetSpec reset{{0}, {1}, basis_state(1, 0)};
    const auto states = run_reset_cycles(s, reset, plus_state(1), 3);
    const CMatrix u = expm(cplx(0.0, -1.0) * h1);
    CMatrix rho = plus_rho(1).matrix();
    for (int k = 0; k <= 3; ++k) {
        EXPECT_LT(max_abs_diff(states[k].matrix(), rho), 1e-13);
        rho = u * rho * adjoint(u);
    }
}

TEST(Reset, FirstCycleEqualsNoReset) {
    const CircuitSpec s = random_circuit(3, 0.2, 21);
    const ResetSpec reset{{0, 2}, {1}, basis_state(1, 1)};
    const auto states = run_reset_cycles(s, reset, basis_state(2, 0), 2);
    const CMatrix full = compose_subsystems(outer(basis_state(2, 0)), {0, 2}, outer(basis_state(1, 1)), {1}, 3);
    const CMatrix after = CycleMap::for_spec(s).apply(full);
    const std::vector<std::size_t> dims{2, 2, 2}, keep{0, 2};
    EXPECT_LT(max_abs_diff(states[1].matrix(), partial_trace(after, keep, dims)), 1e-14);
}

TEST(Reset, XXClosedForm) {
    const auto states = run_reset_cycles(xx_pair(0.1), ResetSpec{{0}, {1}, basis_state(1, 0)}, basis_state(1, 0), 2);
    EXPECT_NEAR(purity(states[1]), oracle::xx_reduced_purity(0.1), 1e-12);
    EXPECT_NEAR(purity(states[1]), 0.980265, 1e-6);
}

TEST(Reset, EmptyBDegeneratesToRunCycles) {
    CircuitSpec s = random_circuit(2, 0.3, 22);
    s.noise = NoiseModel{2, {{ChannelKind::decoherence, 0.01, 1, 0.0}}};
    const auto psi = plus_state(2);
    const auto states = run_reset_cycles(s, ResetSpec{{0, 1}, {}, {cplx(1.0)}}, psi, 3);
    const auto rho0 = DensityMatrix::pure(psi);
    const auto plain = run_cycles(s, rho0, {Observable(rho0.matrix())}, 3)[0];
    const auto reset = reset_survival_trace(states);
    EXPECT_EQ(reset.protocol, TraceProtocol::reset);
    for (int k = 0; k <= 3; ++k) EXPECT_NEAR(reset.values[k], plain.values[k], 1e-14);
}

TEST(Reset, RejectsBadPartition) {
    const CircuitSpec s = random_circuit(3, 0.2, 1);
    EXPECT_THROW(run_reset_cycles(s, ResetSpec{{0, 1}, {1, 2}, basis_state(2, 0)}, basis_state(2, 0), 2),
                 ValidationError);
    EXPECT_THROW(run_reset_cycles(s, ResetSpec{{0}, {1}, basis_state(1, 0)}, basis_state(1, 0), 2), ValidationError);
}

TEST(Inverse, NoiselessInverseUndoesCircuit) {
    const CircuitSpec s = random_circuit(2, 0.3, 23);
    const auto k = propagator(s);
    const auto ki = inverse_circuit(s, Observable(CMatrix(4, 4)));
    EXPECT_LT(max_abs_diff(ki.matrix() * k.matrix(), CMatrix::identity(16)), 1e-10);
}

TEST(Inverse, PurityChangeDoublesToFirstOrder) {
    const auto rho0 = plus_rho(2);
    std::vector<double> xs, residual;
    for (double xi : {1e-5, 1e-4, 1e-3}) {
        CircuitSpec s = random_circuit(2, 0.3, 24);
        s.noise = NoiseModel{2, {{ChannelKind::decoherence, xi, 0, 0.0}, {ChannelKind::decoherence, xi, 1, 0.0}}};
        const auto v1 = propagator(s).apply(vectorize(rho0));
        const auto v2 = inverse_circuit(s, Observable(CMatrix(4, 4))).apply(v1);
        const double d1 = purity(DensityMatrix(devectorize(v1))) - 1.0;
        const double d2 = purity(DensityMatrix(devectorize(v2))) - 1.0;
        xs.push_back(xi);
        residual.push_back(d2 - 2.0 * d1);
    }
    EXPECT_NEAR(loglog_slope(xs, residual), 2.0, 0.1);
}

TEST(RandomCircuit, Deterministic) {
    const auto a = random_circuit(3, 0.1, 42);
    const auto b = random_circuit(3, 0.1, 42);
    EXPECT_EQ(a.hamiltonian.matrix(), b.hamiltonian.matrix());
    EXPECT_NE(a.hamiltonian.matrix(), random_circuit(3, 0.1, 43).hamiltonian.matrix());
    EXPECT_TRUE(is_hermitian(a.hamiltonian.matrix(), 0.0));
}

TEST(RandomCircuit, EntriesWithinScale) {
    const auto s = random_circuit(4, 0.1, 3);
    for (const cplx& z : s.hamiltonian.matrix().values()) {
        EXPECT_LE(std::abs(z.real()), 0.1);
        EXPECT_LE(std::abs(z.imag()), 0.1);
    }
}

TEST(RandomCircuit, NormCap) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = random_circuit(6, 0.1, seed, 0.8);
        EXPECT_LE(operator_norm(s.hamiltonian.matrix()), 0.8 + 1e-12);
    }
}

TEST(RandomCircuit, SpreadActionScale) {
    // Mean [max eig - min eig] is linear in element_scale: ~0.08 at 0.01 for
    // four qubits, ~0.8 at 0.1.
    double small = 0.0, large = 0.0;
    const int seeds = 120;
    for (int seed = 0; seed < seeds; ++seed) {
        small += spread_action(random_circuit(4, 0.01, seed).hamiltonian);
        large += spread_action(random_circuit(4, 0.1, seed).hamiltonian);
    }
    small /= seeds;
    large /= seeds;
    EXPECT_NEAR(small, 0.08, 0.04);
    EXPECT_NEAR(large / small, 10.0, 1e-9);
}

TEST(ShotNoise, LargeShotLimit) {
    CycleTrace t;
    t.values = {1.0, 0.8, 0.61, 0.5};
    const auto noisy = shot_noise(t, {0.0, 1.0}, 1000000, 5);
    ASSERT_TRUE(noisy.stderrs);
    EXPECT_EQ(*noisy.shots, 1000000u);
    for (std::size_t k = 0; k < t.values.size(); ++k) {
        EXPECT_LE(std::abs(noisy.values[k] - t.values[k]), 3.0 * (*noisy.stderrs)[k] + 1e-15);
    }
    EXPECT_EQ(noisy.values[0], 1.0);
    EXPECT_EQ((*noisy.stderrs)[0], 0.0);
}

TEST(ShotNoise, StderrAtHalf) {
    CycleTrace t;
    t.values = {0.5, 0.5, 0.5};
    const auto noisy = shot_noise(t, {0.0, 1.0}, 1000, 9);
    EXPECT_NEAR((*noisy.stderrs)[0], 0.0158, 5e-4);
    EXPECT_THROW(shot_noise(t, {0.0, 1.0}, 0, 9), ValidationError);
}

TEST(ShotNoise, SymmetricRange) {
    CycleTrace t;
    t.values = {1.0, -1.0, 0.2};
    const auto noisy = shot_noise(t, {-1.0, 1.0}, 50000, 3);
    EXPECT_EQ(noisy.values[0], 1.0);
    EXPECT_EQ(noisy.values[1], -1.0);
    EXPECT_NEAR(noisy.values[2], 0.2, 4.0 * (*noisy.stderrs)[2]);
}

TEST(Property, NestedCommutatorDagger) {
    std::mt19937_64 eng(51);
    for (int draw = 0; draw < 10; ++draw) {
        const CMatrix a = oracle::to(oracle::random_complex(4, eng));
        const CMatrix b = oracle::to(oracle::random_complex(4, eng));
        for (int k = 0; k <= 4; ++k) {
            CMatrix rhs = nested_commutator(adjoint(a), adjoint(b), k);
            if (k % 2) rhs *= cplx(-1.0);
            EXPECT_LT(max_abs_diff(adjoint(nested_commutator(a, b, k)), rhs), 1e-10);
        }
    }
}

TEST(Property, FirstOrderSeriesResidualIsQuadratic) {
    const CircuitSpec base = random_circuit(2, 0.3, 52);
    const auto hl = liouville_hamiltonian(base.hamiltonian);
    std::vector<double> xs, res;
    for (double xi : {1e-5, 3e-5, 1e-4, 3e-4, 1e-3}) {
        const auto l = assemble(NoiseModel{2, {{ChannelKind::depolarizing, xi, 0, 0.0}, {ChannelKind::decoherence, xi, 1, 0.0}}});
        const CMatrix series = first_order_propagator(hl, l);
        const CMatrix exact = expm(Superoperator(cplx(0.0, -1.0) * hl.matrix() + l.matrix(), SuperKind::generator)).matrix();
        xs.push_back(xi);
        res.push_back(max_abs_diff(series, exact));
    }
    EXPECT_NEAR(loglog_slope(xs, res), 2.0, 0.1);
}

TEST(Property, FirstOrderSeriesExactWithoutNoise) {
    const CircuitSpec base = random_circuit(2, 0.3, 53);
    const auto hl = liouville_hamiltonian(base.hamiltonian);
    const auto zero = Superoperator(CMatrix(16, 16), SuperKind::dissipator);
    EXPECT_LT(max_abs_diff(first_order_propagator(hl, zero), expm(hl).matrix()), 1e-14);
}

}  // namespace
