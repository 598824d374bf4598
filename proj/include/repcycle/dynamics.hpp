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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repcycle/channels.hpp"
#include "repcycle/liouville.hpp"

namespace repcycle {

// One cycle of a periodic Markovian circuit: K = exp(-i γ H_L + L). The
// Hamiltonian is dimensionless and already includes the cycle duration.
struct CircuitSpec {
    std::size_t qubits = 1;
    Observable hamiltonian{CMatrix::zeros(2, 2)};
    NoiseModel noise{};
    double gamma = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class TraceProtocol { plain, reset };

// Expectation values O_0..O_n from runs with 0..n cycles.
struct CycleTrace {
    std::vector<double> values;
    std::string observable_id;
    std::string initial_state_id;
    std::optional<std::size_t> shots;
    std::optional<std::vector<double>> stderrs;
    TraceProtocol protocol = TraceProtocol::plain;

    std::size_t cycles() const { return values.empty() ? 0 : values.size() - 1; }
    void validate() const;
};

// Partition for the reset protocol: B is traced out and re-prepared in
// psi_b (ordered by ascending B qubit index) after every cycle.
struct ResetSpec {
    std::vector<std::size_t> a_qubits;
    std::vector<std::size_t> b_qubits;
    std::vector<cplx> psi_b;

    void validate(std::size_t qubits) const;
};

// -i γ H_L + L for the spec.
Superoperator generator(const CircuitSpec& spec);
Superoperator propagator(const CircuitSpec& spec);

enum class Propagation { automatic, dense, matrix_free };

// Largest register propagated with a dense K under Propagation::automatic.
inline constexpr std::size_t kAutoDenseMaxQubits = 4;

// Applies one cycle to a Hilbert-space density matrix, either through a
// dense propagator or through the generator's action (no 4^n x 4^n matrix).
class CycleMap {
  public:
    static CycleMap dense(Superoperator k);
    static CycleMap matrix_free(const CircuitSpec& spec);
    static CycleMap for_spec(const CircuitSpec& spec, Propagation mode = Propagation::automatic);

    std::size_t hilbert_dim() const { return dim_; }
    bool is_dense() const { return dense_.has_value(); }
    CMatrix apply(const CMatrix& rho) const;
    // Generator action x(ρ) (matrix-free form only).
    CMatrix generator_action(const CMatrix& rho) const;

  private:
    CycleMap() = default;

    std::size_t dim_ = 0;
    std::optional<Superoperator> dense_;
    CMatrix h_eff_;
    std::vector<JumpTerm> jumps_;  // embedded in the full register
    std::vector<CMatrix> jumps_adj_;
    std::vector<CMatrix> jumps_adj_op_;
    double norm_bound_ = 0.0;
};

std::vector<CycleTrace> run_cycles(const CycleMap& map, const DensityMatrix& rho0,
                                   const std::vector<Observable>& observables, std::size_t cycles,
                                   const std::string& initial_state_id = "rho0");
std::vector<CycleTrace> run_cycles(const CircuitSpec& spec, const DensityMatrix& rho0,
                                   const std::vector<Observable>& observables, std::size_t cycles,
                                   Propagation mode = Propagation::automatic);

// Reduced A states after 0..cycles cycles of the reset protocol, starting
// from |psi_a><psi_a| ⊗ |psi_b><psi_b|.
std::vector<DensityMatrix> run_reset_cycles(const CircuitSpec& spec, const ResetSpec& reset,
                                            const std::vector<cplx>& psi_a, std::size_t cycles,
                                            Propagation mode = Propagation::automatic);

// Survival trace tr[ρ_{0,A} ρ_{k,A}] of reset-protocol states.
CycleTrace reset_survival_trace(const std::vector<DensityMatrix>& states);

// Places a ⊗ b on the register with a on `a_qubits` and b on `b_qubits`
// (each factor ordered by ascending qubit index).
CMatrix compose_subsystems(const CMatrix& a, const std::vector<std::size_t>& a_qubits, const CMatrix& b,
                           const std::vector<std::size_t>& b_qubits, std::size_t qubits);

// Propagator of the inverse circuit exp(-i(-γH + dH)_L + L) with the same
// noise model as the forward circuit.
Superoperator inverse_circuit(const CircuitSpec& spec, const Observable& dh);

// Random Hermitian drive: entries with real and imaginary parts uniform in
// [-element_scale, element_scale], Hermitized as (M + M^†)/2, then rescaled
// to operator norm norm_cap if it exceeds it. Noise model is empty.
CircuitSpec random_circuit(std::size_t qubits, double element_scale, std::uint64_t seed,
                           std::optional<double> norm_cap = std::nullopt);

// [max eig - min eig] of H (the cycle duration is already in H).
double spread_action(const Observable& h);
// Operator norm of the one-cycle generator x.
double generator_action(const Superoperator& x);

// Known eigenvalue range of a measured observable.
struct EigenRange {
    double lo = 0.0;
    double hi = 1.0;
};

// Replaces each entry by the mean of `shots` two-outcome samples with the
// same expectation; fills stderrs with the sample standard error.
CycleTrace shot_noise(const CycleTrace& trace, EigenRange range, std::size_t shots, std::uint64_t seed);

// [a^(k), b] = [a, [a, ... [a, b]]] with k nested commutators; k = 0 gives b.
CMatrix nested_commutator(const CMatrix& a, const CMatrix& b, int k);

inline constexpr int kSeriesTerms = 12;

// First-order (in L) expansion of exp(-i H_L + L):
// e^{-i H_L} {1 + sum_{k=0}^{terms} [(i H_L)^(k), L] / (k+1)!}.
CMatrix first_order_propagator(const Superoperator& h_l, const Superoperator& l, int terms = kSeriesTerms);

// Standard single-qubit and product states used by the experiments.
std::vector<cplx> product_state(std::size_t qubits, std::vector<cplx> single);
std::vector<cplx> plus_state(std::size_t qubits);
std::vector<cplx> basis_state(std::size_t qubits, std::size_t index);
// σ_x on qubit q of an n-qubit register.
Observable pauli_x_on(std::size_t q, std::size_t qubits);
// op on qubit q, identity elsewhere.
CMatrix embed_operator(const CMatrix& op, std::size_t q, std::size_t qubits);
Observable embed_single(const CMatrix& op, std::size_t q, std::size_t qubits, std::string label = {});

}  // namespace repcycle
