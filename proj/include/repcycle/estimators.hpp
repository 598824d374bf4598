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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repcycle/dynamics.hpp"
#include "repcycle/liouville.hpp"

namespace repcycle {

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxOrder = 8;

// Weights w_k^(n), k = 0..n, of the S_n sums.
struct WeightSet {
    int order = 2;
    std::vector<double> w;
};

// w_k = (2(2n-1)/n) * n!^2 / ((n-k)!(n+k)!) * (-1)^k for k >= 1, w_0 = 2 - 1/n.
WeightSet weights(int order);

struct Estimate {
    double value = 0.0;
    std::optional<double> stderr_value;
};

// S_n = sum_k w_k O_k. Standard errors of independent entries propagate as
// sqrt(sum_k w_k^2 se_k^2).
Estimate s_sum(const CycleTrace& trace, int order);

// Estimates of -<A|L|rho0> (A = rho0 for the survival trace). order2 = S_2
// carries an O(x^3) error, order3 = 2 S_3 - S_2 an O(x^4) error.
struct DissipatorElement {
    Estimate order2;
    std::optional<Estimate> order3;
    static constexpr int kOrder2ErrorPower = 3;
    static constexpr int kOrder3ErrorPower = 4;
};

DissipatorElement dissipator_element(const CycleTrace& trace);

// One-cycle purity change from a survival trace: basic = -2 S_2, refined =
// -2 S_2 + 2 S_2^2. The refined form assumes L = L^†.
struct PurityChange {
    Estimate basic;
    Estimate refined;
    bool refined_valid = true;
};

PurityChange purity_change(const CycleTrace& survival, bool hermitian_lindblad = true);

// Dissipative change Δ_diss<A> per order: 2 -> -S_2, 3 -> -2 S_3 + S_2,
// 4 -> -5 S_4 + 4 S_3, using as many orders as the trace supports.
struct DissipativeChange {
    std::map<int, Estimate> by_order;
};

// Largest ‖[A, ρ0]‖_F accepted by dissipative_change.
inline constexpr double kCommutationTol = 1e-10;

DissipativeChange dissipative_change(const CycleTrace& trace, const Observable& a, const DensityMatrix& rho0);
// Mean over the H and -H circuits, cancelling the {L, H} term.
DissipativeChange dissipative_change(const CycleTrace& trace, const CycleTrace& paired_minus_h,
                                     const Observable& a, const DensityMatrix& rho0);

// ΔR_2 estimate 2 S_n from a reset-protocol survival trace of subsystem A.
Estimate renyi2_change(const CycleTrace& reset_trace, int order = 2);

struct DiagnosticsReport {
    std::map<int, Estimate> s_values;
    std::optional<PurityChange> purity;
    std::map<std::string, double> dissipator_elements;
    // qubit -> order -> estimate
    std::map<std::size_t, std::map<int, double>> hotspot_table;
    std::optional<double> renyi2_estimate;
    std::uint64_t seed = 0;
    std::string spec_hash;

    nlohmann::json to_json() const;
};

// Stable FNV-1a hash of a circuit spec (Hamiltonian bits, noise, gamma).
std::string spec_hash(const CircuitSpec& spec);

}  // namespace repcycle
