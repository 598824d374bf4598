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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repcycle/errors.hpp"
#include "repcycle/liouville.hpp"

namespace repcycle {

// Single-qubit basis: index 0 is |up> (excited), index 1 is |down>. The
// lowering operator a = [[0,0],[1,0]] maps |up> to |down>.
inline constexpr std::size_t kUp = 0;
inline constexpr std::size_t kDown = 1;

// Multi-qubit registers use qubit 0 as the most significant tensor factor.

enum class ChannelKind { spontaneous_emission, excitation, depolarizing, decoherence, thermal };

std::string_view channel_name(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view name);

// Decoherence and depolarizing have L = L^† in Liouville space.
bool is_hermitian_lindblad(ChannelKind kind);

struct ChannelSpec {
    ChannelKind kind = ChannelKind::decoherence;
    double rate = 0.0;  // per cycle
    std::size_t target = 0;
    double beta_omega = 0.0;  // thermal only
};

struct NoiseModel {
    std::size_t qubits = 1;
    std::vector<ChannelSpec> channels;

    void validate() const;
    bool hermitian_lindblad() const;
};

// One Lindblad term rate * D[op] with D[J]ρ = JρJ^† - ½{J^†J, ρ}.
struct JumpTerm {
    double rate = 0.0;
    CMatrix op;
};

std::vector<JumpTerm> jump_terms(ChannelKind kind, double rate, double beta_omega = 0.0);

// Dense Lindblad dissipator for the given jump terms (all on one space).
Superoperator lindblad_dissipator(const std::vector<JumpTerm>& terms);

// 4x4 dissipator of a single-qubit channel.
Superoperator dissipator_single(ChannelKind kind, double rate, double beta_omega = 0.0);

// Lifts a single-qubit superoperator to an n-qubit register acting on
// `target`, identity elsewhere.
Superoperator embed(const Superoperator& local, std::size_t target, std::size_t qubits);

// Sum of the embedded dissipators of every channel in the model.
Superoperator assemble(const NoiseModel& model);

// Liouville basis states |up_L>, |down_L>, |+_L>.
LiouvilleVector up_l();
LiouvilleVector down_l();
LiouvilleVector plus_l();

class NonThermalChannel : public ValidationError {
  public:
    explicit NonThermalChannel(const std::string& what) : ValidationError(what) {}
};

// Boltzmann factor e^{-βω} = <down_L|L|down_L> / <up_L|L|up_L> (excitation
// over decay rate). Throws NonThermalChannel when either element vanishes.
double thermal_ratio(const Superoperator& l);

}  // namespace repcycle
