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


#include "repcycle/channels.hpp"

#include <cmath>
#include <string>

namespace repcycle {

namespace {

CMatrix lowering() { return CMatrix{{0.0, 0.0}, {1.0, 0.0}}; }
CMatrix raising() { return CMatrix{{0.0, 1.0}, {0.0, 0.0}}; }
CMatrix pauli_z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

constexpr double kThermalZeroTol = 1e-300;

}  // namespace

std::string_view channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::spontaneous_emission:
            return "spontaneous_emission";
        case ChannelKind::excitation:
            return "excitation";
        case ChannelKind::depolarizing:
            return "depolarizing";
        case ChannelKind::decoherence:
            return "decoherence";
        case ChannelKind::thermal:
            return "thermal";
    }
    return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
    for (auto k : {ChannelKind::spontaneous_emission, ChannelKind::excitation, ChannelKind::depolarizing,
                   ChannelKind::decoherence, ChannelKind::thermal}) {
        if (channel_name(k) == name) return k;
    }
    throw ValidationError("unknown channel kind: " + std::string(name));
}

bool is_hermitian_lindblad(ChannelKind kind) {
    return kind == ChannelKind::decoherence || kind == ChannelKind::depolarizing;
}

void NoiseModel::validate() const {
    if (qubits == 0) throw ValidationError("NoiseModel: qubit count must be positive");
    for (const auto& c : channels) {
        if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) throw ValidationError("NoiseModel: rate must be >= 0");
        if (c.target >= qubits) throw ValidationError("NoiseModel: channel target out of range");
        if (c.kind == ChannelKind::thermal && !std::isfinite(c.beta_omega)) {
            throw ValidationError("NoiseModel: thermal channel needs finite beta_omega");
        }
    }
}

bool NoiseModel::hermitian_lindblad() const {
    for (const auto& c : channels)
        if (c.rate > 0.0 && !is_hermitian_lindblad(c.kind)) return false;
    return true;
}

std::vector<JumpTerm> jump_terms(ChannelKind kind, double rate, double beta_omega) {
    if (!(rate >= 0.0)) throw ValidationError("jump_terms: rate must be >= 0");
    switch (kind) {
        case ChannelKind::spontaneous_emission:
            return {{rate, lowering()}};
        case ChannelKind::excitation:
            return {{rate, raising()}};
        case ChannelKind::depolarizing:
            return {{rate, lowering()}, {rate, raising()}};
        case ChannelKind::decoherence:
            // ½ξ(σz⊗σz - I⊗I) is D[σz] at rate ξ/2.
            return {{0.5 * rate, pauli_z()}};
        case ChannelKind::thermal:
            if (!std::isfinite(beta_omega)) throw ValidationError("thermal channel needs finite beta_omega");
            // Detailed balance: excitation/decay = e^{-βω}, decay rate fixed to ξ.
            return {{rate, lowering()}, {rate * std::exp(-beta_omega), raising()}};
    }
    throw ValidationError("jump_terms: unknown channel kind");
}

Superoperator lindblad_dissipator(const std::vector<JumpTerm>& terms) {
    if (terms.empty()) throw ShapeError("lindblad_dissipator: no jump terms");
    const std::size_t n = terms.front().op.rows();
    const CMatrix id = CMatrix::identity(n);
    CMatrix l(n * n, n * n);
    for (const auto& t : terms) {
        if (t.op.rows() != n || !t.op.is_square()) throw ShapeError("lindblad_dissipator: jump operator shape");
        if (t.rate == 0.0) continue;
        const CMatrix jdj = adjoint(t.op) * t.op;
        CMatrix d = kron(t.op, conjugate(t.op));
        d -= cplx(0.5) * kron(jdj, id);
        d -= cplx(0.5) * kron(id, transpose(jdj));
        l += cplx(t.rate) * d;
    }
    return Superoperator(std::move(l), SuperKind::dissipator);
}

Superoperator dissipator_single(ChannelKind kind, double rate, double beta_omega) {
    return lindblad_dissipator(jump_terms(kind, rate, beta_omega));
}

Superoperator embed(const Superoperator& local, std::size_t target, std::size_t qubits) {
    if (local.hilbert_dim() != 2) throw ShapeError("embed: local superoperator must act on one qubit");
    if (qubits == 0 || target >= qubits) throw ShapeError("embed: target index out of range");
    if (qubits == 1) return local;

    const std::size_t n = std::size_t{1} << qubits;
    const std::size_t shift = qubits - 1 - target;
    const std::size_t bit = std::size_t{1} << shift;
    CMatrix out(n * n, n * n);
    // Entry ((r,c),(r',c')) = local((r_t,c_t),(r'_t,c'_t)) when the non-target
    // bits of r, r' agree and those of c, c' agree.
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t rt = (r >> shift) & 1U;
        const std::size_t rbase = r & ~bit;
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t ct = (c >> shift) & 1U;
            const std::size_t cbase = c & ~bit;
            const std::size_t row = liouville_index(r, c, n);
            const std::size_t lrow = liouville_index(rt, ct, 2);
            for (std::size_t rt2 = 0; rt2 < 2; ++rt2) {
                for (std::size_t ct2 = 0; ct2 < 2; ++ct2) {
                    const cplx v = local.matrix()(lrow, liouville_index(rt2, ct2, 2));
                    if (v == cplx{}) continue;
                    const std::size_t r2 = rbase | (rt2 << shift);
                    const std::size_t c2 = cbase | (ct2 << shift);
                    out(row, liouville_index(r2, c2, n)) = v;
                }
            }
        }
    }
    return Superoperator(std::move(out), local.kind());
}

Superoperator assemble(const NoiseModel& model) {
    model.validate();
    const std::size_t n = std::size_t{1} << model.qubits;
    CMatrix total(n * n, n * n);
    for (const auto& c : model.channels) {
        if (c.rate == 0.0) continue;
        total += embed(dissipator_single(c.kind, c.rate, c.beta_omega), c.target, model.qubits).matrix();
    }
    return Superoperator(std::move(total), SuperKind::dissipator);
}

LiouvilleVector up_l() { return LiouvilleVector({1.0, 0.0, 0.0, 0.0}); }
LiouvilleVector down_l() { return LiouvilleVector({0.0, 0.0, 0.0, 1.0}); }
LiouvilleVector plus_l() { return LiouvilleVector({0.5, 0.5, 0.5, 0.5}); }

double thermal_ratio(const Superoperator& l) {
    if (l.hilbert_dim() != 2) throw ShapeError("thermal_ratio: expects a single-qubit dissipator");
    const double up = liouville_inner(up_l(), l.apply(up_l())).real();
    const double down = liouville_inner(down_l(), l.apply(down_l())).real();
    if (std::abs(up) <= kThermalZeroTol || std::abs(down) <= kThermalZeroTol) {
        throw NonThermalChannel("thermal_ratio: a diagonal element vanishes; no finite temperature");
    }
    return down / up;
}

}  // namespace repcycle
