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


#include "repcycle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "repcycle/errors.hpp"
#include "repcycle/rng.hpp"

namespace repcycle {

namespace {

constexpr double kImagTol = 1e-10;

std::size_t register_dim(std::size_t qubits) { return std::size_t{1} << qubits; }

// Index formed from the bits of `full` at the listed qubit positions, the
// first listed qubit being the most significant.
std::size_t sub_index(std::size_t full, const std::vector<std::size_t>& qubits, std::size_t n) {
    std::size_t idx = 0;
    for (auto q : qubits) idx = (idx << 1) | ((full >> (n - 1 - q)) & 1U);
    return idx;
}

std::vector<cplx> as_vector(const CMatrix& m) { return {m.values().begin(), m.values().end()}; }

CMatrix as_matrix(std::span<const cplx> v, std::size_t dim) {
    return CMatrix(dim, dim, std::vector<cplx>(v.begin(), v.end()));
}

double expectation(const Observable& o, const CMatrix& rho) {
    const cplx v = dotc(o.matrix().values(), rho.values());
    if (std::abs(v.imag()) > kImagTol) {
        throw NumericalError("expectation value has imaginary part " + std::to_string(v.imag()));
    }
    return v.real();
}

}  // namespace

void CircuitSpec::validate() const {
    if (qubits == 0) throw ValidationError("CircuitSpec: qubit count must be positive");
    if (hamiltonian.dim() != register_dim(qubits)) throw ShapeError("CircuitSpec: Hamiltonian dimension mismatch");
    if (noise.qubits != qubits) throw ShapeError("CircuitSpec: noise model qubit count mismatch");
    noise.validate();
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("CircuitSpec: gamma must lie in (0, 1]");
}

void CycleTrace::validate() const {
    if (values.empty()) throw ValidationError("CycleTrace: no values");
    if (shots.has_value() && !stderrs.has_value()) throw ValidationError("CycleTrace: shots set without stderrs");
    if (stderrs.has_value() && stderrs->size() != values.size()) {
        throw ValidationError("CycleTrace: stderrs length mismatch");
    }
}

void ResetSpec::validate(std::size_t qubits) const {
    std::set<std::size_t> seen;
    for (const auto* part : {&a_qubits, &b_qubits}) {
        if (!std::is_sorted(part->begin(), part->end())) {
            throw ValidationError("ResetSpec: partition qubits must be listed in ascending order");
        }
        for (auto q : *part) {
            if (q >= qubits) throw ValidationError("ResetSpec: qubit index out of range");
            if (!seen.insert(q).second) throw ValidationError("ResetSpec: partitions overlap");
        }
    }
    if (seen.size() != qubits) throw ValidationError("ResetSpec: partition does not cover the register");
    if (a_qubits.empty()) throw ValidationError("ResetSpec: subsystem A is empty");
    if (psi_b.size() != register_dim(b_qubits.size())) throw ShapeError("ResetSpec: psi_b has wrong dimension");
}

Superoperator generator(const CircuitSpec& spec) {
    spec.validate();
    if (spec.hamiltonian.dim() > kMaxDenseHilbertDim) {
        throw ShapeError("generator: dense Liouville matrices limited to " + std::to_string(kMaxDenseHilbertDim) +
                         "-dimensional registers");
    }
    CMatrix x = cplx(0.0, -spec.gamma) * liouville_hamiltonian(spec.hamiltonian).matrix();
    x += assemble(spec.noise).matrix();
    return Superoperator(std::move(x), SuperKind::generator);
}

Superoperator propagator(const CircuitSpec& spec) { return expm(generator(spec)); }

CycleMap CycleMap::dense(Superoperator k) {
    if (k.kind() != SuperKind::propagator) throw ValidationError("CycleMap::dense: expects a propagator");
    CycleMap m;
    m.dim_ = k.hilbert_dim();
    m.dense_ = std::move(k);
    return m;
}

CycleMap CycleMap::matrix_free(const CircuitSpec& spec) {
    spec.validate();
    CycleMap m;
    m.dim_ = spec.hamiltonian.dim();
    m.h_eff_ = cplx(spec.gamma) * spec.hamiltonian.matrix();
    const auto ev = hermitian_eigenvalues(m.h_eff_);
    double bound = 2.0 * std::max(std::abs(ev.front()), std::abs(ev.back()));
    for (const auto& c : spec.noise.channels) {
        for (auto& term : jump_terms(c.kind, c.rate, c.beta_omega)) {
            if (term.rate == 0.0) continue;
            const double jn = operator_norm(term.op);
            bound += 2.0 * term.rate * jn * jn;
            m.jumps_.push_back({term.rate, embed_operator(term.op, c.target, spec.qubits)});
            m.jumps_adj_.push_back(adjoint(m.jumps_.back().op));
            m.jumps_adj_op_.push_back(m.jumps_adj_.back() * m.jumps_.back().op);
        }
    }
    m.norm_bound_ = bound;
    return m;
}

CycleMap CycleMap::for_spec(const CircuitSpec& spec, Propagation mode) {
    if (mode == Propagation::dense ||
        (mode == Propagation::automatic && spec.qubits <= kAutoDenseMaxQubits)) {
        return dense(propagator(spec));
    }
    return matrix_free(spec);
}

CMatrix CycleMap::generator_action(const CMatrix& rho) const {
    if (dense_) throw ValidationError("CycleMap::generator_action: dense map has no stored generator");
    CMatrix hr = h_eff_ * rho;
    CMatrix rh = rho * h_eff_;
    CMatrix out = cplx(0.0, -1.0) * (hr - rh);
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        const CMatrix& jdj = jumps_adj_op_[i];
        CMatrix d = jumps_[i].op * rho * jumps_adj_[i];
        d -= cplx(0.5) * (jdj * rho + rho * jdj);
        out += cplx(jumps_[i].rate) * d;
    }
    return out;
}

CMatrix CycleMap::apply(const CMatrix& rho) const {
    if (rho.rows() != dim_ || !rho.is_square()) throw ShapeError("CycleMap::apply: dimension mismatch");
    if (dense_) return as_matrix(matvec(dense_->matrix(), rho.values()), dim_);
    const LinearAction act = [this](std::span<const cplx> v) {
        return as_vector(generator_action(as_matrix(v, dim_)));
    };
    return as_matrix(expm_action(act, norm_bound_, rho.values()), dim_);
}

std::vector<CycleTrace> run_cycles(const CycleMap& map, const DensityMatrix& rho0,
                                   const std::vector<Observable>& observables, std::size_t cycles,
                                   const std::string& initial_state_id) {
    if (cycles < 2) throw ValidationError("run_cycles: at least two cycles are required");
    if (rho0.dim() != map.hilbert_dim()) throw ShapeError("run_cycles: initial state dimension mismatch");
    std::vector<CycleTrace> traces(observables.size());
    for (std::size_t i = 0; i < observables.size(); ++i) {
        if (observables[i].dim() != rho0.dim()) throw ShapeError("run_cycles: observable dimension mismatch");
        traces[i].observable_id = observables[i].label().empty() ? "O" + std::to_string(i) : observables[i].label();
        traces[i].initial_state_id = initial_state_id;
        traces[i].values.reserve(cycles + 1);
    }
    CMatrix rho = rho0.matrix();
    for (std::size_t k = 0; k <= cycles; ++k) {
        if (k > 0) rho = map.apply(rho);
        for (std::size_t i = 0; i < observables.size(); ++i) traces[i].values.push_back(expectation(observables[i], rho));
    }
    return traces;
}

std::vector<CycleTrace> run_cycles(const CircuitSpec& spec, const DensityMatrix& rho0,
                                   const std::vector<Observable>& observables, std::size_t cycles,
                                   Propagation mode) {
    return run_cycles(CycleMap::for_spec(spec, mode), rho0, observables, cycles);
}

CMatrix compose_subsystems(const CMatrix& a, const std::vector<std::size_t>& a_qubits, const CMatrix& b,
                           const std::vector<std::size_t>& b_qubits, std::size_t qubits) {
    if (a.rows() != register_dim(a_qubits.size()) || b.rows() != register_dim(b_qubits.size())) {
        throw ShapeError("compose_subsystems: factor dimension mismatch");
    }
    if (a_qubits.size() + b_qubits.size() != qubits) throw ShapeError("compose_subsystems: partition size");
    const std::size_t n = register_dim(qubits);
    CMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t ra = sub_index(r, a_qubits, qubits);
        const std::size_t rb = sub_index(r, b_qubits, qubits);
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = a(ra, sub_index(c, a_qubits, qubits)) * b(rb, sub_index(c, b_qubits, qubits));
        }
    }
    return out;
}

std::vector<DensityMatrix> run_reset_cycles(const CircuitSpec& spec, const ResetSpec& reset,
                                            const std::vector<cplx>& psi_a, std::size_t cycles,
                                            Propagation mode) {
    spec.validate();
    reset.validate(spec.qubits);
    if (psi_a.size() != register_dim(reset.a_qubits.size())) throw ShapeError("run_reset_cycles: psi_a dimension");

    const CycleMap map = CycleMap::for_spec(spec, mode);
    const CMatrix proj_b = reset.b_qubits.empty() ? CMatrix::identity(1) : DensityMatrix::pure(reset.psi_b).matrix();
    const std::vector<std::size_t> dims(spec.qubits, 2);

    std::vector<DensityMatrix> states;
    states.reserve(cycles + 1);
    states.push_back(DensityMatrix::pure(psi_a));
    for (std::size_t k = 0; k < cycles; ++k) {
        const CMatrix full = compose_subsystems(states.back().matrix(), reset.a_qubits, proj_b, reset.b_qubits,
                                                spec.qubits);
        const CMatrix next = map.apply(full);
        states.emplace_back(partial_trace(next, reset.a_qubits, dims));
    }
    return states;
}

CycleTrace reset_survival_trace(const std::vector<DensityMatrix>& states) {
    if (states.empty()) throw ValidationError("reset_survival_trace: no states");
    CycleTrace t;
    t.observable_id = "rho0_A";
    t.initial_state_id = "rho0_A";
    t.protocol = TraceProtocol::reset;
    const Observable rho0(states.front().matrix(), "rho0_A");
    for (const auto& s : states) t.values.push_back(expectation(rho0, s.matrix()));
    return t;
}

Superoperator inverse_circuit(const CircuitSpec& spec, const Observable& dh) {
    spec.validate();
    if (dh.dim() != spec.hamiltonian.dim()) throw ShapeError("inverse_circuit: dH dimension mismatch");
    CircuitSpec inv = spec;
    inv.gamma = 1.0;
    inv.hamiltonian = Observable(cplx(-spec.gamma) * spec.hamiltonian.matrix() + dh.matrix(), "H_I");
    return propagator(inv);
}

CircuitSpec random_circuit(std::size_t qubits, double element_scale, std::uint64_t seed,
                           std::optional<double> norm_cap) {
    if (qubits == 0 || qubits > 8) throw ValidationError("random_circuit: qubit count must be in 1..8");
    if (!(element_scale >= 0.0)) throw ValidationError("random_circuit: element_scale must be >= 0");
    const std::size_t n = register_dim(qubits);
    Rng rng(seed);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.uniform(-element_scale, element_scale);
            const double im = rng.uniform(-element_scale, element_scale);
            m(i, j) = {re, im};
        }
    }
    CMatrix h = cplx(0.5) * (m + adjoint(m));
    if (norm_cap) {
        const auto ev = hermitian_eigenvalues(h);
        const double nrm = std::max(std::abs(ev.front()), std::abs(ev.back()));
        if (nrm > *norm_cap && nrm > 0.0) h *= cplx(*norm_cap / nrm);
    }
    // Exact Hermitian symmetry (the scaling above can break the last bit).
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) h(j, i) = std::conj(h(i, j));
    }
    CircuitSpec spec;
    spec.qubits = qubits;
    spec.hamiltonian = Observable(std::move(h), "H");
    spec.noise = NoiseModel{qubits, {}};
    spec.seed = seed;
    return spec;
}

double spread_action(const Observable& h) {
    const auto ev = hermitian_eigenvalues(h.matrix());
    return ev.back() - ev.front();
}

double generator_action(const Superoperator& x) { return operator_norm(x.matrix()); }

CycleTrace shot_noise(const CycleTrace& trace, EigenRange range, std::size_t shots, std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shot_noise: shots must be >= 1");
    if (!(range.hi > range.lo)) throw ValidationError("shot_noise: empty eigenvalue range");
    constexpr double kRangeTol = 1e-9;
    Rng rng(seed);
    CycleTrace out = trace;
    out.shots = shots;
    out.stderrs = std::vector<double>(trace.values.size());
    const double width = range.hi - range.lo;
    for (std::size_t k = 0; k < trace.values.size(); ++k) {
        double p = (trace.values[k] - range.lo) / width;
        if (p < -kRangeTol || p > 1.0 + kRangeTol) throw ValidationError("shot_noise: value outside eigenvalue range");
        p = std::clamp(p, 0.0, 1.0);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < shots; ++s) hits += rng.uniform() < p ? 1 : 0;
        const double phat = static_cast<double>(hits) / static_cast<double>(shots);
        out.values[k] = range.lo + width * phat;
        (*out.stderrs)[k] = width * std::sqrt(phat * (1.0 - phat) / static_cast<double>(shots));
    }
    return out;
}

CMatrix nested_commutator(const CMatrix& a, const CMatrix& b, int k) {
    if (k < 0) throw ValidationError("nested_commutator: negative depth");
    CMatrix out = b;
    for (int i = 0; i < k; ++i) out = commutator(a, out);
    return out;
}

CMatrix first_order_propagator(const Superoperator& h_l, const Superoperator& l, int terms) {
    if (h_l.dim2() != l.dim2()) throw ShapeError("first_order_propagator: dimension mismatch");
    const CMatrix ih = cplx(0.0, 1.0) * h_l.matrix();
    CMatrix sum = CMatrix::identity(l.dim2());
    CMatrix term = l.matrix();
    double factorial = 1.0;
    for (int k = 0; k <= terms; ++k) {
        factorial *= static_cast<double>(k + 1);
        sum += cplx(1.0 / factorial) * term;
        term = commutator(ih, term);
    }
    return expm(cplx(0.0, -1.0) * h_l.matrix()) * sum;
}

std::vector<cplx> product_state(std::size_t qubits, std::vector<cplx> single) {
    if (single.size() != 2) throw ShapeError("product_state: single-qubit state must have 2 entries");
    std::vector<cplx> psi{1.0};
    for (std::size_t q = 0; q < qubits; ++q) {
        std::vector<cplx> next(psi.size() * 2);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            next[2 * i] = psi[i] * single[0];
            next[2 * i + 1] = psi[i] * single[1];
        }
        psi = std::move(next);
    }
    return psi;
}

std::vector<cplx> plus_state(std::size_t qubits) {
    const double h = 1.0 / std::sqrt(2.0);
    return product_state(qubits, {h, h});
}

std::vector<cplx> basis_state(std::size_t qubits, std::size_t index) {
    std::vector<cplx> psi(register_dim(qubits));
    if (index >= psi.size()) throw ShapeError("basis_state: index out of range");
    psi[index] = 1.0;
    return psi;
}

CMatrix embed_operator(const CMatrix& op, std::size_t q, std::size_t qubits) {
    if (op.rows() != 2 || !op.is_square()) throw ShapeError("embed_operator: operator must be 2x2");
    if (q >= qubits) throw ShapeError("embed_operator: qubit index out of range");
    CMatrix out = CMatrix::identity(1);
    for (std::size_t i = 0; i < qubits; ++i) out = kron(out, i == q ? op : CMatrix::identity(2));
    return out;
}

Observable embed_single(const CMatrix& op, std::size_t q, std::size_t qubits, std::string label) {
    return Observable(embed_operator(op, q, qubits), std::move(label));
}

Observable pauli_x_on(std::size_t q, std::size_t qubits) {
    return embed_single(CMatrix{{0.0, 1.0}, {1.0, 0.0}}, q, qubits, "sx" + std::to_string(q));
}

}  // namespace repcycle
