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


#include "repcycle/estimators.hpp"

#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <string>

#include "repcycle/errors.hpp"

namespace repcycle {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// value and stderr of sum_i c_i e_i for independent estimates e_i
Estimate combine(std::initializer_list<std::pair<double, const Estimate*>> parts) {
    Estimate out;
    double var = 0.0;
    bool have_err = true;
    for (const auto& [c, e] : parts) {
        out.value += c * e->value;
        if (e->stderr_value) {
            var += c * c * *e->stderr_value * *e->stderr_value;
        } else {
            have_err = false;
        }
    }
    // S_n values of one trace share entries, so this ignores correlations; it
    // is reported only as an indicative error bar.
    if (have_err) out.stderr_value = std::sqrt(var);
    return out;
}

void require_entries(const CycleTrace& trace, int order, const char* who) {
    if (order < kMinOrder || order > kMaxOrder) {
        throw ValidationError(std::string(who) + ": order must be in [2, 8], got " + std::to_string(order));
    }
    if (trace.values.size() < static_cast<std::size_t>(order) + 1) {
        throw ValidationError(std::string(who) + ": trace has " + std::to_string(trace.values.size()) +
                              " entries, order " + std::to_string(order) + " needs " +
                              std::to_string(order + 1));
    }
}

std::map<int, Estimate> diss_orders(const CycleTrace& trace) {
    std::map<int, Estimate> out;
    const auto c = trace.cycles();
    if (c < 2) throw ValidationError("dissipative_change: trace needs at least 2 cycles");
    const Estimate s2 = s_sum(trace, 2);
    out[2] = combine({{-1.0, &s2}});
    if (c >= 3) {
        const Estimate s3 = s_sum(trace, 3);
        out[3] = combine({{-2.0, &s3}, {1.0, &s2}});
        if (c >= 4) {
            const Estimate s4 = s_sum(trace, 4);
            out[4] = combine({{-5.0, &s4}, {4.0, &s3}});
        }
    }
    return out;
}

void check_commutes(const Observable& a, const DensityMatrix& rho0) {
    if (a.dim() != rho0.dim()) throw ShapeError("dissipative_change: observable and state dims differ");
    const double c = frobenius_norm(commutator(a.matrix(), rho0.matrix()));
    if (c > kCommutationTol) {
        std::ostringstream msg;
        msg << "dissipative_change: observable '" << a.label() << "' does not commute with rho0 (||[A, rho0]||_F = "
            << std::setprecision(3) << c << " > " << kCommutationTol
            << "); the Hamiltonian term <A|H_L|rho0> would not vanish";
        throw ValidationError(msg.str());
    }
}

nlohmann::json estimate_json(const Estimate& e) {
    nlohmann::json j;
    j["value"] = e.value;
    j["stderr"] = e.stderr_value ? nlohmann::json(*e.stderr_value) : nlohmann::json(nullptr);
    return j;
}

}  // namespace

WeightSet weights(int order) {
    if (order < kMinOrder || order > kMaxOrder) {
        throw ValidationError("weights: order must be in [2, 8], got " + std::to_string(order));
    }
    const int n = order;
    WeightSet ws{n, std::vector<double>(static_cast<std::size_t>(n) + 1)};
    const double pre = 2.0 * (2.0 * n - 1.0) / n;
    const double nf2 = factorial(n) * factorial(n);
    ws.w[0] = 2.0 - 1.0 / n;
    for (int k = 1; k <= n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        ws.w[static_cast<std::size_t>(k)] = sign * pre * nf2 / (factorial(n - k) * factorial(n + k));
    }
    return ws;
}

Estimate s_sum(const CycleTrace& trace, int order) {
    require_entries(trace, order, "s_sum");
    const WeightSet ws = weights(order);
    Estimate out;
    for (int k = 0; k <= order; ++k) out.value += ws.w[k] * trace.values[k];
    if (trace.stderrs) {
        if (trace.stderrs->size() != trace.values.size()) throw ValidationError("s_sum: stderr length mismatch");
        double var = 0.0;
        for (int k = 0; k <= order; ++k) {
            const double t = ws.w[k] * (*trace.stderrs)[k];
            var += t * t;
        }
        out.stderr_value = std::sqrt(var);
    }
    return out;
}

DissipatorElement dissipator_element(const CycleTrace& trace) {
    if (trace.cycles() < 2) throw ValidationError("dissipator_element: trace needs at least 2 cycles");
    DissipatorElement out;
    out.order2 = s_sum(trace, 2);
    if (trace.cycles() >= 3) {
        const Estimate s3 = s_sum(trace, 3);
        out.order3 = combine({{2.0, &s3}, {-1.0, &out.order2}});
    }
    return out;
}

PurityChange purity_change(const CycleTrace& survival, bool hermitian_lindblad) {
    const Estimate s2 = s_sum(survival, 2);
    PurityChange out;
    out.basic = combine({{-2.0, &s2}});
    out.refined.value = -2.0 * s2.value + 2.0 * s2.value * s2.value;
    if (s2.stderr_value) out.refined.stderr_value = std::abs(-2.0 + 4.0 * s2.value) * *s2.stderr_value;
    out.refined_valid = hermitian_lindblad;
    return out;
}

DissipativeChange dissipative_change(const CycleTrace& trace, const Observable& a, const DensityMatrix& rho0) {
    check_commutes(a, rho0);
    return DissipativeChange{diss_orders(trace)};
}

DissipativeChange dissipative_change(const CycleTrace& trace, const CycleTrace& paired_minus_h, const Observable& a,
                                     const DensityMatrix& rho0) {
    check_commutes(a, rho0);
    const auto plus = diss_orders(trace);
    const auto minus = diss_orders(paired_minus_h);
    DissipativeChange out;
    for (const auto& [order, e] : plus) {
        auto it = minus.find(order);
        if (it == minus.end()) continue;
        out.by_order[order] = combine({{0.5, &e}, {0.5, &it->second}});
    }
    return out;
}

Estimate renyi2_change(const CycleTrace& reset_trace, int order) {
    if (reset_trace.protocol != TraceProtocol::reset) {
        throw ValidationError(
            "renyi2_change: trace was not produced by the reset protocol; reduced dynamics without reset are not a "
            "periodic CP map");
    }
    const Estimate s = s_sum(reset_trace, order);
    return combine({{2.0, &s}});
}

nlohmann::json DiagnosticsReport::to_json() const {
    nlohmann::json j;
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [n, e] : s_values) s[std::to_string(n)] = estimate_json(e);
    j["s_values"] = s;
    if (purity) {
        j["purity_change"] = {{"basic", estimate_json(purity->basic)},
                              {"refined", estimate_json(purity->refined)},
                              {"refined_hermitian_lindblad_only", !purity->refined_valid}};
    } else {
        j["purity_change"] = nullptr;
    }
    j["dissipator_elements"] = dissipator_elements;
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [q, by_order] : hotspot_table) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [n, v] : by_order) row[std::to_string(n)] = v;
        h[std::to_string(q)] = row;
    }
    j["hotspot_table"] = h;
    j["renyi2_estimate"] = renyi2_estimate ? nlohmann::json(*renyi2_estimate) : nlohmann::json(nullptr);
    j["provenance"] = {{"seed", seed}, {"spec_hash", spec_hash}};
    return j;
}

std::string spec_hash(const CircuitSpec& spec) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    auto feed_u64 = [&feed](std::uint64_t v) { feed(&v, sizeof v); };
    auto feed_f64 = [&feed_u64](double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof bits);
        feed_u64(bits);
    };
    feed_u64(spec.qubits);
    for (const cplx& z : spec.hamiltonian.matrix().values()) {
        feed_f64(z.real());
        feed_f64(z.imag());
    }
    feed_f64(spec.gamma);
    for (const auto& c : spec.noise.channels) {
        feed_u64(static_cast<std::uint64_t>(c.kind));
        feed_f64(c.rate);
        feed_u64(c.target);
        feed_f64(c.beta_omega);
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace repcycle
