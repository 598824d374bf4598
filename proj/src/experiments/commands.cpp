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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "repcycle/experiments.hpp"
#include "repcycle/rng.hpp"

namespace repcycle {

namespace {

using json = nlohmann::json;

// Stream ids for Rng::derived, so the Hamiltonian draw (plain seed), the
// random rates and the shot sampling of one seed never share a sequence.
constexpr std::uint64_t kRateStream = 1;
constexpr std::uint64_t kShotStream = 2;
constexpr std::uint64_t kDhStream = 3;

// |Δ_K| below this is treated as "no purity change" and the inverse ratio is null.
constexpr double kRatioFloor = 1e-14;

std::vector<std::uint64_t> seeds_of(const json& cfg) { return cfg.at("seeds").get<std::vector<std::uint64_t>>(); }

std::optional<double> optional_number(const json& cfg, const char* key) {
    if (!cfg.contains(key) || cfg[key].is_null()) return std::nullopt;
    return cfg[key].get<double>();
}

std::optional<std::size_t> shots_of(const json& cfg) {
    if (!cfg.contains("shots") || cfg["shots"].is_null()) return std::nullopt;
    return cfg["shots"].get<std::size_t>();
}

std::vector<int> orders_of(const json& cfg) {
    auto o = cfg.at("orders").get<std::vector<int>>();
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    return o;
}

NoiseModel explicit_noise(const json& list, std::size_t qubits) {
    NoiseModel m{qubits, {}};
    for (const auto& c : list) {
        m.channels.push_back(ChannelSpec{parse_channel_kind(c.at("kind").get<std::string>()), c.at("rate").get<double>(),
                                         c.at("target").get<std::size_t>(), c.value("beta_omega", 0.0)});
    }
    return m;
}

// Explicit channel list if given, otherwise one channel of kind `channel` per
// qubit with a rate uniform in [0, rate_max].
NoiseModel noise_for_seed(const json& cfg, std::size_t qubits, std::uint64_t seed) {
    if (cfg.contains("channels") && !cfg["channels"].is_null()) return explicit_noise(cfg["channels"], qubits);
    const ChannelKind kind = parse_channel_kind(cfg.at("channel").get<std::string>());
    const double rate_max = cfg.at("rate_max").get<double>();
    Rng rng = Rng::derived(seed, kRateStream);
    NoiseModel m{qubits, {}};
    for (std::size_t q = 0; q < qubits; ++q) m.channels.push_back({kind, rng.uniform(0.0, rate_max), q, 0.0});
    return m;
}

CircuitSpec spec_for_seed(const json& cfg, std::uint64_t seed) {
    const auto qubits = cfg.at("qubits").get<std::size_t>();
    CircuitSpec spec =
        random_circuit(qubits, cfg.at("element_scale").get<double>(), seed, optional_number(cfg, "norm_cap"));
    spec.gamma = cfg.value("gamma", 1.0);
    return spec;
}

double purity_of(const CMatrix& rho) {
    const double f = frobenius_norm(rho);
    return f * f;
}

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t index) {
    return Rng::derived(seed, kShotStream + (index << 8)).next();
}

Cell cell(double v) { return Cell{v}; }
Cell cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }
Cell cell_seed(std::uint64_t s) { return Cell{static_cast<std::int64_t>(s)}; }

double rate_on(const NoiseModel& m, std::size_t q) {
    double r = 0.0;
    for (const auto& c : m.channels)
        if (c.target == q) r += c.rate;
    return r;
}

}  // namespace

RunOutput cmd_purity(const json& cfg) {
    const auto orders = orders_of(cfg);
    const auto shots = shots_of(cfg);
    const auto qubits = cfg.at("qubits").get<std::size_t>();
    const int max_order = std::max(2, orders.back());

    std::vector<std::string> cols{"seed",       "action",        "rate_sum",    "exact_dpurity",
                                  "est_basic",  "est_refined",   "refined_valid"};
    if (shots) cols.insert(cols.end(), {"basic_stderr", "refined_stderr"});
    for (int n : orders) {
        cols.push_back("s_" + std::to_string(n));
        if (shots) cols.push_back("s_" + std::to_string(n) + "_stderr");
    }
    RunOutput out{ResultTable(cols)};
    json reports = json::array();

    for (auto seed : seeds_of(cfg)) {
        CircuitSpec spec = spec_for_seed(cfg, seed);
        spec.noise = noise_for_seed(cfg, qubits, seed);
        const DensityMatrix rho0 = DensityMatrix::pure(plus_state(qubits));
        const Observable survival(rho0.matrix(), "rho0");
        const CycleMap map = CycleMap::for_spec(spec);

        CycleTrace trace = run_cycles(map, rho0, {survival}, static_cast<std::size_t>(max_order), "plus")[0];
        if (shots) trace = shot_noise(trace, {0.0, 1.0}, *shots, shot_seed(seed, 0));
        const double exact = purity_of(map.apply(rho0.matrix())) - purity_of(rho0.matrix());
        const PurityChange pc = purity_change(trace, spec.noise.hermitian_lindblad());

        double rate_sum = 0.0;
        for (const auto& c : spec.noise.channels) rate_sum += c.rate;

        std::vector<Cell> row{cell_seed(seed),
                              cell(spread_action(spec.hamiltonian) * spec.gamma),
                              cell(rate_sum),
                              cell(exact),
                              cell(pc.basic.value),
                              cell(pc.refined.value),
                              Cell{std::int64_t{pc.refined_valid ? 1 : 0}}};
        if (shots) {
            row.push_back(cell(pc.basic.stderr_value));
            row.push_back(cell(pc.refined.stderr_value));
        }
        DiagnosticsReport report;
        for (int n : orders) {
            const Estimate s = s_sum(trace, n);
            report.s_values[n] = s;
            row.push_back(cell(s.value));
            if (shots) row.push_back(cell(s.stderr_value));
        }
        out.table.add_row(std::move(row));

        report.purity = pc;
        report.dissipator_elements["plus"] = s_sum(trace, 2).value;
        report.seed = seed;
        report.spec_hash = spec_hash(spec);
        reports.push_back(report.to_json());
    }
    out.extra["reports"] = std::move(reports);
    return out;
}

RunOutput cmd_entanglement(const json& cfg) {
    const auto orders = orders_of(cfg);
    const auto shots = shots_of(cfg);
    const auto qubits = cfg.at("qubits").get<std::size_t>();
    const int max_order = std::max(2, orders.back());

    ResetSpec reset;
    reset.a_qubits = cfg.at("a_qubits").get<std::vector<std::size_t>>();
    std::sort(reset.a_qubits.begin(), reset.a_qubits.end());
    for (std::size_t q = 0; q < qubits; ++q) {
        if (!std::binary_search(reset.a_qubits.begin(), reset.a_qubits.end(), q)) reset.b_qubits.push_back(q);
    }
    reset.psi_b = basis_state(reset.b_qubits.size(), 0);
    const auto psi_a = basis_state(reset.a_qubits.size(), 0);

    std::vector<std::string> cols{"seed", "h_norm", "exact_dr2", "s_2"};
    if (shots) cols.push_back("s_2_stderr");
    for (int n : orders) {
        cols.push_back("est_order" + std::to_string(n));
        if (shots) cols.push_back("est_order" + std::to_string(n) + "_stderr");
    }
    RunOutput out{ResultTable(cols)};
    json reports = json::array();

    for (auto seed : seeds_of(cfg)) {
        CircuitSpec spec = spec_for_seed(cfg, seed);
        spec.noise = explicit_noise(cfg.at("channels"), qubits);
        const auto states = run_reset_cycles(spec, reset, psi_a, static_cast<std::size_t>(max_order));
        CycleTrace trace = reset_survival_trace(states);
        if (shots) trace = shot_noise(trace, {0.0, 1.0}, *shots, shot_seed(seed, 0));
        const double exact = renyi2(states[1]) - renyi2(states[0]);

        const Estimate s2 = s_sum(trace, 2);
        std::vector<Cell> row{cell_seed(seed), cell(operator_norm(spec.hamiltonian.matrix()) * spec.gamma),
                              cell(exact), cell(s2.value)};
        if (shots) row.push_back(cell(s2.stderr_value));
        DiagnosticsReport report;
        report.s_values[2] = s2;
        for (int n : orders) {
            const Estimate e = renyi2_change(trace, n);
            row.push_back(cell(e.value));
            if (shots) row.push_back(cell(e.stderr_value));
            if (n == orders.front()) report.renyi2_estimate = e.value;
        }
        out.table.add_row(std::move(row));
        report.seed = seed;
        report.spec_hash = spec_hash(spec);
        reports.push_back(report.to_json());
    }
    out.extra["reports"] = std::move(reports);
    return out;
}

RunOutput cmd_hotspot(const json& cfg) {
    const auto orders = orders_of(cfg);
    const auto shots = shots_of(cfg);
    const auto qubits = cfg.at("qubits").get<std::size_t>();
    const bool paired = cfg.at("paired_minus_h").get<bool>();
    const auto cycles = static_cast<std::size_t>(std::max(2, orders.back()));

    std::vector<std::string> cols{"seed", "qubit", "rate", "raw_delta", "exact_diss"};
    for (int n : orders) {
        cols.push_back("est_order" + std::to_string(n));
        if (shots) cols.push_back("est_order" + std::to_string(n) + "_stderr");
    }
    RunOutput out{ResultTable(cols)};
    json reports = json::array();

    std::vector<Observable> sx;
    for (std::size_t q = 0; q < qubits; ++q) sx.push_back(pauli_x_on(q, qubits));
    const DensityMatrix rho0 = DensityMatrix::pure(plus_state(qubits));

    for (auto seed : seeds_of(cfg)) {
        CircuitSpec spec = spec_for_seed(cfg, seed);
        spec.noise = explicit_noise(cfg.at("channels"), qubits);
        CircuitSpec clean = spec;
        clean.noise.channels.clear();

        const CycleMap map = CycleMap::for_spec(spec);
        auto traces = run_cycles(map, rho0, sx, cycles, "plus");
        const auto clean_traces = run_cycles(CycleMap::for_spec(clean), rho0, sx, 2, "plus");

        std::vector<CycleTrace> minus_traces;
        if (paired) {
            CircuitSpec minus = spec;
            minus.hamiltonian = Observable(cplx(-1.0) * spec.hamiltonian.matrix(), "-H");
            minus_traces = run_cycles(CycleMap::for_spec(minus), rho0, sx, cycles, "plus");
        }
        if (shots) {
            for (std::size_t q = 0; q < qubits; ++q) {
                traces[q] = shot_noise(traces[q], {-1.0, 1.0}, *shots, shot_seed(seed, 2 * q));
                if (paired) minus_traces[q] = shot_noise(minus_traces[q], {-1.0, 1.0}, *shots, shot_seed(seed, 2 * q + 1));
            }
        }

        DiagnosticsReport report;
        for (std::size_t q = 0; q < qubits; ++q) {
            const DissipativeChange dc = paired ? dissipative_change(traces[q], minus_traces[q], sx[q], rho0)
                                                : dissipative_change(traces[q], sx[q], rho0);
            std::vector<Cell> row{cell_seed(seed), Cell{static_cast<std::int64_t>(q)}, cell(rate_on(spec.noise, q)),
                                  cell(traces[q].values[1] - traces[q].values[0]),
                                  cell(traces[q].values[1] - clean_traces[q].values[1])};
            for (int n : orders) {
                const Estimate& e = dc.by_order.at(n);
                row.push_back(cell(e.value));
                if (shots) row.push_back(cell(e.stderr_value));
                report.hotspot_table[q][n] = e.value;
            }
            out.table.add_row(std::move(row));
        }
        report.seed = seed;
        report.spec_hash = spec_hash(spec);
        reports.push_back(report.to_json());
    }
    out.extra["reports"] = std::move(reports);
    return out;
}

RunOutput cmd_inverse(const json& cfg) {
    const auto qubits = cfg.at("qubits").get<std::size_t>();
    const ChannelKind kind = parse_channel_kind(cfg.at("channel").get<std::string>());
    const auto xis = cfg.at("xi").get<std::vector<double>>();
    const double dh_norm = cfg.at("dh_norm").get<double>();

    RunOutput out{ResultTable({"seed", "xi", "dh_norm", "dpurity_k", "dpurity_kik", "ratio", "ratio_residual"})};
    const DensityMatrix rho0 = DensityMatrix::pure(plus_state(qubits));
    const double p0 = purity_of(rho0.matrix());
    const LiouvilleVector v0 = vectorize(rho0);

    for (auto seed : seeds_of(cfg)) {
        CircuitSpec spec = spec_for_seed(cfg, seed);
        CMatrix dh = CMatrix::zeros(spec.hamiltonian.dim(), spec.hamiltonian.dim());
        if (dh_norm > 0.0) {
            dh = random_circuit(qubits, 1.0, Rng::derived(seed, kDhStream).next()).hamiltonian.matrix();
            dh *= cplx(dh_norm / operator_norm(dh));
        }
        for (double xi : xis) {
            spec.noise = NoiseModel{qubits, {}};
            for (std::size_t q = 0; q < qubits; ++q) spec.noise.channels.push_back({kind, xi, q, 0.0});
            const Superoperator k = propagator(spec);
            const Superoperator ki = inverse_circuit(spec, Observable(dh, "dH"));
            const LiouvilleVector v1 = k.apply(v0);
            const LiouvilleVector v2 = ki.apply(v1);
            const double d_k = purity_of(devectorize(v1)) - p0;
            const double d_kik = purity_of(devectorize(v2)) - p0;
            Cell ratio, residual;
            if (std::abs(d_k) > kRatioFloor) {
                ratio = d_kik / d_k;
                residual = std::abs(d_kik / d_k - 2.0);
            }
            out.table.add_row({cell_seed(seed), cell(xi), cell(dh_norm), cell(d_k), cell(d_kik), ratio, residual});
        }
    }
    return out;
}

RunOutput cmd_sweep_gamma(const json& cfg) {
    const auto qubits = cfg.at("qubits").get<std::size_t>();
    const auto gammas = cfg.at("gammas").get<std::vector<double>>();
    RunOutput out{ResultTable({"seed", "gamma", "action", "exact_dpurity", "est_basic", "est_refined"})};
    const DensityMatrix rho0 = DensityMatrix::pure(plus_state(qubits));
    const Observable survival(rho0.matrix(), "rho0");

    for (auto seed : seeds_of(cfg)) {
        CircuitSpec spec = spec_for_seed(cfg, seed);
        spec.noise = noise_for_seed(cfg, qubits, seed);
        for (double g : gammas) {
            spec.gamma = g;
            const CycleMap map = CycleMap::for_spec(spec);
            const CycleTrace trace = run_cycles(map, rho0, {survival}, 2, "plus")[0];
            const double exact = purity_of(map.apply(rho0.matrix())) - purity_of(rho0.matrix());
            const PurityChange pc = purity_change(trace, spec.noise.hermitian_lindblad());
            out.table.add_row({cell_seed(seed), cell(g), cell(g * spread_action(spec.hamiltonian)), cell(exact),
                               cell(pc.basic.value), cell(pc.refined.value)});
        }
    }
    return out;
}

RunOutput run_command(Command c, const json& resolved) {
    switch (c) {
        case Command::purity:
            return cmd_purity(resolved);
        case Command::entanglement:
            return cmd_entanglement(resolved);
        case Command::hotspot:
            return cmd_hotspot(resolved);
        case Command::inverse:
            return cmd_inverse(resolved);
        case Command::sweep_gamma:
            return cmd_sweep_gamma(resolved);
        case Command::verify:
            return cmd_verify(resolved);
    }
    throw ConfigError("unknown command");
}

json sidecar(Command c, const json& resolved, const RunOutput& out) {
    json j;
    j["tool"] = "repcycle";
    j["version"] = std::string(kVersion);
    j["command"] = std::string(command_name(c));
    j["config"] = resolved;
    j["columns"] = out.table.columns();
    j["rows"] = out.table.size();
    j["passed"] = out.passed;
    j["vectorization"] = "row_major";
    for (const auto& [k, v] : out.extra.items()) j[k] = v;
    return j;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("loglog_slope: need two or more points");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(std::abs(y[i]));
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace repcycle
