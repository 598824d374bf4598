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
#include <string>

#include "repcycle/experiments.hpp"
#include "repcycle/rng.hpp"

namespace repcycle {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kVerifyStream = 4;

CMatrix random_complex(std::size_t n, Rng& rng) {
    CMatrix m(n, n);
    for (auto& z : m.values()) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return m;
}

CMatrix random_hermitian(std::size_t n, Rng& rng) {
    const CMatrix m = random_complex(n, rng);
    return cplx(0.5) * (m + adjoint(m));
}

CMatrix random_density(std::size_t n, Rng& rng) {
    const CMatrix m = random_complex(n, rng);
    CMatrix rho = m * adjoint(m);
    rho *= cplx(1.0 / trace(rho).real());
    return rho;
}

std::vector<cplx> random_pure(std::size_t n, Rng& rng) {
    std::vector<cplx> psi(n);
    for (auto& z : psi) z = {rng.normal(), rng.normal()};
    return psi;
}

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

Check upper(std::string name, double value, double tol) { return {std::move(name), value, tol, value <= tol}; }
Check band(std::string name, double value, double target, double tol) {
    return {std::move(name), value, tol, std::abs(value - target) <= tol};
}

Check weight_sum(const VerifyHooks& hooks) {
    double worst = 0.0;
    for (int n = kMinOrder; n <= kMaxOrder; ++n) {
        const WeightSet ws = hooks.weights(n);
        double s = 0.0;
        for (double w : ws.w) s += w;
        worst = std::max({worst, std::abs(s), std::abs(ws.w[0] - (2.0 - 1.0 / n))});
    }
    return upper("weight_sum_zero", worst, 1e-12);
}

std::vector<Check> liouville_identities(const VerifyHooks& hooks, std::uint64_t seed, int draws) {
    Rng rng = Rng::derived(seed, kVerifyStream);
    double odd = 0.0, commuting = 0.0, inner = 0.0, equiv = 0.0, unitary = 0.0;
    for (int i = 0; i < draws; ++i) {
        const std::size_t n = std::size_t{1} << (1 + i % 3);
        const Observable h(random_hermitian(n, rng));
        const CMatrix rho = random_density(n, rng);
        const Superoperator hl = liouville_hamiltonian(h);
        const LiouvilleVector v = hooks.vectorizer(rho);

        LiouvilleVector w = v;
        for (int p = 1; p <= 7; ++p) {
            w = hl.apply(w);
            if (p % 2 == 1) odd = std::max(odd, std::abs(liouville_inner(v, w)));
        }

        // A = ρ² - cρ + dI commutes with ρ.
        CMatrix a = rho * rho - cplx(rng.uniform(-1.0, 1.0)) * rho;
        a += cplx(rng.uniform(-1.0, 1.0)) * CMatrix::identity(n);
        commuting = std::max(commuting, std::abs(liouville_inner(hooks.vectorizer(a), hl.apply(v))));

        const CMatrix x = random_complex(n, rng);
        const CMatrix y = random_complex(n, rng);
        inner = std::max(inner, std::abs(liouville_inner(hooks.vectorizer(x), hooks.vectorizer(y)) -
                                         trace(adjoint(x) * y)));

        const Superoperator k = expm(hl);
        const CMatrix u = expm(cplx(0.0, -1.0) * h.matrix());
        equiv = std::max(equiv, max_abs_diff(devectorize(k.apply(v)), u * rho * adjoint(u)));
        unitary = std::max(unitary, max_abs_diff(adjoint(k.matrix()) * k.matrix(), CMatrix::identity(n * n)));
    }
    return {upper("odd_moments_vanish", odd, 1e-10), upper("commuting_observable", commuting, 1e-10),
            upper("inner_product_trace", inner, 1e-12), upper("hilbert_liouville_evolution", equiv, 1e-10),
            upper("unitary_propagator", unitary, 1e-10)};
}

Check dagger_identity(std::uint64_t seed) {
    Rng rng = Rng::derived(seed, kVerifyStream + 1);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const CMatrix a = random_complex(4, rng);
        const CMatrix b = random_complex(4, rng);
        for (int k = 0; k <= 4; ++k) {
            const CMatrix lhs = adjoint(nested_commutator(a, b, k));
            CMatrix rhs = nested_commutator(adjoint(a), adjoint(b), k);
            if (k % 2 == 1) rhs *= cplx(-1.0);
            worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
    }
    return upper("nested_commutator_dagger", worst, 1e-10);
}

Check series_slope(std::uint64_t seed) {
    const CircuitSpec base = random_circuit(2, 0.3, seed);
    const Superoperator hl = liouville_hamiltonian(base.hamiltonian);
    std::vector<double> xs, res;
    for (int i = 0; i < 8; ++i) {
        const double xi = 1e-5 * std::pow(100.0, i / 7.0);
        NoiseModel noise{2, {{ChannelKind::decoherence, xi, 0, 0.0}, {ChannelKind::spontaneous_emission, xi, 1, 0.0}}};
        const Superoperator l = assemble(noise);
        const CMatrix series = first_order_propagator(hl, l);
        const CMatrix exact = expm(Superoperator(cplx(0.0, -1.0) * hl.matrix() + l.matrix(), SuperKind::generator)).matrix();
        xs.push_back(xi);
        res.push_back(max_abs_diff(series, exact));
    }
    return band("series_residual_slope", loglog_slope(xs, res), 2.0, 0.1);
}

std::vector<Check> cptp(std::uint64_t seed) {
    Rng rng = Rng::derived(seed, kVerifyStream + 2);
    const double xi = 1e-3;
    double left_null = 0.0, pure_elem = -1.0, herm = 0.0, elements = 0.0;
    const LiouvilleVector id = vectorize(CMatrix::identity(2));
    for (auto kind : {ChannelKind::spontaneous_emission, ChannelKind::excitation, ChannelKind::depolarizing,
                      ChannelKind::decoherence, ChannelKind::thermal}) {
        const Superoperator l = dissipator_single(kind, xi, 0.7);
        // ⟨I|L = 0 column by column.
        for (std::size_t c = 0; c < 4; ++c) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < 4; ++r) s += std::conj(id[r]) * l.matrix()(r, c);
            left_null = std::max(left_null, std::abs(s));
        }
        for (int d = 0; d < 20; ++d) {
            const LiouvilleVector v = vectorize(DensityMatrix::pure(random_pure(2, rng)));
            pure_elem = std::max(pure_elem, liouville_inner(v, l.apply(v)).real());
        }
        if (is_hermitian_lindblad(kind)) herm = std::max(herm, max_abs_diff(l.matrix(), adjoint(l.matrix())));
    }

    auto elem = [](const Superoperator& l, const LiouvilleVector& v) { return liouville_inner(v, l.apply(v)).real(); };
    const Superoperator spon = dissipator_single(ChannelKind::spontaneous_emission, xi);
    const Superoperator depol = dissipator_single(ChannelKind::depolarizing, xi);
    const Superoperator decoh = dissipator_single(ChannelKind::decoherence, xi);
    const double table[9][2] = {{elem(spon, up_l()), -xi},    {elem(spon, down_l()), 0.0},
                                {elem(spon, plus_l()), -xi / 4}, {elem(depol, up_l()), -xi},
                                {elem(depol, down_l()), -xi},   {elem(depol, plus_l()), -xi / 2},
                                {elem(decoh, up_l()), 0.0},     {elem(decoh, down_l()), 0.0},
                                {elem(decoh, plus_l()), -xi / 2}};
    for (const auto& row : table) elements = std::max(elements, std::abs(row[0] - row[1]));

    CircuitSpec spec = random_circuit(2, 0.3, seed);
    spec.noise = NoiseModel{2, {{ChannelKind::thermal, 5e-3, 0, 0.4}, {ChannelKind::depolarizing, 2e-3, 1, 0.0}}};
    const Superoperator k = propagator(spec);
    CMatrix rho = random_density(4, rng);
    double trace_drift = 0.0;
    for (int step = 0; step < 10; ++step) {
        rho = devectorize(k.apply(vectorize(rho)));
        trace_drift = std::max(trace_drift, std::abs(trace(rho) - 1.0));
    }
    return {upper("dissipator_trace_preserving", left_null, 1e-12), upper("pure_state_element_nonpositive", pure_elem, 1e-12),
            upper("hermitian_lindblad_self_adjoint", herm, 1e-12), upper("channel_matrix_elements", elements, 1e-12),
            upper("propagator_trace_preserving", trace_drift, 1e-10)};
}

}  // namespace

RunOutput cmd_verify(const json& cfg, const VerifyHooks& hooks) {
    const auto seed = cfg.at("seeds").at(0).get<std::uint64_t>();
    const int draws = cfg.at("draws").get<int>();

    std::vector<Check> checks{weight_sum(hooks)};
    for (auto& c : liouville_identities(hooks, seed, draws)) checks.push_back(std::move(c));
    checks.push_back(dagger_identity(seed));
    checks.push_back(series_slope(seed));
    for (auto& c : cptp(seed)) checks.push_back(std::move(c));

    RunOutput out{ResultTable({"check", "value", "tolerance", "pass"})};
    for (const auto& c : checks) {
        out.table.add_row({Cell{c.name}, Cell{c.value}, Cell{c.tolerance}, Cell{std::int64_t{c.pass ? 1 : 0}}});
        out.passed = out.passed && c.pass;
    }
    return out;
}

}  // namespace repcycle
