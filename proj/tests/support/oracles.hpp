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

// Independent reference computations for the tests. Nothing here calls into
// the library except the CMatrix conversion helpers at the bottom.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "repcycle/matrix.hpp"

namespace oracle {

using cplx = std::complex<double>;

struct Dense {
    std::size_t n = 0;
    std::vector<cplx> a;  // row-major

    explicit Dense(std::size_t dim = 0) : n(dim), a(dim * dim) {}
    cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline Dense eye(std::size_t n) {
    Dense d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 1.0;
    return d;
}

inline Dense mul(const Dense& x, const Dense& y) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
            z(i, j) = s;
        }
    return z;
}

inline Dense add(const Dense& x, const Dense& y, cplx cy = 1.0) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] + cy * y.a[i];
    return z;
}

inline Dense dagger(const Dense& x) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) z(i, j) = std::conj(x(j, i));
    return z;
}

// Hilbert-space commutator [h, rho].
inline Dense commutator(const Dense& h, const Dense& rho) { return add(mul(h, rho), mul(rho, h), -1.0); }

inline cplx trace_adj_product(const Dense& x, const Dense& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) s += std::conj(x(k, i)) * y(k, i);
    return s;
}

// Truncated Taylor series sum_{j<terms} g^j / j!.
inline Dense taylor_expm(const Dense& g, int terms = 30) {
    Dense sum = eye(g.n);
    Dense term = eye(g.n);
    for (int j = 1; j < terms; ++j) {
        term = mul(term, g);
        for (auto& z : term.a) z /= static_cast<double>(j);
        sum = add(sum, term);
    }
    return sum;
}

inline double max_diff(const Dense& x, const Dense& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

// Random matrices from std::mt19937_64 (independent of the library's Rng).
inline Dense random_complex(std::size_t n, std::mt19937_64& eng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Dense d(n);
    for (auto& z : d.a) z = {u(eng), u(eng)};
    return d;
}

inline Dense random_hermitian(std::size_t n, std::mt19937_64& eng, double scale = 1.0) {
    const Dense m = random_complex(n, eng, scale);
    Dense h = add(m, dagger(m));
    for (auto& z : h.a) z *= 0.5;
    return h;
}

inline Dense random_density(std::size_t n, std::mt19937_64& eng) {
    const Dense m = random_complex(n, eng);
    Dense r = mul(m, dagger(m));
    cplx t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += r(i, i);
    for (auto& z : r.a) z /= t.real();
    return r;
}

// Closed forms.

// Survival probability of |+><+| under dephasing that decays coherences as e^{-k ξ}.
inline double dephasing_survival(double xi, int k) { return 0.5 * (1.0 + std::exp(-k * xi)); }

// One-cycle purity change of |+> under the same dephasing.
inline double dephasing_purity_change(double xi) { return 0.5 * (std::exp(-2.0 * xi) - 1.0); }

// H = g σx⊗σx on |00>: reduced purity after one cycle.
inline double xx_reduced_purity(double g) {
    const double c = std::cos(g), s = std::sin(g);
    return c * c * c * c + s * s * s * s;
}

inline double xx_renyi2(double g) { return -std::log(xx_reduced_purity(g)); }

// Weight formula evaluated in long double, independent of the library.
inline std::vector<long double> weights(int n) {
    auto fact = [](int m) {
        long double f = 1;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    std::vector<long double> w(n + 1);
    for (int k = 0; k <= n; ++k) {
        w[k] = (2.0L * (2 * n - 1) / n) * fact(n) * fact(n) / (fact(n - k) * fact(n + k)) * ((k % 2) ? -1 : 1);
    }
    w[0] = 2.0L - 1.0L / n;
    return w;
}

// Conversions.
inline Dense from(const repcycle::CMatrix& m) {
    Dense d(m.rows());
    for (std::size_t i = 0; i < d.a.size(); ++i) d.a[i] = m.data()[i];
    return d;
}

inline repcycle::CMatrix to(const Dense& d) { return repcycle::CMatrix(d.n, d.n, d.a); }

}  // namespace oracle
