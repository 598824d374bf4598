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


#include "repcycle/liouville.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "repcycle/errors.hpp"

namespace repcycle {

namespace {

std::size_t exact_sqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : 0;
}

double vector_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Padé numerator coefficients b_0..b_m for m = 3, 5, 7, 9, 13 and the
// largest 1-norm for which each degree reaches double precision.
constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                        2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13{64764752532480000.0,
                                         32382376266240000.0,
                                         7771770303897600.0,
                                         1187353796428800.0,
                                         129060195264000.0,
                                         10559470521600.0,
                                         670442572800.0,
                                         33522128640.0,
                                         1323241920.0,
                                         40840800.0,
                                         960960.0,
                                         16380.0,
                                         182.0,
                                         1.0};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

// Low-degree Padé: U = A * sum_odd b_j A^{j-1}, V = sum_even b_j A^j.
template <std::size_t N>
CMatrix pade_low(const CMatrix& a, const std::array<double, N>& b) {
    const std::size_t n = a.rows();
    const CMatrix a2 = a * a;
    std::vector<CMatrix> even_powers{CMatrix::identity(n), a2};
    while (2 * (even_powers.size() - 1) < N - 2) even_powers.push_back(even_powers.back() * a2);

    CMatrix u_inner(n, n);
    CMatrix v(n, n);
    for (std::size_t j = 0; j < N; ++j) {
        const CMatrix& p = even_powers[j / 2];
        if (j % 2 == 1) {
            u_inner += cplx(b[j]) * p;
        } else {
            v += cplx(b[j]) * p;
        }
    }
    const CMatrix u = a * u_inner;
    return solve(v - u, v + u);
}

CMatrix pade13(const CMatrix& a) {
    const std::size_t n = a.rows();
    const auto& b = kPade13;
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    const CMatrix ident = CMatrix::identity(n);

    CMatrix u_hi = cplx(b[13]) * a6 + cplx(b[11]) * a4 + cplx(b[9]) * a2;
    CMatrix u_inner = a6 * u_hi + cplx(b[7]) * a6 + cplx(b[5]) * a4 + cplx(b[3]) * a2 + cplx(b[1]) * ident;
    const CMatrix u = a * u_inner;

    CMatrix v_hi = cplx(b[12]) * a6 + cplx(b[10]) * a4 + cplx(b[8]) * a2;
    const CMatrix v = a6 * v_hi + cplx(b[6]) * a6 + cplx(b[4]) * a4 + cplx(b[2]) * a2 + cplx(b[0]) * ident;
    return solve(v - u, v + u);
}

}  // namespace

Observable::Observable(CMatrix m, std::string label) : m_(std::move(m)), label_(std::move(label)) {
    if (!m_.is_square()) throw ShapeError("Observable: matrix is not square");
    if (!is_hermitian(m_, kHermitianTol)) throw ValidationError("Observable: matrix is not Hermitian");
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) throw ShapeError("DensityMatrix: matrix is not square");
    if (!all_finite(m_)) throw NumericalError("DensityMatrix: non-finite entries");
    if (!is_hermitian(m_, kHermitianTol)) throw ValidationError("DensityMatrix: matrix is not Hermitian");
    const cplx tr = trace(m_);
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw ValidationError("DensityMatrix: trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    const auto ev = hermitian_eigenvalues(m_);
    if (ev.front() < kEigenvalueFloor) {
        throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(ev.front()));
    }
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) {
    const double nrm = vector_norm(psi);
    if (nrm == 0.0) throw ValidationError("DensityMatrix::pure: zero state vector");
    std::vector<cplx> unit(psi.begin(), psi.end());
    for (auto& x : unit) x /= nrm;
    return DensityMatrix(outer(unit));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(cplx(1.0 / static_cast<double>(dim)) * CMatrix::identity(dim));
}

LiouvilleVector::LiouvilleVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
    dim_ = exact_sqrt(entries_.size());
    if (dim_ == 0) throw ShapeError("LiouvilleVector: length is not a perfect square");
}

std::string_view kind_name(SuperKind kind) {
    switch (kind) {
        case SuperKind::hamiltonian:
            return "hamiltonian";
        case SuperKind::dissipator:
            return "dissipator";
        case SuperKind::generator:
            return "generator";
        case SuperKind::propagator:
            return "propagator";
    }
    return "unknown";
}

Superoperator::Superoperator(CMatrix m, SuperKind kind) : m_(std::move(m)), kind_(kind) {
    if (!m_.is_square()) throw ShapeError("Superoperator: matrix is not square");
    hilbert_dim_ = exact_sqrt(m_.rows());
    if (hilbert_dim_ == 0) throw ShapeError("Superoperator: dimension is not a perfect square");
    if (kind_ == SuperKind::hamiltonian && !is_hermitian(m_, kHermitianTol)) {
        throw ValidationError("Superoperator: Hamiltonian superoperator is not Hermitian");
    }
}

LiouvilleVector Superoperator::apply(const LiouvilleVector& v) const {
    if (v.size() != dim2()) throw ShapeError("Superoperator::apply: dimension mismatch");
    return LiouvilleVector(matvec(m_, v.entries()));
}

LiouvilleVector vectorize(const CMatrix& m) {
    if (!m.is_square() || m.rows() == 0) throw ShapeError("vectorize: matrix is not square");
    std::vector<cplx> v(m.size());
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[liouville_index(i, j, n)] = m(i, j);
    return LiouvilleVector(std::move(v));
}

LiouvilleVector vectorize(const DensityMatrix& rho) { return vectorize(rho.matrix()); }
LiouvilleVector vectorize(const Observable& o) { return vectorize(o.matrix()); }

CMatrix devectorize(const LiouvilleVector& v) {
    const std::size_t n = v.dim();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[liouville_index(i, j, n)];
    return m;
}

Superoperator liouville_hamiltonian(const Observable& h) {
    const std::size_t n = h.dim();
    const CMatrix id = CMatrix::identity(n);
    return Superoperator(kron(h.matrix(), id) - kron(id, transpose(h.matrix())), SuperKind::hamiltonian);
}

cplx liouville_inner(const LiouvilleVector& a, const LiouvilleVector& b) {
    if (a.size() != b.size()) throw ShapeError("liouville_inner: dimension mismatch");
    return dotc(a.entries(), b.entries());
}

CMatrix expm(const CMatrix& a) {
    if (!a.is_square()) throw ShapeError("expm: matrix is not square");
    if (!all_finite(a)) throw NumericalError("expm: non-finite entries");
    const double norm = one_norm(a);
    if (norm <= kTheta3) return pade_low(a, kPade3);
    if (norm <= kTheta5) return pade_low(a, kPade5);
    if (norm <= kTheta7) return pade_low(a, kPade7);
    if (norm <= kTheta9) return pade_low(a, kPade9);

    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    CMatrix r = pade13(cplx(std::ldexp(1.0, -squarings)) * a);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

Superoperator expm(const Superoperator& g) {
    if (g.hilbert_dim() > kMaxDenseHilbertDim) {
        throw ShapeError("expm: dense exponential limited to Hilbert dimension " +
                         std::to_string(kMaxDenseHilbertDim) + "; use expm_action");
    }
    switch (g.kind()) {
        case SuperKind::hamiltonian:
            return Superoperator(expm(cplx(0.0, -1.0) * g.matrix()), SuperKind::propagator);
        case SuperKind::dissipator:
        case SuperKind::generator:
            return Superoperator(expm(g.matrix()), SuperKind::propagator);
        case SuperKind::propagator:
            break;
    }
    throw ValidationError("expm: cannot exponentiate a propagator");
}

std::vector<cplx> expm_action(const LinearAction& apply, double norm_bound, std::span<const cplx> v) {
    if (!std::isfinite(norm_bound) || norm_bound < 0.0) throw NumericalError("expm_action: invalid norm bound");
    const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound / 0.5)));
    const double inv_steps = 1.0 / steps;
    constexpr int kMaxTerms = 60;
    constexpr double kTermTol = 1e-18;

    std::vector<cplx> out(v.begin(), v.end());
    for (int s = 0; s < steps; ++s) {
        std::vector<cplx> term = out;
        std::vector<cplx> acc = out;
        const double scale = vector_norm(out);
        for (int k = 1; k <= kMaxTerms; ++k) {
            term = apply(term);
            const double f = inv_steps / k;
            for (auto& t : term) t *= f;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
            if (vector_norm(term) <= kTermTol * std::max(scale, 1e-300)) break;
            if (k == kMaxTerms) throw NumericalError("expm_action: Taylor series did not converge");
        }
        out = std::move(acc);
    }
    return out;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> keep, std::span<const std::size_t> dims) {
    if (!rho.is_square()) throw ShapeError("partial_trace: matrix is not square");
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<std::size_t>());
    if (dims.empty() || total != rho.rows()) throw ShapeError("partial_trace: factor dimensions do not match");
    std::set<std::size_t> kept(keep.begin(), keep.end());
    if (kept.size() != keep.size()) throw ShapeError("partial_trace: repeated subsystem index");
    for (auto k : kept)
        if (k >= dims.size()) throw ShapeError("partial_trace: subsystem index out of range");

    // Split every full index into (kept index, traced index).
    const std::size_t n = rho.rows();
    std::vector<std::size_t> kept_part(n, 0);
    std::vector<std::size_t> traced_part(n, 0);
    std::size_t kept_dim = 1;
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t rem = idx;
        std::size_t kp = 0;
        std::size_t tp = 0;
        std::size_t kmul = 1;
        std::size_t tmul = 1;
        for (std::size_t f = dims.size(); f-- > 0;) {
            const std::size_t digit = rem % dims[f];
            rem /= dims[f];
            if (kept.count(f)) {
                kp += digit * kmul;
                kmul *= dims[f];
            } else {
                tp += digit * tmul;
                tmul *= dims[f];
            }
        }
        kept_part[idx] = kp;
        traced_part[idx] = tp;
        kept_dim = kmul;
    }

    CMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (traced_part[i] == traced_part[j]) out(kept_part[i], kept_part[j]) += rho(i, j);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
    return DensityMatrix(partial_trace(rho.matrix(), keep, dims));
}

double purity(const DensityMatrix& rho) {
    double s = 0.0;
    for (const auto& v : rho.matrix().values()) s += std::norm(v);
    return s;
}

double renyi2(const DensityMatrix& rho) { return -std::log(purity(rho)); }

}  // namespace repcycle
