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


#include "repcycle/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "repcycle/errors.hpp"
#include "repcycle/kernels.hpp"

namespace repcycle {

namespace {

using EigenMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMat> as_eigen(const CMatrix& m) {
    return Eigen::Map<const EigenMat>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                      static_cast<Eigen::Index>(m.cols()));
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

void require_square(const CMatrix& a, const char* op) {
    if (!a.is_square()) throw ShapeError(std::string(op) + ": matrix is not square");
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw ShapeError("CMatrix: data length does not match shape");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw ShapeError("CMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product: inner dimensions differ");
    CMatrix c(a.rows(), b.cols());
    kernels::active().gemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
    return c;
}

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) throw ShapeError("matvec: dimension mismatch");
    std::vector<cplx> y(a.rows());
    kernels::active().gemv(a.rows(), a.cols(), a.data(), x.data(), y.data());
    return y;
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw ShapeError("dotc: length mismatch");
    return kernels::active().dotc(a.size(), a.data(), b.data());
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix c = a;
    for (auto& v : c.values()) v = std::conj(v);
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx av = a(i, j);
            if (av == cplx{}) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = av * b(p, q);
        }
    }
    return k;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

cplx trace(const CMatrix& a) {
    require_square(a, "trace");
    cplx t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.values()) s += std::norm(v);
    return std::sqrt(s);
}

double one_norm(const CMatrix& a) {
    std::vector<double> col(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) col[j] += std::abs(a(i, j));
    return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

bool all_finite(const CMatrix& a) {
    return std::all_of(a.values().begin(), a.values().end(),
                       [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

bool is_hermitian(const CMatrix& a, double tol) {
    if (!a.is_square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
    require_square(h, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(as_eigen(h), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: solver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double operator_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    const auto ev = hermitian_eigenvalues(adjoint(a) * a);
    return std::sqrt(std::max(0.0, ev.back()));
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
    require_square(a, "solve");
    if (a.rows() != b.rows()) throw ShapeError("solve: right-hand side has wrong row count");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(as_eigen(a));
    const EigenMat x = lu.solve(Eigen::MatrixXcd(as_eigen(b)));
    CMatrix out(b.rows(), b.cols());
    std::copy(x.data(), x.data() + x.size(), out.data());
    return out;
}

CMatrix outer(std::span<const cplx> psi) {
    CMatrix m(psi.size(), psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return m;
}

}  // namespace repcycle
