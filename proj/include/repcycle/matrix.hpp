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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace repcycle {

using cplx = std::complex<double>;

// Dense row-major complex matrix with value semantics. Products go through
// the runtime-selected kernel table (see kernels.hpp).
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix diagonal(std::span<const cplx> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::span<cplx> values() { return data_; }
    std::span<const cplx> values() const { return data_; }

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx s);

    bool operator==(const CMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x);
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);

CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

cplx trace(const CMatrix& a);
double frobenius_norm(const CMatrix& a);
// Maximum absolute column sum.
double one_norm(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool all_finite(const CMatrix& a);
bool is_hermitian(const CMatrix& a, double tol);

// Ascending eigenvalues of a Hermitian matrix (only the lower triangle is read).
std::vector<double> hermitian_eigenvalues(const CMatrix& h);
// Largest singular value.
double operator_norm(const CMatrix& a);
// Solves A X = B for X with partial-pivoting LU.
CMatrix solve(const CMatrix& a, const CMatrix& b);

// Pure-state projector |psi><psi| (psi is not normalized here).
CMatrix outer(std::span<const cplx> psi);

}  // namespace repcycle
