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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repcycle/matrix.hpp"

namespace repcycle {

// Vectorization convention shared by every module: row-major flattening,
// |rho>_{i*N + j} = rho_{ij}. Under it vec(A rho B) = (A ⊗ B^T) vec(rho), so
// the commutator superoperator is H ⊗ I - I ⊗ H^T.
enum class VecOrder { row_major };
inline constexpr VecOrder kVectorization = VecOrder::row_major;

constexpr std::size_t liouville_index(std::size_t row, std::size_t col, std::size_t dim) { return row * dim + col; }

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

// Largest Hilbert dimension (6 qubits) for which full Liouville matrices are
// built and exponentiated.
inline constexpr std::size_t kMaxDenseHilbertDim = 64;

class Observable {
  public:
    explicit Observable(CMatrix m, std::string label = {});

    std::size_t dim() const { return m_.rows(); }
    const CMatrix& matrix() const { return m_; }
    const std::string& label() const { return label_; }

  private:
    CMatrix m_;
    std::string label_;
};

// Hermitian, unit-trace, positive semidefinite operator; checked on
// construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(CMatrix m);

    static DensityMatrix pure(std::span<const cplx> psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return m_.rows(); }
    const CMatrix& matrix() const { return m_; }

  private:
    CMatrix m_;
};

class LiouvilleVector {
  public:
    explicit LiouvilleVector(std::vector<cplx> entries);

    // Hilbert-space dimension N (the vector has N^2 entries).
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    std::span<const cplx> entries() const { return entries_; }
    const cplx& operator[](std::size_t i) const { return entries_[i]; }

  private:
    std::vector<cplx> entries_;
    std::size_t dim_ = 0;
};

enum class SuperKind { hamiltonian, dissipator, generator, propagator };

std::string_view kind_name(SuperKind kind);

class Superoperator {
  public:
    Superoperator(CMatrix m, SuperKind kind);

    SuperKind kind() const { return kind_; }
    std::size_t dim2() const { return m_.rows(); }
    std::size_t hilbert_dim() const { return hilbert_dim_; }
    const CMatrix& matrix() const { return m_; }

    LiouvilleVector apply(const LiouvilleVector& v) const;

  private:
    CMatrix m_;
    SuperKind kind_;
    std::size_t hilbert_dim_ = 0;
};

LiouvilleVector vectorize(const CMatrix& m);
LiouvilleVector vectorize(const DensityMatrix& rho);
LiouvilleVector vectorize(const Observable& o);
CMatrix devectorize(const LiouvilleVector& v);

// H ⊗ I - I ⊗ H^T
Superoperator liouville_hamiltonian(const Observable& h);

// <a|b>, conjugate-linear in a; equals tr[A^† B].
cplx liouville_inner(const LiouvilleVector& a, const LiouvilleVector& b);

// Padé [m/m] scaling and squaring; m adapts to the 1-norm.
CMatrix expm(const CMatrix& a);

// Propagator e^g for generator/dissipator kinds, e^{-i g} for the
// Hamiltonian kind. Limited to kMaxDenseHilbertDim.
Superoperator expm(const Superoperator& g);

// Linear map on vectors, used by the matrix-free exponential.
using LinearAction = std::function<std::vector<cplx>(std::span<const cplx>)>;

// e^{A} v by scaled Taylor series without materializing e^{A}. norm_bound
// must bound the operator 2-norm of A from above.
std::vector<cplx> expm_action(const LinearAction& apply, double norm_bound, std::span<const cplx> v);

// Keeps the factors listed in `keep` (any order; result is ordered by factor
// index) of a tensor product with the given factor dimensions.
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> keep, std::span<const std::size_t> dims);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

double purity(const DensityMatrix& rho);
double renyi2(const DensityMatrix& rho);

}  // namespace repcycle
