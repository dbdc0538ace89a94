// Copyright 2026 The dcert Authors
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

#ifndef DCERT_QLIN_H
#define DCERT_QLIN_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dcert {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Largest operator dimension handled by this library.
inline constexpr size_t kMaxDim = 64;

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(size_t dim);
    ComplexMatrix(size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |ket><ket|
    static ComplexMatrix projector(std::span<const Complex> ket);

    size_t dim() const { return dim_; }
    std::span<const Complex> entries() const { return entries_; }

    Complex &operator()(size_t row, size_t col) { return entries_[row * dim_ + col]; }
    const Complex &operator()(size_t row, size_t col) const { return entries_[row * dim_ + col]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// max |M - M^dagger| over entries.
    double hermiticity_residual() const;
    /// max |M - other| over entries; dimensions must match.
    double max_abs_diff(const ComplexMatrix &other) const;
    /// <bra|M|ket>
    Complex expectation(std::span<const Complex> ket) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend StateVector operator*(const ComplexMatrix &a, std::span<const Complex> v);

   private:
    size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Kronecker product; `a` is the most significant (left) factor.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector tensor(std::span<const Complex> a, std::span<const Complex> b);

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> v);

/// Qubit label in a two-qubit register. A is the left tensor factor.
enum class Subsystem { A, B };

Subsystem other(Subsystem s);

/// Reduces a 4x4 two-qubit operator to the 2x2 operator on `keep`.
ComplexMatrix partial_trace(const ComplexMatrix &rho, Subsystem keep);

/// Exchanges the two qubits of a 4x4 operator.
ComplexMatrix swap_subsystems(const ComplexMatrix &rho);

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column j pairs with eigenvalues[j]

    /// max |V diag(lambda) V^dagger - m|
    double reconstruction_residual(const ComplexMatrix &m) const;
};

/// Cyclic Jacobi diagonalization. Rejects inputs with hermiticity residual above 1e-8.
HermitianEigen eig_hermitian(const ComplexMatrix &m);
/// Eigenvalues only (ascending).
std::vector<double> eigenvalues_hermitian(const ComplexMatrix &m);

}  // namespace dcert

#endif
