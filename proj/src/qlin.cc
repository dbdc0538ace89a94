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

#include "dcert/qlin.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dcert {

namespace {

constexpr double kHermitianTolerance = 1e-8;
constexpr double kJacobiOffDiagonalTolerance = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(
            "matrix dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

double off_diagonal_norm(const ComplexMatrix &m) {
    double total = 0;
    for (size_t r = 0; r < m.dim(); r++) {
        for (size_t c = 0; c < m.dim(); c++) {
            if (r != c) {
                total += std::norm(m(r, c));
            }
        }
    }
    return std::sqrt(total);
}

double frobenius_norm(const ComplexMatrix &m) {
    double total = 0;
    for (const auto &e : m.entries()) {
        total += std::norm(e);
    }
    return std::sqrt(total);
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("matrix dimension must be in [1, 64], got " + std::to_string(dim));
    }
}

ComplexMatrix::ComplexMatrix(size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("matrix dimension must be in [1, 64], got " + std::to_string(dim));
    }
    if (entries_.size() != dim * dim) {
        throw std::invalid_argument(
            "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
    ComplexMatrix m(ket.size());
    for (size_t r = 0; r < ket.size(); r++) {
        for (size_t c = 0; c < ket.size(); c++) {
            m(r, c) = ket[r] * std::conj(ket[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t k = 0; k < dim_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::hermiticity_residual() const {
    double worst = 0;
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = r; c < dim_; c++) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    require_same_dim(*this, other);
    double worst = 0;
    for (size_t k = 0; k < entries_.size(); k++) {
        worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
    }
    return worst;
}

Complex ComplexMatrix::expectation(std::span<const Complex> ket) const {
    if (ket.size() != dim_) {
        throw std::invalid_argument("vector length does not match matrix dimension");
    }
    Complex total = 0;
    for (size_t r = 0; r < dim_; r++) {
        Complex row = 0;
        for (size_t c = 0; c < dim_; c++) {
            row += (*this)(r, c) * ket[c];
        }
        total += std::conj(ket[r]) * row;
    }
    return total;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other);
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other);
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    size_t n = a.dim();
    ComplexMatrix out(n);
    for (size_t r = 0; r < n; r++) {
        for (size_t k = 0; k < n; k++) {
            Complex ark = a(r, k);
            if (ark == Complex{0}) {
                continue;
            }
            for (size_t c = 0; c < n; c++) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

StateVector operator*(const ComplexMatrix &a, std::span<const Complex> v) {
    if (v.size() != a.dim()) {
        throw std::invalid_argument("vector length does not match matrix dimension");
    }
    StateVector out(a.dim());
    for (size_t r = 0; r < a.dim(); r++) {
        for (size_t c = 0; c < a.dim(); c++) {
            out[r] += a(r, c) * v[c];
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t n = a.dim() * b.dim();
    if (n > kMaxDim) {
        throw std::invalid_argument("tensor product dimension " + std::to_string(n) + " exceeds 64");
    }
    ComplexMatrix out(n);
    for (size_t ar = 0; ar < a.dim(); ar++) {
        for (size_t ac = 0; ac < a.dim(); ac++) {
            for (size_t br = 0; br < b.dim(); br++) {
                for (size_t bc = 0; bc < b.dim(); bc++) {
                    out(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
                }
            }
        }
    }
    return out;
}

StateVector tensor(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() * b.size() > kMaxDim) {
        throw std::invalid_argument("tensor product dimension exceeds 64");
    }
    StateVector out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) {
        throw std::invalid_argument("inner product of vectors with different lengths");
    }
    Complex total = 0;
    for (size_t k = 0; k < bra.size(); k++) {
        total += std::conj(bra[k]) * ket[k];
    }
    return total;
}

double norm(std::span<const Complex> v) {
    return std::sqrt(std::real(inner(v, v)));
}

Subsystem other(Subsystem s) {
    return s == Subsystem::A ? Subsystem::B : Subsystem::A;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, Subsystem keep) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("partial_trace expects a 4x4 operator, got dim " + std::to_string(rho.dim()));
    }
    ComplexMatrix out(2);
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            for (size_t t = 0; t < 2; t++) {
                if (keep == Subsystem::A) {
                    out(i, j) += rho(2 * i + t, 2 * j + t);
                } else {
                    out(i, j) += rho(2 * t + i, 2 * t + j);
                }
            }
        }
    }
    return out;
}

ComplexMatrix swap_subsystems(const ComplexMatrix &rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("swap_subsystems expects a 4x4 operator");
    }
    auto swapped = [](size_t k) { return ((k & 1) << 1) | (k >> 1); };
    ComplexMatrix out(4);
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            out(swapped(r), swapped(c)) = rho(r, c);
        }
    }
    return out;
}

double HermitianEigen::reconstruction_residual(const ComplexMatrix &m) const {
    size_t n = eigenvalues.size();
    ComplexMatrix rebuilt(n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            Complex total = 0;
            for (size_t k = 0; k < n; k++) {
                total += eigenvectors(r, k) * eigenvalues[k] * std::conj(eigenvectors(c, k));
            }
            rebuilt(r, c) = total;
        }
    }
    return rebuilt.max_abs_diff(m);
}

HermitianEigen eig_hermitian(const ComplexMatrix &m) {
    double residual = m.hermiticity_residual();
    if (residual > kHermitianTolerance) {
        throw std::invalid_argument("eig_hermitian: input is not Hermitian (residual max|M - M^dagger| = " +
                                    std::to_string(residual) + ")");
    }
    size_t n = m.dim();
    ComplexMatrix a = (m + m.adjoint()) * Complex{0.5};
    ComplexMatrix v = ComplexMatrix::identity(n);
    double threshold = kJacobiOffDiagonalTolerance * std::max(1.0, frobenius_norm(a));

    for (int sweep = 0; sweep < kJacobiMaxSweeps && off_diagonal_norm(a) > threshold; sweep++) {
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double g = std::abs(apq);
                if (g == 0) {
                    continue;
                }
                // Rephase column q to make the pivot real, then apply a real Givens rotation.
                Complex phase = std::conj(apq) / g;
                double alpha = std::real(a(p, p));
                double beta = std::real(a(q, q));
                double theta = 0.5 * std::atan2(2 * g, beta - alpha);
                double c = std::cos(theta);
                double s = std::sin(theta);
                Complex g00 = c;
                Complex g01 = s;
                Complex g10 = -s * phase;
                Complex g11 = c * phase;

                for (size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * g00 + akq * g10;
                    a(k, q) = akp * g01 + akq * g11;
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * g00 + vkq * g10;
                    v(k, q) = vkp * g01 + vkq * g11;
                }
                for (size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
                    a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = std::real(a(p, p));
                a(q, q) = std::real(a(q, q));
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return std::real(a(x, x)) < std::real(a(y, y)); });

    HermitianEigen result{std::vector<double>(n), ComplexMatrix(n)};
    for (size_t j = 0; j < n; j++) {
        result.eigenvalues[j] = std::real(a(order[j], order[j]));
        for (size_t r = 0; r < n; r++) {
            result.eigenvectors(r, j) = v(r, order[j]);
        }
    }
    return result;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix &m) {
    return eig_hermitian(m).eigenvalues;
}

}  // namespace dcert
