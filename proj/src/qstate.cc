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

#include "dcert/qstate.h"

#include <cmath>
#include <stdexcept>

namespace dcert {

namespace {

constexpr double kHermitianTolerance = 1e-8;
constexpr double kTraceTolerance = 1e-10;
constexpr double kNegativityTolerance = 1e-8;

const double kInvSqrt2 = 1 / std::sqrt(2.0);

StateVector polarization(std::string_view name) {
    const Complex i{0, 1};
    if (name == "H") return {1, 0};
    if (name == "V") return {0, 1};
    if (name == "D") return {kInvSqrt2, kInvSqrt2};
    if (name == "A") return {kInvSqrt2, -kInvSqrt2};
    if (name == "R") return {kInvSqrt2, i * kInvSqrt2};
    if (name == "L") return {kInvSqrt2, -i * kInvSqrt2};
    throw std::invalid_argument("unknown polarization " + std::string(name));
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (m.dim() != 2 && m.dim() != 4) {
        throw std::invalid_argument("density matrix must be 2x2 or 4x4, got dim " + std::to_string(m.dim()));
    }
    double herm = m.hermiticity_residual();
    if (herm > kHermitianTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
    }
    Complex tr = m.trace();
    if (std::abs(tr - Complex{1}) > kTraceTolerance) {
        throw std::invalid_argument("density matrix trace is " + std::to_string(std::real(tr)) + ", expected 1");
    }
    double smallest = eigenvalues_hermitian(m).front();
    if (smallest < -kNegativityTolerance) {
        throw std::invalid_argument("density matrix has negative eigenvalue " + std::to_string(smallest));
    }
    return DensityMatrix((m + m.adjoint()) * Complex{0.5});
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    double n = norm(psi);
    if (std::abs(n - 1) > 1e-10) {
        throw std::invalid_argument("pure state vector must have unit norm, got " + std::to_string(n));
    }
    return from_matrix(ComplexMatrix::projector(psi));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t dim) {
    return from_matrix(ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim)});
}

EncodingKey EncodingKey::from_index(size_t index) {
    if (index > 3) {
        throw std::invalid_argument("encoding key index must be in [0, 3]");
    }
    return EncodingKey{static_cast<uint8_t>(index >> 1), static_cast<uint8_t>(index & 1)};
}

std::array<EncodingKey, 4> EncodingKey::all() {
    return {from_index(0), from_index(1), from_index(2), from_index(3)};
}

std::string to_string(EncodingKey k) {
    return "(" + std::to_string(k.b1) + "," + std::to_string(k.b2) + ")";
}

std::string_view bell_label(BellState which) {
    switch (which) {
        case BellState::PhiPlus:
            return "phi+";
        case BellState::PhiMinus:
            return "phi-";
        case BellState::PsiPlus:
            return "psi+";
        case BellState::PsiMinus:
            return "psi-";
    }
    throw std::invalid_argument("unknown Bell state");
}

StateVector bell_state(BellState which) {
    switch (which) {
        case BellState::PhiPlus:
            return {kInvSqrt2, 0, 0, kInvSqrt2};
        case BellState::PhiMinus:
            return {kInvSqrt2, 0, 0, -kInvSqrt2};
        case BellState::PsiPlus:
            return {0, kInvSqrt2, kInvSqrt2, 0};
        case BellState::PsiMinus:
            return {0, kInvSqrt2, -kInvSqrt2, 0};
    }
    throw std::invalid_argument("unknown Bell state");
}

ComplexMatrix pauli_x() {
    return ComplexMatrix(2, {0, 1, 1, 0});
}

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, {0, Complex{0, -1}, Complex{0, 1}, 0});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix(2, {1, 0, 0, -1});
}

ComplexMatrix encoding_unitary(EncodingKey k) {
    ComplexMatrix u = ComplexMatrix::identity(2);
    if (k.b1) {
        u = u * pauli_x();
    }
    if (k.b2) {
        u = u * pauli_z();
    }
    return u;
}

DensityMatrix resource_state() {
    ComplexMatrix m(4);
    for (auto which : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus}) {
        m += ComplexMatrix::projector(bell_state(which));
    }
    return DensityMatrix::from_matrix(m * Complex{1.0 / 3.0});
}

ProductEnsemble product_decomposition() {
    ProductEnsemble members;
    for (std::string_view name : {"H", "V", "D", "A", "R", "L"}) {
        StateVector single = polarization(name);
        members.push_back({1.0 / 6.0, tensor(single, single), std::string(name) + std::string(name)});
    }
    return members;
}

int schmidt_rank(std::span<const Complex> psi, double tol) {
    if (psi.size() != 4) {
        throw std::invalid_argument("schmidt_rank expects a two-qubit vector");
    }
    // Singular values of the 2x2 coefficient matrix are sqrt of eig(C C^dagger).
    ComplexMatrix c(2, {psi[0], psi[1], psi[2], psi[3]});
    int rank = 0;
    for (double lambda : eigenvalues_hermitian(c * c.adjoint())) {
        if (std::sqrt(std::max(lambda, 0.0)) > tol) {
            rank++;
        }
    }
    return rank;
}

DensityMatrix depolarize(const DensityMatrix &rho, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::domain_error("noise parameter p must be in [0, 1], got " + std::to_string(p));
    }
    size_t d = rho.dim();
    ComplexMatrix m = rho.matrix() * Complex{p} + ComplexMatrix::identity(d) * Complex{(1 - p) / static_cast<double>(d)};
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix encode(const DensityMatrix &rho, EncodingKey k) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("encode expects a two-qubit state");
    }
    ComplexMatrix u = tensor(encoding_unitary(k), ComplexMatrix::identity(2));
    return DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
}

StateVector encode(std::span<const Complex> psi, EncodingKey k) {
    if (psi.size() != 4) {
        throw std::invalid_argument("encode expects a two-qubit vector");
    }
    // sigma_z^b2 then sigma_x^b1 on the left (A) index.
    StateVector out(psi.begin(), psi.end());
    if (k.b2) {
        out[2] = -out[2];
        out[3] = -out[3];
    }
    if (k.b1) {
        std::swap(out[0], out[2]);
        std::swap(out[1], out[3]);
    }
    return out;
}

BellState omitted_bell_state(EncodingKey k) {
    static constexpr std::array<BellState, 4> kOmitted = {
        BellState::PsiMinus, BellState::PsiPlus, BellState::PhiMinus, BellState::PhiPlus};
    return kOmitted[k.index()];
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (size_t r = 0; r < m.dim(); r++) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (size_t c = 0; c < m.dim(); c++) {
            re_row.push_back(std::real(m(r, c)));
            im_row.push_back(std::imag(m(r, c)));
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re")) {
        throw std::invalid_argument("matrix JSON must be an object with \"dim\" and \"re\" fields");
    }
    if (!doc["dim"].is_number_unsigned()) {
        throw std::invalid_argument("matrix JSON \"dim\" must be a positive integer");
    }
    size_t dim = doc["dim"].get<size_t>();
    bool has_im = doc.contains("im");
    auto check_rows = [dim](const nlohmann::json &rows, const char *name) {
        if (!rows.is_array() || rows.size() != dim) {
            throw std::invalid_argument(std::string("matrix JSON \"") + name + "\" must have dim rows");
        }
        for (const auto &row : rows) {
            if (!row.is_array() || row.size() != dim) {
                throw std::invalid_argument(std::string("matrix JSON \"") + name + "\" rows must have dim entries");
            }
            for (const auto &x : row) {
                if (!x.is_number()) {
                    throw std::invalid_argument(std::string("matrix JSON \"") + name + "\" entries must be numbers");
                }
            }
        }
    };
    check_rows(doc["re"], "re");
    if (has_im) {
        check_rows(doc["im"], "im");
    }
    ComplexMatrix m(dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            double im = has_im ? doc["im"][r][c].get<double>() : 0.0;
            m(r, c) = Complex{doc["re"][r][c].get<double>(), im};
        }
    }
    return m;
}

DensityMatrix state_from_json(const nlohmann::json &doc) {
    return DensityMatrix::from_matrix(matrix_from_json(doc));
}

}  // namespace dcert
