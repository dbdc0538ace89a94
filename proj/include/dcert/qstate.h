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

#ifndef DCERT_QSTATE_H
#define DCERT_QSTATE_H

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcert/qlin.h"
#include "json.hpp"

namespace dcert {

/// Validated density operator on one or two qubits.
///
/// Hermitian to 1e-8, unit trace to 1e-10, smallest eigenvalue >= -1e-8.
class DensityMatrix {
   public:
    /// Validates and stores `m`. Throws std::invalid_argument naming the violated invariant.
    static DensityMatrix from_matrix(ComplexMatrix m);
    /// |psi><psi| for a unit-norm vector of length 2 or 4.
    static DensityMatrix pure(std::span<const Complex> psi);
    static DensityMatrix maximally_mixed(size_t dim);

    const ComplexMatrix &matrix() const { return mat_; }
    size_t dim() const { return mat_.dim(); }

   private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

/// The classical message k = (b1, b2).
struct EncodingKey {
    uint8_t b1 = 0;
    uint8_t b2 = 0;

    /// 2*b1 + b2.
    size_t index() const { return 2 * size_t{b1} + b2; }
    static EncodingKey from_index(size_t index);
    static std::array<EncodingKey, 4> all();

    bool operator==(const EncodingKey &) const = default;
};

std::string to_string(EncodingKey k);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus};

std::string_view bell_label(BellState which);
StateVector bell_state(BellState which);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// sigma_x^b1 sigma_z^b2, acting on qubit A.
ComplexMatrix encoding_unitary(EncodingKey k);

/// Equal mixture of phi+, phi- and psi+.
DensityMatrix resource_state();

struct ProductMember {
    double weight;
    StateVector state;
    std::string label;
};
using ProductEnsemble = std::vector<ProductMember>;

/// Six aligned product states {HH, VV, DD, AA, RR, LL}, weight 1/6 each, whose mixture is resource_state().
ProductEnsemble product_decomposition();

/// Number of nonzero Schmidt coefficients of a two-qubit vector.
int schmidt_rank(std::span<const Complex> psi, double tol = 1e-10);

/// p*rho + (1-p)*I/d. Throws std::domain_error for p outside [0, 1].
DensityMatrix depolarize(const DensityMatrix &rho, double p);

/// (U_k (x) I) rho (U_k (x) I)^dagger.
DensityMatrix encode(const DensityMatrix &rho, EncodingKey k);
StateVector encode(std::span<const Complex> psi, EncodingKey k);

/// The Bell state absent from encode(resource_state(), k).
BellState omitted_bell_state(EncodingKey k);

/// {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &doc);
/// Parses and applies DensityMatrix validation.
DensityMatrix state_from_json(const nlohmann::json &doc);

}  // namespace dcert

#endif
