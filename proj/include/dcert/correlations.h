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

#ifndef DCERT_CORRELATIONS_H
#define DCERT_CORRELATIONS_H

#include <string>
#include <vector>

#include "dcert/qlin.h"
#include "dcert/qstate.h"

namespace dcert {

/// Binary entropy in bits; H2(0) = H2(1) = 0.
double binary_entropy(double q);

/// -sum lambda log2 lambda, with 0 log 0 := 0. Eigenvalues in [-1e-8, 0) count as 0.
double entropy_of_spectrum(std::span<const double> eigenvalues);
/// Von Neumann entropy in bits.
double entropy(const DensityMatrix &rho);

/// S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_information(const DensityMatrix &rho);

/// A POVM: PSD elements summing to identity, each with a label.
class MeasurementModel {
   public:
    MeasurementModel(std::vector<ComplexMatrix> elements, std::vector<std::string> labels);

    /// Projective qubit measurement along Bloch direction (theta, phi), outcomes "+" and "-".
    static MeasurementModel qubit_projective(double theta, double phi);
    /// Computational-basis projectors on `dim` levels, labeled by index.
    static MeasurementModel computational(size_t dim);

    size_t dim() const { return elements_.front().dim(); }
    size_t size() const { return elements_.size(); }
    const std::vector<ComplexMatrix> &elements() const { return elements_; }
    const std::vector<std::string> &labels() const { return labels_; }
    /// max |sum_b E_b - I|
    double completeness_residual() const;

   private:
    std::vector<ComplexMatrix> elements_;
    std::vector<std::string> labels_;
};

struct ConditionalOutcome {
    double probability;
    DensityMatrix state;
    std::string label;
};
using ConditionalEnsemble = std::vector<ConditionalOutcome>;

/// Measures qubit B with `m` (2x2 elements applied as I (x) E_b) and returns the states left on A.
/// Outcomes with probability below 1e-12 are dropped.
ConditionalEnsemble measure_conditional(const DensityMatrix &rho, const MeasurementModel &m);

struct BlochAngles {
    double theta = 0;  // [0, pi]
    double phi = 0;    // [0, 2 pi)
};

struct ClassicalCorrelation {
    double j = 0;
    BlochAngles argmax;
};

/// J for a fixed projective measurement on `measured`, i.e. S(rho_other) - sum p_b S(rho_other|b).
double classical_correlation_at(const DensityMatrix &rho, Subsystem measured, BlochAngles angles);

/// J(other|measured) maximized over rank-1 projective measurements on `measured`.
///
/// A 64x64 (theta, phi) grid picks the start point (ties go to the lexicographically
/// smallest angles) and Nelder-Mead refines it to 1e-9 in J.
ClassicalCorrelation classical_correlation(const DensityMatrix &rho, Subsystem measured = Subsystem::B);

struct CorrelationReport {
    double mutual_info = 0;
    double classical_corr = 0;
    double discord = 0;
    BlochAngles argmax;
};

/// Discord with measurements on `measured`; Subsystem::B gives delta(A|B).
CorrelationReport discord(const DensityMatrix &rho, Subsystem measured = Subsystem::B);

struct WeightedState {
    double probability;
    DensityMatrix state;
};

/// S(sum p_i rho_i) - sum p_i S(rho_i).
double holevo(std::span<const WeightedState> ensemble);

}  // namespace dcert

#endif
