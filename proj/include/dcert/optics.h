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

#ifndef DCERT_OPTICS_H
#define DCERT_OPTICS_H

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "dcert/correlations.h"
#include "dcert/qlin.h"

namespace dcert {

// Arm a carries qubit A (the CZ control), arm b carries qubit B (the target).
enum class Arm : uint8_t { A = 0, B = 1 };
enum class Polarization : uint8_t { H = 0, V = 1 };
enum class TemporalMode : uint8_t { Matched = 0, Orthogonal = 1 };

inline constexpr size_t kNumModes = 8;
inline constexpr size_t kNumModePairs = kNumModes * (kNumModes + 1) / 2;

struct OpticalMode {
    Arm arm;
    Polarization pol;
    TemporalMode temporal;

    /// arm * 4 + pol * 2 + temporal.
    size_t index() const { return size_t(arm) * 4 + size_t(pol) * 2 + size_t(temporal); }
    static OpticalMode from_index(size_t index);
};

/// Single-photon amplitudes over the eight modes (a creation operator f^dagger = sum f_i a_i^dagger).
using ModeVector = std::array<Complex, kNumModes>;

/// Two photons over eight bosonic modes.
///
/// Amplitudes are indexed by unordered pairs i <= j. A doubly-occupied mode stores the
/// coefficient of |2_i>, so (a_i^dagger)^2 |0> has amplitude sqrt(2). States may be
/// sub-normalized after lossy elements.
class TwoPhotonFockState {
   public:
    TwoPhotonFockState() = default;

    /// f^dagger g^dagger |0>.
    static TwoPhotonFockState from_photons(const ModeVector &first, const ModeVector &second);
    static size_t pair_index(size_t i, size_t j);

    Complex amplitude(size_t i, size_t j) const { return amplitudes_[pair_index(i, j)]; }
    Complex amplitude(OpticalMode m1, OpticalMode m2) const { return amplitude(m1.index(), m2.index()); }
    const std::array<Complex, kNumModePairs> &amplitudes() const { return amplitudes_; }
    double norm_squared() const;

    /// Applies a linear mode map a_in^dagger -> sum_out modes(out, in) a_out^dagger.
    TwoPhotonFockState transformed(const ComplexMatrix &modes) const;

    TwoPhotonFockState &operator+=(const TwoPhotonFockState &other);
    TwoPhotonFockState &operator*=(Complex scale);

    /// Total probability of exactly one photon in each arm.
    double coincidence_probability() const;

   private:
    std::array<Complex, kNumModePairs> amplitudes_{};
};

/// Partially polarizing beamsplitter, intensity reflectivities per polarization.
struct PPBSSpec {
    double eta_v = 2.0 / 3.0;
    double eta_h = 0.0;
};

/// Temporal mismatch between the photons entering the gate.
struct MismatchModel {
    double dtau_ratio = 0;                      // delta tau / tau_coh
    double c_scale = 2 * std::numbers::pi;      // delta omega * delta tau = c_scale * dtau_ratio

    /// 1 - exp(-(c_scale * dtau_ratio)^2). Throws std::domain_error for negative dtau_ratio.
    double xi() const;
    /// Temporal overlap amplitude sqrt(1 - xi).
    double overlap() const;
};

double xi_of_dtau(const MismatchModel &m);

/// 8x8 mode map of a beamsplitter between arms a and b. Per polarization the arms mix as
/// a^dagger -> sqrt(1-eta) a'^dagger + sqrt(eta) b'^dagger,
/// b^dagger -> -sqrt(eta) a'^dagger + sqrt(1-eta) b'^dagger.
ComplexMatrix beamsplitter_modes(const PPBSSpec &spec);
TwoPhotonFockState apply_beamsplitter(const TwoPhotonFockState &state, const PPBSSpec &spec);

struct OpticalElement {
    enum class Kind { PPBS, HAttenuator, HalfWaveHadamard };
    Kind kind;
    Arm arm = Arm::A;          // for single-arm elements
    PPBSSpec ppbs{};           // for Kind::PPBS
    double amplitude = 1.0;    // for Kind::HAttenuator

    ComplexMatrix mode_matrix() const;
    std::string describe() const;
};

struct OpticalCircuit {
    std::vector<OpticalElement> elements;

    /// Product of element mode maps, first element applied first.
    ComplexMatrix mode_matrix() const;
    TwoPhotonFockState apply(const TwoPhotonFockState &state) const;
};

/// Post-selected CZ core: central PPBS (eta_V = 2/3, eta_H = 0) followed by a 1/sqrt(3)
/// amplitude attenuation of H in each arm.
OpticalCircuit cz_circuit();

/// Hadamard on the target, CZ core, then Hadamards on target and control: a Bell analyzer
/// read out in the H/V basis of each arm.
OpticalCircuit bell_analyzer_circuit();

/// Input with qubit A's photon in arm a (matched temporal mode) and qubit B's photon in arm b
/// with temporal amplitudes (overlap, sqrt(1 - overlap^2)). `basis` is the two-qubit
/// computational index 2*pol_A + pol_B.
TwoPhotonFockState two_qubit_input(size_t basis, double overlap = 1.0);

/// 4x4 map from two-qubit input to matched-mode coincidence amplitudes: column = input basis,
/// row = 2*pol(arm a) + pol(arm b).
ComplexMatrix postselected_process(const OpticalCircuit &circuit);

/// |Tr(U^dagger M)|^2 / (d Tr(M^dagger M)): fidelity of the normalized single-Kraus map M with U.
double process_fidelity(const ComplexMatrix &process, const ComplexMatrix &target);

ComplexMatrix cz_unitary();

/// Analyzer POVM on the input two-qubit space: elements labeled phi+, phi-, psi+, psi- followed
/// by the non-coincidence element "fail". Temporal labels are traced out at detection.
MeasurementModel effective_bell_povm(const MismatchModel &m);

/// Label of the failure element in effective_bell_povm.
inline constexpr const char *kFailureLabel = "fail";

/// max(|E(00,11)|, |E(01,10)|): the coherences that separate phi+ from phi- and psi+ from psi-.
double bell_coherence(const ComplexMatrix &element);

}  // namespace dcert

#endif
