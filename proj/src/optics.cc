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

#include "dcert/optics.h"

#include <cmath>
#include <stdexcept>

#include "dcert/qstate.h"

namespace dcert {

namespace {

const double kSqrt2 = std::sqrt(2.0);

size_t mode(Arm arm, Polarization pol, TemporalMode t) {
    return OpticalMode{arm, pol, t}.index();
}

/// Detector index 2*x + y -> Bell label for the analyzer readout.
constexpr std::array<size_t, 4> kDetectionForBell = {0, 2, 1, 3};  // phi+, phi-, psi+, psi-

/// delta omega * delta tau.
double time_bandwidth(const MismatchModel &m) {
    if (!(m.dtau_ratio >= 0)) {
        throw std::domain_error("dtau_ratio must be non-negative, got " + std::to_string(m.dtau_ratio));
    }
    if (!(m.c_scale > 0)) {
        throw std::domain_error("c_scale must be positive, got " + std::to_string(m.c_scale));
    }
    return m.c_scale * m.dtau_ratio;
}

}  // namespace

OpticalMode OpticalMode::from_index(size_t index) {
    if (index >= kNumModes) {
        throw std::invalid_argument("optical mode index out of range");
    }
    return {static_cast<Arm>(index >> 2), static_cast<Polarization>((index >> 1) & 1),
            static_cast<TemporalMode>(index & 1)};
}

size_t TwoPhotonFockState::pair_index(size_t i, size_t j) {
    if (i > j) {
        std::swap(i, j);
    }
    if (j >= kNumModes) {
        throw std::invalid_argument("optical mode index out of range");
    }
    // Row-major upper triangle including the diagonal.
    return i * kNumModes - i * (i - 1) / 2 + (j - i);
}

TwoPhotonFockState TwoPhotonFockState::from_photons(const ModeVector &first, const ModeVector &second) {
    TwoPhotonFockState s;
    for (size_t i = 0; i < kNumModes; i++) {
        s.amplitudes_[pair_index(i, i)] = kSqrt2 * first[i] * second[i];
        for (size_t j = i + 1; j < kNumModes; j++) {
            s.amplitudes_[pair_index(i, j)] = first[i] * second[j] + first[j] * second[i];
        }
    }
    return s;
}

double TwoPhotonFockState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

TwoPhotonFockState TwoPhotonFockState::transformed(const ComplexMatrix &modes) const {
    if (modes.dim() != kNumModes) {
        throw std::invalid_argument("mode map must be 8x8");
    }
    // Symmetric coefficient matrix C with state = sum_ij C_ij a_i^dagger a_j^dagger |0>.
    std::array<std::array<Complex, kNumModes>, kNumModes> c{};
    for (size_t i = 0; i < kNumModes; i++) {
        c[i][i] = amplitude(i, i) / kSqrt2;
        for (size_t j = i + 1; j < kNumModes; j++) {
            c[i][j] = c[j][i] = amplitude(i, j) / 2.0;
        }
    }
    // C' = U C U^T
    std::array<std::array<Complex, kNumModes>, kNumModes> uc{};
    for (size_t o = 0; o < kNumModes; o++) {
        for (size_t k = 0; k < kNumModes; k++) {
            Complex u = modes(o, k);
            if (u == Complex{0}) {
                continue;
            }
            for (size_t j = 0; j < kNumModes; j++) {
                uc[o][j] += u * c[k][j];
            }
        }
    }
    TwoPhotonFockState out;
    for (size_t i = 0; i < kNumModes; i++) {
        for (size_t j = i; j < kNumModes; j++) {
            Complex total = 0;
            for (size_t k = 0; k < kNumModes; k++) {
                total += uc[i][k] * modes(j, k);
            }
            out.amplitudes_[pair_index(i, j)] = i == j ? kSqrt2 * total : 2.0 * total;
        }
    }
    return out;
}

TwoPhotonFockState &TwoPhotonFockState::operator+=(const TwoPhotonFockState &other) {
    for (size_t k = 0; k < kNumModePairs; k++) {
        amplitudes_[k] += other.amplitudes_[k];
    }
    return *this;
}

TwoPhotonFockState &TwoPhotonFockState::operator*=(Complex scale) {
    for (auto &a : amplitudes_) {
        a *= scale;
    }
    return *this;
}

double TwoPhotonFockState::coincidence_probability() const {
    double total = 0;
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 4; j < kNumModes; j++) {
            total += std::norm(amplitude(i, j));
        }
    }
    return total;
}

double MismatchModel::xi() const {
    double x = time_bandwidth(*this);
    return -std::expm1(-x * x);
}

double MismatchModel::overlap() const {
    double x = time_bandwidth(*this);
    return std::exp(-0.5 * x * x);
}

double xi_of_dtau(const MismatchModel &m) {
    return m.xi();
}

ComplexMatrix beamsplitter_modes(const PPBSSpec &spec) {
    if (!(spec.eta_v >= 0 && spec.eta_v <= 1 && spec.eta_h >= 0 && spec.eta_h <= 1)) {
        throw std::domain_error("beamsplitter reflectivities must lie in [0, 1]");
    }
    ComplexMatrix u(kNumModes);
    for (auto pol : {Polarization::H, Polarization::V}) {
        double eta = pol == Polarization::H ? spec.eta_h : spec.eta_v;
        double t = std::sqrt(1 - eta);
        double r = std::sqrt(eta);
        for (auto tm : {TemporalMode::Matched, TemporalMode::Orthogonal}) {
            size_t a = mode(Arm::A, pol, tm);
            size_t b = mode(Arm::B, pol, tm);
            u(a, a) = t;
            u(b, a) = r;
            u(a, b) = -r;
            u(b, b) = t;
        }
    }
    return u;
}

TwoPhotonFockState apply_beamsplitter(const TwoPhotonFockState &state, const PPBSSpec &spec) {
    return state.transformed(beamsplitter_modes(spec));
}

ComplexMatrix OpticalElement::mode_matrix() const {
    switch (kind) {
        case Kind::PPBS:
            return beamsplitter_modes(ppbs);
        case Kind::HAttenuator: {
            ComplexMatrix u = ComplexMatrix::identity(kNumModes);
            for (auto tm : {TemporalMode::Matched, TemporalMode::Orthogonal}) {
                size_t h = mode(arm, Polarization::H, tm);
                u(h, h) = amplitude;
            }
            return u;
        }
        case Kind::HalfWaveHadamard: {
            ComplexMatrix u = ComplexMatrix::identity(kNumModes);
            double s = 1 / kSqrt2;
            for (auto tm : {TemporalMode::Matched, TemporalMode::Orthogonal}) {
                size_t h = mode(arm, Polarization::H, tm);
                size_t v = mode(arm, Polarization::V, tm);
                u(h, h) = s;
                u(v, h) = s;
                u(h, v) = s;
                u(v, v) = -s;
            }
            return u;
        }
    }
    throw std::invalid_argument("unknown optical element");
}

std::string OpticalElement::describe() const {
    std::string arm_name = arm == Arm::A ? "a" : "b";
    switch (kind) {
        case Kind::PPBS:
            return "PPBS(eta_V=" + std::to_string(ppbs.eta_v) + ", eta_H=" + std::to_string(ppbs.eta_h) + ")";
        case Kind::HAttenuator:
            return "H-attenuator(arm " + arm_name + ", amplitude=" + std::to_string(amplitude) + ")";
        case Kind::HalfWaveHadamard:
            return "Hadamard(arm " + arm_name + ")";
    }
    return "?";
}

ComplexMatrix OpticalCircuit::mode_matrix() const {
    ComplexMatrix total = ComplexMatrix::identity(kNumModes);
    for (const auto &e : elements) {
        total = e.mode_matrix() * total;
    }
    return total;
}

TwoPhotonFockState OpticalCircuit::apply(const TwoPhotonFockState &state) const {
    return state.transformed(mode_matrix());
}

OpticalCircuit cz_circuit() {
    using K = OpticalElement::Kind;
    double balance = 1 / std::sqrt(3.0);
    return OpticalCircuit{{
        OpticalElement{K::PPBS, Arm::A, PPBSSpec{2.0 / 3.0, 0.0}},
        OpticalElement{K::HAttenuator, Arm::A, {}, balance},
        OpticalElement{K::HAttenuator, Arm::B, {}, balance},
    }};
}

OpticalCircuit bell_analyzer_circuit() {
    using K = OpticalElement::Kind;
    OpticalCircuit circuit;
    circuit.elements.push_back({K::HalfWaveHadamard, Arm::B});
    for (const auto &e : cz_circuit().elements) {
        circuit.elements.push_back(e);
    }
    circuit.elements.push_back({K::HalfWaveHadamard, Arm::B});
    circuit.elements.push_back({K::HalfWaveHadamard, Arm::A});
    return circuit;
}

TwoPhotonFockState two_qubit_input(size_t basis, double overlap) {
    if (basis > 3) {
        throw std::invalid_argument("two-qubit basis index must be in [0, 3]");
    }
    if (!(overlap >= 0 && overlap <= 1)) {
        throw std::domain_error("temporal overlap must lie in [0, 1]");
    }
    auto pol_a = static_cast<Polarization>(basis >> 1);
    auto pol_b = static_cast<Polarization>(basis & 1);
    ModeVector first{};
    ModeVector second{};
    first[mode(Arm::A, pol_a, TemporalMode::Matched)] = 1;
    second[mode(Arm::B, pol_b, TemporalMode::Matched)] = overlap;
    second[mode(Arm::B, pol_b, TemporalMode::Orthogonal)] = std::sqrt(1 - overlap * overlap);
    return TwoPhotonFockState::from_photons(first, second);
}

ComplexMatrix postselected_process(const OpticalCircuit &circuit) {
    ComplexMatrix modes = circuit.mode_matrix();
    ComplexMatrix process(4);
    for (size_t in = 0; in < 4; in++) {
        auto out = two_qubit_input(in).transformed(modes);
        for (size_t x = 0; x < 2; x++) {
            for (size_t y = 0; y < 2; y++) {
                process(2 * x + y, in) = out.amplitude(mode(Arm::A, Polarization(x), TemporalMode::Matched),
                                                       mode(Arm::B, Polarization(y), TemporalMode::Matched));
            }
        }
    }
    return process;
}

double process_fidelity(const ComplexMatrix &process, const ComplexMatrix &target) {
    double weight = std::real((process.adjoint() * process).trace());
    if (weight <= 0) {
        return 0;
    }
    Complex overlap = (target.adjoint() * process).trace();
    return std::norm(overlap) / (static_cast<double>(process.dim()) * weight);
}

ComplexMatrix cz_unitary() {
    std::array<double, 4> diag = {1, 1, 1, -1};
    return ComplexMatrix::diagonal(diag);
}

MeasurementModel effective_bell_povm(const MismatchModel &m) {
    double v = m.overlap();
    ComplexMatrix modes = bell_analyzer_circuit().mode_matrix();
    std::array<TwoPhotonFockState, 4> outputs;
    for (size_t in = 0; in < 4; in++) {
        outputs[in] = two_qubit_input(in, v).transformed(modes);
    }

    std::array<ComplexMatrix, 4> by_detection = {ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)};
    for (size_t x = 0; x < 2; x++) {
        for (size_t y = 0; y < 2; y++) {
            ComplexMatrix &e = by_detection[2 * x + y];
            for (auto sa : {TemporalMode::Matched, TemporalMode::Orthogonal}) {
                for (auto sb : {TemporalMode::Matched, TemporalMode::Orthogonal}) {
                    size_t ma = mode(Arm::A, Polarization(x), sa);
                    size_t mb = mode(Arm::B, Polarization(y), sb);
                    for (size_t i = 0; i < 4; i++) {
                        Complex ai = outputs[i].amplitude(ma, mb);
                        for (size_t j = 0; j < 4; j++) {
                            e(i, j) += std::conj(ai) * outputs[j].amplitude(ma, mb);
                        }
                    }
                }
            }
        }
    }

    std::vector<ComplexMatrix> elements;
    std::vector<std::string> labels;
    ComplexMatrix failure = ComplexMatrix::identity(4);
    for (size_t k = 0; k < 4; k++) {
        ComplexMatrix e = by_detection[kDetectionForBell[k]];
        e = (e + e.adjoint()) * Complex{0.5};
        failure -= e;
        elements.push_back(std::move(e));
        labels.emplace_back(bell_label(kBellStates[k]));
    }
    elements.push_back(std::move(failure));
    labels.emplace_back(kFailureLabel);
    return MeasurementModel(std::move(elements), std::move(labels));
}

double bell_coherence(const ComplexMatrix &element) {
    if (element.dim() != 4) {
        throw std::invalid_argument("bell_coherence expects a 4x4 element");
    }
    return std::max(std::abs(element(0, 3)), std::abs(element(1, 2)));
}

}  // namespace dcert
