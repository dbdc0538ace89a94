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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dcert/qstate.h"

using namespace dcert;

namespace {

size_t mode(Arm arm, Polarization pol, TemporalMode t = TemporalMode::Matched) {
    return OpticalMode{arm, pol, t}.index();
}

ModeVector photon(Arm arm, Polarization pol, TemporalMode t = TemporalMode::Matched) {
    ModeVector v{};
    v[mode(arm, pol, t)] = 1;
    return v;
}

/// Hand-derived analyzer elements indexed like effective_bell_povm (phi+, phi-, psi+, psi-).
///
/// Matched photons give Bell projectors at success 1/9. Distinguishable photons either both
/// transmit (amplitude 1/3 for every polarization pair, leaving only the control Hadamard)
/// or both reflect (V only, amplitude 2/3, projecting the input onto |1>|->, then each
/// detector sees |-> and splits it evenly).
std::vector<ComplexMatrix> oracle_povm(double v) {
    const double s = 1 / std::sqrt(2.0);
    const std::array<StateVector, 2> hadamard_basis = {StateVector{s, s}, StateVector{s, -s}};
    const std::array<StateVector, 2> z_basis = {StateVector{1, 0}, StateVector{0, 1}};
    const StateVector one_minus = tensor(StateVector{0, 1}, StateVector{s, -s});
    const std::array<size_t, 4> detection = {0, 2, 1, 3};

    std::vector<ComplexMatrix> out;
    for (size_t k = 0; k < 4; k++) {
        size_t x = detection[k] >> 1;
        size_t y = detection[k] & 1;
        ComplexMatrix coherent = ComplexMatrix::projector(bell_state(kBellStates[k])) * Complex{1.0 / 9};
        ComplexMatrix transmitted = ComplexMatrix::projector(tensor(hadamard_basis[x], z_basis[y]));
        ComplexMatrix reflected = ComplexMatrix::projector(one_minus);
        ComplexMatrix incoherent = (transmitted + reflected) * Complex{1.0 / 9};
        out.push_back(coherent * Complex{v * v} + incoherent * Complex{1 - v * v});
    }
    return out;
}

TwoPhotonFockState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    TwoPhotonFockState total;
    for (int term = 0; term < 3; term++) {
        ModeVector f{};
        ModeVector h{};
        for (size_t i = 0; i < kNumModes; i++) {
            f[i] = Complex{g(rng), g(rng)};
            h[i] = Complex{g(rng), g(rng)};
        }
        total += TwoPhotonFockState::from_photons(f, h);
    }
    total *= 1 / std::sqrt(total.norm_squared());
    return total;
}

}  // namespace

TEST(optics, mode_index_bijection) {
    for (size_t i = 0; i < kNumModes; i++) {
        EXPECT_EQ(OpticalMode::from_index(i).index(), i);
    }
    std::vector<bool> seen(kNumModePairs);
    for (size_t i = 0; i < kNumModes; i++) {
        for (size_t j = i; j < kNumModes; j++) {
            size_t p = TwoPhotonFockState::pair_index(i, j);
            ASSERT_LT(p, kNumModePairs);
            EXPECT_FALSE(seen[p]);
            seen[p] = true;
            EXPECT_EQ(p, TwoPhotonFockState::pair_index(j, i));
        }
    }
}

TEST(optics, fock_normalization_convention) {
    auto doubled = TwoPhotonFockState::from_photons(photon(Arm::A, Polarization::H), photon(Arm::A, Polarization::H));
    EXPECT_NEAR(std::abs(doubled.amplitude(0, 0)), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(doubled.norm_squared(), 2, 1e-15);
    auto split = TwoPhotonFockState::from_photons(photon(Arm::A, Polarization::H), photon(Arm::B, Polarization::V));
    EXPECT_NEAR(split.norm_squared(), 1, 1e-15);
}

TEST(optics, xi_of_dtau) {
    EXPECT_EQ(xi_of_dtau({0.0}), 0);
    EXPECT_NEAR(xi_of_dtau({1.0, 1.0}), 1 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(xi_of_dtau({1.0, 1.0}), 0.6321206, 1e-7);
    EXPECT_NEAR(xi_of_dtau({50.0, 1.0}), 1, 1e-15);
    EXPECT_THROW(xi_of_dtau({-0.1}), std::domain_error);
    MismatchModel m{0.05};
    EXPECT_NEAR(m.overlap() * m.overlap(), 1 - m.xi(), 1e-15);
    EXPECT_EQ(MismatchModel{}.overlap(), 1);
}

TEST(optics, beamsplitter_zero_reflectivity_is_identity) {
    auto bs = beamsplitter_modes({0.0, 0.0});
    EXPECT_EQ(bs.max_abs_diff(ComplexMatrix::identity(kNumModes)), 0);
    std::mt19937_64 rng(1);
    auto s = random_state(rng);
    auto out = apply_beamsplitter(s, {0.4, 0.0});
    // H-only inputs are untouched when eta_H = 0.
    auto hh = TwoPhotonFockState::from_photons(photon(Arm::A, Polarization::H), photon(Arm::B, Polarization::H));
    auto hh_out = apply_beamsplitter(hh, {0.4, 0.0});
    for (size_t k = 0; k < kNumModePairs; k++) {
        EXPECT_NEAR(std::abs(hh_out.amplitudes()[k] - hh.amplitudes()[k]), 0, 1e-15);
    }
}

TEST(optics, hong_ou_mandel_dip) {
    auto vv = TwoPhotonFockState::from_photons(photon(Arm::A, Polarization::V), photon(Arm::B, Polarization::V));
    auto out = apply_beamsplitter(vv, {0.5, 0.5});
    EXPECT_NEAR(out.coincidence_probability(), 0, 1e-12);
    EXPECT_NEAR(out.norm_squared(), 1, 1e-12);
}

TEST(optics, ppbs_vv_coincidence_amplitude) {
    auto vv = TwoPhotonFockState::from_photons(photon(Arm::A, Polarization::V), photon(Arm::B, Polarization::V));
    auto out = apply_beamsplitter(vv, PPBSSpec{});
    // c1 d2 + c2 d1 with c = (t, r), d = (-r, t), t^2 = 1/3, r^2 = 2/3.
    double t = std::sqrt(1.0 / 3);
    double r = std::sqrt(2.0 / 3);
    double expected = t * t + r * (-r);
    EXPECT_NEAR(expected, -1.0 / 3, 1e-15);
    Complex amp = out.amplitude(mode(Arm::A, Polarization::V), mode(Arm::B, Polarization::V));
    EXPECT_NEAR(std::abs(amp - Complex{expected}), 0, 1e-15);
}

TEST(optics, beamsplitter_preserves_norm) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int rep = 0; rep < 50; rep++) {
        auto s = random_state(rng);
        auto out = apply_beamsplitter(s, {u(rng), u(rng)});
        ASSERT_NEAR(out.norm_squared(), 1, 1e-12);
    }
}

TEST(optics, distinguishable_photons_at_central_ppbs) {
    auto vv = TwoPhotonFockState::from_photons(photon(Arm::A, Polarization::V),
                                               photon(Arm::B, Polarization::V, TemporalMode::Orthogonal));
    auto out = apply_beamsplitter(vv, PPBSSpec{});
    EXPECT_NEAR(out.coincidence_probability(), 5.0 / 9, 1e-12);
}

TEST(optics, cz_circuit_layout) {
    auto c = cz_circuit();
    ASSERT_EQ(c.elements.size(), 3u);
    EXPECT_EQ(c.elements[0].kind, OpticalElement::Kind::PPBS);
    EXPECT_NEAR(c.elements[0].ppbs.eta_v, 2.0 / 3, 1e-15);
    EXPECT_EQ(c.elements[0].ppbs.eta_h, 0);
    EXPECT_EQ(c.elements[1].kind, OpticalElement::Kind::HAttenuator);
    EXPECT_NEAR(c.elements[1].amplitude, 1 / std::sqrt(3.0), 1e-15);
    auto bell = bell_analyzer_circuit();
    ASSERT_EQ(bell.elements.size(), 6u);
    EXPECT_EQ(bell.elements.front().kind, OpticalElement::Kind::HalfWaveHadamard);
    EXPECT_EQ(bell.elements.front().arm, Arm::B);
    EXPECT_EQ(bell.elements.back().arm, Arm::A);
}

TEST(optics, cz_core_is_postselected_cz) {
    auto process = postselected_process(cz_circuit());
    // Hand amplitudes: HH 1 * (1/sqrt3)^2, HV and VH (1/sqrt3) * t, VV t^2 - r^2.
    double t = std::sqrt(1.0 / 3);
    double r = std::sqrt(2.0 / 3);
    std::array<double, 4> hand = {1.0 / 3, t / std::sqrt(3.0), t / std::sqrt(3.0), t * t - r * r};
    EXPECT_LT(process.max_abs_diff(ComplexMatrix::diagonal(hand)), 1e-15);
    EXPECT_GE(process_fidelity(process, cz_unitary()), 1 - 1e-9);
    for (size_t in = 0; in < 4; in++) {
        double success = 0;
        for (size_t o = 0; o < 4; o++) {
            success += std::norm(process(o, in));
        }
        EXPECT_NEAR(success, 1.0 / 9, 1e-9);
    }
}

TEST(optics, process_fidelity_detects_wrong_gate) {
    auto process = postselected_process(cz_circuit());
    EXPECT_LT(process_fidelity(process, ComplexMatrix::identity(4)), 0.3);
}

TEST(optics, ideal_analyzer_is_bell_measurement) {
    auto povm = effective_bell_povm({0.0});
    ASSERT_EQ(povm.size(), 5u);
    EXPECT_EQ(povm.labels().back(), kFailureLabel);
    for (size_t k = 0; k < 4; k++) {
        EXPECT_EQ(povm.labels()[k], bell_label(kBellStates[k]));
        auto expected = ComplexMatrix::projector(bell_state(kBellStates[k])) * Complex{1.0 / 9};
        EXPECT_LT(povm.elements()[k].max_abs_diff(expected), 1e-9);
    }
    EXPECT_LT(povm.elements()[4].max_abs_diff(ComplexMatrix::identity(4) * Complex{8.0 / 9}), 1e-9);
}

TEST(optics, analyzer_matches_sector_oracle) {
    for (double dtau : {0.0, 0.01, 0.05, 0.1, 0.2, 1.0}) {
        MismatchModel m{dtau};
        auto povm = effective_bell_povm(m);
        auto oracle = oracle_povm(m.overlap());
        for (size_t k = 0; k < 4; k++) {
            EXPECT_LT(povm.elements()[k].max_abs_diff(oracle[k]), 1e-12) << "dtau " << dtau << " element " << k;
        }
    }
}

TEST(optics, analyzer_complete_and_positive) {
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        // overlap v from dtau: v = exp(-x^2 / 2) with x = c_scale * dtau.
        double dtau = v > 0 ? std::sqrt(-2 * std::log(v)) / (2 * std::numbers::pi) : 10.0;
        MismatchModel m{dtau};
        ASSERT_NEAR(m.overlap(), v, 1e-12);
        auto povm = effective_bell_povm(m);
        EXPECT_LE(povm.completeness_residual(), 1e-8);
        for (const auto &e : povm.elements()) {
            EXPECT_GE(eigenvalues_hermitian(e).front(), -1e-8);
        }
    }
}

TEST(optics, distinguishable_analyzer_loses_bell_coherence) {
    auto povm = effective_bell_povm({10.0});
    for (size_t k = 0; k < 4; k++) {
        EXPECT_LE(bell_coherence(povm.elements()[k]), 1e-6);
    }
    auto ideal = effective_bell_povm({0.0});
    EXPECT_NEAR(bell_coherence(ideal.elements()[0]), 1.0 / 18, 1e-12);
}

TEST(optics, postselected_distribution_equals_bell_projectors) {
    auto povm = effective_bell_povm({0.0});
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 20; rep++) {
        StateVector psi(4);
        for (auto &a : psi) {
            a = Complex{g(rng), g(rng)};
        }
        double n = norm(psi);
        for (auto &a : psi) {
            a /= n;
        }
        double success = 0;
        std::array<double, 4> probs{};
        for (size_t k = 0; k < 4; k++) {
            probs[k] = std::real(povm.elements()[k].expectation(psi));
            success += probs[k];
        }
        for (size_t k = 0; k < 4; k++) {
            double ideal = std::norm(inner(bell_state(kBellStates[k]), psi));
            EXPECT_NEAR(probs[k] / success, ideal, 1e-10);
        }
    }
}
