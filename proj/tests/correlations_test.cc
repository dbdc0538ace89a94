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

#include "dcert/correlations.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dcert/qstate.h"

using namespace dcert;

namespace {

const double kLog2_3 = std::log2(3.0);

DensityMatrix random_state(std::mt19937_64 &rng, int rank = 4) {
    std::normal_distribution<double> g;
    ComplexMatrix a(4);
    for (size_t r = 0; r < 4; r++) {
        for (int c = 0; c < rank; c++) {
            a(r, static_cast<size_t>(c)) = Complex{g(rng), g(rng)};
        }
    }
    ComplexMatrix m = a * a.adjoint();
    return DensityMatrix::from_matrix(m * Complex{1 / std::real(m.trace())});
}

DensityMatrix random_qubit(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix a(2, {Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}});
    ComplexMatrix m = a * a.adjoint();
    return DensityMatrix::from_matrix(m * Complex{1 / std::real(m.trace())});
}

/// Conditional entropy of A after measuring B along (theta, phi), built from explicit projectors.
double brute_conditional_entropy(const DensityMatrix &rho, double theta, double phi) {
    auto m = MeasurementModel::qubit_projective(theta, phi);
    double total = 0;
    for (const auto &outcome : measure_conditional(rho, m)) {
        total += outcome.probability * entropy(outcome.state);
    }
    return total;
}

/// J by exhaustive grid search, independent of the optimizer.
double brute_force_j(const DensityMatrix &rho, int n) {
    double best = 1e9;
    for (int i = 0; i <= n; i++) {
        for (int j = 0; j < 2 * n; j++) {
            double theta = std::numbers::pi * i / n;
            double phi = std::numbers::pi * j / n;
            best = std::min(best, brute_conditional_entropy(rho, theta, phi));
        }
    }
    return entropy(DensityMatrix::from_matrix(partial_trace(rho.matrix(), Subsystem::A))) - best;
}

}  // namespace

TEST(correlations, entropy_examples) {
    EXPECT_NEAR(entropy(DensityMatrix::pure(bell_state(BellState::PsiPlus))), 0, 1e-12);
    EXPECT_NEAR(entropy(DensityMatrix::maximally_mixed(4)), 2, 1e-12);
    EXPECT_NEAR(entropy(resource_state()), kLog2_3, 1e-12);
    EXPECT_NEAR(entropy(resource_state()), 1.5849625, 1e-7);
}

TEST(correlations, entropy_clips_tiny_negative_eigenvalues) {
    std::array<double, 3> spectrum = {-5e-9, 0.5, 0.5};
    EXPECT_NEAR(entropy_of_spectrum(spectrum), 1, 1e-15);
    std::array<double, 2> bad = {-1e-6, 1};
    EXPECT_THROW(entropy_of_spectrum(bad), std::invalid_argument);
}

TEST(correlations, entropy_concavity) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 50; rep++) {
        auto a = random_state(rng, 1 + rep % 4);
        auto b = random_state(rng, 1 + (rep / 4) % 4);
        auto mix = DensityMatrix::from_matrix((a.matrix() + b.matrix()) * Complex{0.5});
        ASSERT_GE(entropy(mix), 0.5 * entropy(a) + 0.5 * entropy(b) - 1e-12);
    }
}

TEST(correlations, binary_entropy) {
    EXPECT_EQ(binary_entropy(0), 0);
    EXPECT_EQ(binary_entropy(1), 0);
    EXPECT_NEAR(binary_entropy(0.5), 1, 1e-15);
    EXPECT_NEAR(1 - binary_entropy(1.0 / 3), 5.0 / 3 - kLog2_3, 1e-14);
}

TEST(correlations, mutual_information_examples) {
    std::mt19937_64 rng(1);
    auto product = DensityMatrix::from_matrix(tensor(random_qubit(rng).matrix(), random_qubit(rng).matrix()));
    EXPECT_NEAR(mutual_information(product), 0, 1e-12);
    EXPECT_NEAR(mutual_information(DensityMatrix::pure(bell_state(BellState::PhiPlus))), 2, 1e-12);
    EXPECT_NEAR(mutual_information(resource_state()), 2 - kLog2_3, 1e-12);
    EXPECT_NEAR(mutual_information(resource_state()), 0.4150375, 1e-7);
}

TEST(correlations, measure_conditional_z_basis_on_resource) {
    auto ensemble = measure_conditional(resource_state(), MeasurementModel::computational(2));
    ASSERT_EQ(ensemble.size(), 2u);
    for (size_t b = 0; b < 2; b++) {
        EXPECT_NEAR(ensemble[b].probability, 0.5, 1e-15);
        // sigma_x^b (2/3 |0><0| + 1/3 |1><1|) sigma_x^b
        std::array<double, 2> diag = {b ? 1.0 / 3 : 2.0 / 3, b ? 2.0 / 3 : 1.0 / 3};
        EXPECT_LT(ensemble[b].state.matrix().max_abs_diff(ComplexMatrix::diagonal(diag)), 1e-15);
    }
}

TEST(correlations, measure_conditional_on_product_returns_marginal) {
    std::mt19937_64 rng(2);
    auto rho_a = random_qubit(rng);
    auto rho = DensityMatrix::from_matrix(tensor(rho_a.matrix(), random_qubit(rng).matrix()));
    for (auto m : {MeasurementModel::computational(2), MeasurementModel::qubit_projective(1.1, 0.3)}) {
        for (const auto &outcome : measure_conditional(rho, m)) {
            EXPECT_LT(outcome.state.matrix().max_abs_diff(rho_a.matrix()), 1e-12);
        }
    }
}

TEST(correlations, measure_conditional_with_noise) {
    for (double p : {0.2, 0.5, 0.8}) {
        auto ensemble = measure_conditional(depolarize(resource_state(), p), MeasurementModel::computational(2));
        for (const auto &outcome : ensemble) {
            auto ev = eigenvalues_hermitian(outcome.state.matrix());
            EXPECT_NEAR(ev[0], 0.5 - p / 6, 1e-14);
            EXPECT_NEAR(ev[1], 0.5 + p / 6, 1e-14);
        }
    }
}

TEST(correlations, measure_conditional_drops_impossible_outcomes) {
    auto rho = DensityMatrix::from_matrix(tensor(ComplexMatrix::identity(2) * Complex{0.5}, ComplexMatrix(2, {1, 0, 0, 0})));
    EXPECT_EQ(measure_conditional(rho, MeasurementModel::computational(2)).size(), 1u);
}

TEST(correlations, measurement_model_validation) {
    ComplexMatrix half = ComplexMatrix::identity(2) * Complex{0.5};
    EXPECT_NO_THROW(MeasurementModel({half, half}, {"a", "b"}));
    EXPECT_THROW(MeasurementModel({half}, {"a"}), std::invalid_argument);
    std::array<double, 2> neg = {1.5, -0.5};
    std::array<double, 2> comp = {-0.5, 1.5};
    EXPECT_THROW(MeasurementModel({ComplexMatrix::diagonal(neg), ComplexMatrix::diagonal(comp)}, {"a", "b"}),
                 std::invalid_argument);
    EXPECT_THROW(MeasurementModel({half, half}, {"a"}), std::invalid_argument);
}

TEST(correlations, classical_correlation_resource_is_flat) {
    auto j = classical_correlation(resource_state());
    EXPECT_NEAR(j.j, 5.0 / 3 - kLog2_3, 1e-9);
    EXPECT_NEAR(j.j, 0.0817042, 1e-7);
    EXPECT_EQ(j.argmax.theta, 0);
    EXPECT_EQ(j.argmax.phi, 0);

    double mean = 0;
    double sum_sq = 0;
    int n = 0;
    for (int i = 0; i < 20; i++) {
        for (int k = 0; k < 20; k++) {
            double value = classical_correlation_at(resource_state(), Subsystem::B,
                                                    {std::numbers::pi * i / 19, 2 * std::numbers::pi * k / 20});
            n++;
            double delta = value - mean;
            mean += delta / n;
            sum_sq += delta * (value - mean);
        }
    }
    EXPECT_LE(sum_sq / n, 1e-9);
}

TEST(correlations, classical_correlation_examples) {
    std::mt19937_64 rng(3);
    auto product = DensityMatrix::from_matrix(tensor(random_qubit(rng).matrix(), random_qubit(rng).matrix()));
    EXPECT_NEAR(classical_correlation(product).j, 0, 1e-9);
    EXPECT_NEAR(classical_correlation(DensityMatrix::pure(bell_state(BellState::PhiPlus))).j, 1, 1e-9);
}

TEST(correlations, classical_correlation_matches_brute_force_grid) {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 6; rep++) {
        auto rho = random_state(rng, 1 + rep % 3);
        double optimized = classical_correlation(rho).j;
        double brute = brute_force_j(rho, 90);
        // The optimizer can only beat the grid; the grid at this spacing is within 1e-3 of the optimum.
        EXPECT_GE(optimized, brute - 1e-9) << rep;
        EXPECT_LE(optimized - brute, 1e-3) << rep;
    }
}

TEST(correlations, argmax_angles_attain_reported_value) {
    std::mt19937_64 rng(78);
    for (int rep = 0; rep < 10; rep++) {
        auto rho = random_state(rng, 2);
        auto j = classical_correlation(rho);
        EXPECT_GE(j.argmax.theta, 0);
        EXPECT_LE(j.argmax.theta, std::numbers::pi);
        EXPECT_GE(j.argmax.phi, 0);
        EXPECT_LT(j.argmax.phi, 2 * std::numbers::pi);
        EXPECT_NEAR(classical_correlation_at(rho, Subsystem::B, j.argmax), j.j, 1e-9);
    }
}

TEST(correlations, discord_resource_state) {
    auto report = discord(resource_state());
    EXPECT_NEAR(report.discord, 1.0 / 3, 1e-6);
    EXPECT_NEAR(report.mutual_info - report.classical_corr, report.discord, 1e-9);
}

TEST(correlations, discord_classical_classical_is_zero) {
    std::array<double, 4> p = {0.1, 0.2, 0.3, 0.4};
    auto report = discord(DensityMatrix::from_matrix(ComplexMatrix::diagonal(p)));
    EXPECT_NEAR(report.discord, 0, 1e-9);
    EXPECT_GT(report.mutual_info, 0);
}

TEST(correlations, discord_noisy_resource) {
    // 2 - S(rho(1/2)) - (1 - H2(5/12)) from the listed spectra, evaluated separately.
    EXPECT_NEAR(discord(depolarize(resource_state(), 0.5)).discord, 0.0494621253205445, 1e-6);
}

TEST(correlations, discord_nonnegative_on_random_states) {
    std::mt19937_64 rng(2718);
    for (int rep = 0; rep < 50; rep++) {
        auto rho = random_state(rng, 1 + rep % 4);
        auto report = discord(rho);
        ASSERT_GE(report.discord, -1e-6) << rep;
        ASSERT_GE(report.classical_corr, 0);
        ASSERT_LE(report.classical_corr, report.mutual_info + 1e-12);
    }
}

TEST(correlations, discord_side_a_is_swap_of_side_b) {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 5; rep++) {
        auto rho = random_state(rng, 2);
        auto swapped = DensityMatrix::from_matrix(swap_subsystems(rho.matrix()));
        EXPECT_NEAR(discord(rho, Subsystem::A).discord, discord(swapped, Subsystem::B).discord, 1e-12);
    }
}

TEST(correlations, holevo_examples) {
    auto rho = resource_state();
    std::vector<WeightedState> same = {{0.5, rho}, {0.5, rho}};
    EXPECT_NEAR(holevo(same), 0, 1e-12);

    std::vector<WeightedState> orthogonal = {
        {0.5, DensityMatrix::pure(StateVector{1, 0})},
        {0.5, DensityMatrix::pure(StateVector{0, 1})},
    };
    EXPECT_NEAR(holevo(orthogonal), 1, 1e-12);

    std::vector<WeightedState> encoded;
    for (auto k : EncodingKey::all()) {
        encoded.push_back({0.25, encode(rho, k)});
    }
    EXPECT_NEAR(holevo(encoded), 2 - kLog2_3, 1e-12);
}

TEST(correlations, holevo_errors) {
    std::vector<WeightedState> mixed = {
        {0.5, DensityMatrix::maximally_mixed(2)},
        {0.5, DensityMatrix::maximally_mixed(4)},
    };
    EXPECT_THROW(holevo(mixed), std::invalid_argument);
    std::vector<WeightedState> short_sum = {{0.4, DensityMatrix::maximally_mixed(2)}};
    EXPECT_THROW(holevo(short_sum), std::invalid_argument);
}
