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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dcert {

namespace {

constexpr double kNegativeEigenvalueClip = 1e-8;
constexpr double kPovmTolerance = 1e-8;
constexpr double kDroppedOutcome = 1e-12;
constexpr int kGridSize = 64;
constexpr double kGridTieTolerance = 1e-12;
constexpr double kRefineTolerance = 1e-12;
constexpr int kRefineMaxIterations = 4000;

double xlog2x(double x) {
    return x > 0 ? x * std::log2(x) : 0.0;
}

/// Unnormalized Tr_B[(I (x) P) rho] for a 2x2 operator P on B.
std::array<Complex, 4> reduce_with_effect(const ComplexMatrix &rho, const std::array<Complex, 4> &effect) {
    std::array<Complex, 4> out{};
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            Complex total = 0;
            for (size_t t = 0; t < 2; t++) {
                for (size_t s = 0; s < 2; s++) {
                    total += effect[t * 2 + s] * rho(2 * i + s, 2 * j + t);
                }
            }
            out[i * 2 + j] = total;
        }
    }
    return out;
}

/// p * S(sigma / p) for an unnormalized 2x2 Hermitian PSD sigma with trace p.
double weighted_entropy_2x2(const std::array<Complex, 4> &sigma) {
    double a = std::real(sigma[0]);
    double d = std::real(sigma[3]);
    double p = a + d;
    if (p < kDroppedOutcome) {
        return 0;
    }
    double gap = std::sqrt((a - d) * (a - d) + 4 * std::norm(sigma[1]));
    double hi = 0.5 * (p + gap);
    double lo = std::max(0.0, 0.5 * (p - gap));
    return -(xlog2x(hi) + xlog2x(lo)) + p * std::log2(p);
}

std::array<Complex, 4> bloch_projector(double theta, double phi) {
    Complex c0 = std::cos(theta / 2);
    Complex c1 = std::polar(std::sin(theta / 2), phi);
    return {c0 * std::conj(c0), c0 * std::conj(c1), c1 * std::conj(c0), c1 * std::conj(c1)};
}

/// Average entropy left on A after measuring B along (theta, phi).
double conditional_entropy(const ComplexMatrix &rho, double theta, double phi) {
    auto plus = bloch_projector(theta, phi);
    std::array<Complex, 4> minus = {Complex{1} - plus[0], -plus[1], -plus[2], Complex{1} - plus[3]};
    return weighted_entropy_2x2(reduce_with_effect(rho, plus)) + weighted_entropy_2x2(reduce_with_effect(rho, minus));
}

BlochAngles canonical_angles(double theta, double phi) {
    const double two_pi = 2 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0) {
        theta += two_pi;
    }
    if (theta > std::numbers::pi) {
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0) {
        phi += two_pi;
    }
    return {theta, phi};
}

struct Vertex {
    std::array<double, 2> x;
    double f;
};

template <typename F>
Vertex nelder_mead(F &&f, std::array<double, 2> start, double step) {
    std::array<Vertex, 3> simplex = {
        Vertex{start, f(start[0], start[1])},
        Vertex{{start[0] + step, start[1]}, f(start[0] + step, start[1])},
        Vertex{{start[0], start[1] + step}, f(start[0], start[1] + step)},
    };
    auto eval = [&](std::array<double, 2> x) { return Vertex{x, f(x[0], x[1])}; };
    auto blend = [](const std::array<double, 2> &a, const std::array<double, 2> &b, double t) {
        return std::array<double, 2>{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };

    for (int iter = 0; iter < kRefineMaxIterations; iter++) {
        std::sort(simplex.begin(), simplex.end(), [](const Vertex &a, const Vertex &b) { return a.f < b.f; });
        if (simplex[2].f - simplex[0].f <= kRefineTolerance) {
            break;
        }
        std::array<double, 2> centroid = blend(simplex[0].x, simplex[1].x, 0.5);
        Vertex reflected = eval(blend(centroid, simplex[2].x, -1.0));
        if (reflected.f < simplex[0].f) {
            Vertex expanded = eval(blend(centroid, simplex[2].x, -2.0));
            simplex[2] = expanded.f < reflected.f ? expanded : reflected;
        } else if (reflected.f < simplex[1].f) {
            simplex[2] = reflected;
        } else {
            bool outside = reflected.f < simplex[2].f;
            Vertex contracted = eval(blend(centroid, outside ? reflected.x : simplex[2].x, 0.5));
            if (contracted.f < std::min(reflected.f, simplex[2].f)) {
                simplex[2] = contracted;
            } else {
                for (size_t k = 1; k < 3; k++) {
                    simplex[k] = eval(blend(simplex[0].x, simplex[k].x, 0.5));
                }
            }
        }
    }
    return *std::min_element(simplex.begin(), simplex.end(), [](const Vertex &a, const Vertex &b) { return a.f < b.f; });
}

const ComplexMatrix &measured_on_b(const DensityMatrix &rho, Subsystem measured, ComplexMatrix &scratch) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("two-qubit state required");
    }
    if (measured == Subsystem::B) {
        return rho.matrix();
    }
    scratch = swap_subsystems(rho.matrix());
    return scratch;
}

}  // namespace

double binary_entropy(double q) {
    if (q <= 0 || q >= 1) {
        return 0;
    }
    return -(xlog2x(q) + xlog2x(1 - q));
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double total = 0;
    for (double lambda : eigenvalues) {
        if (lambda < -kNegativeEigenvalueClip) {
            throw std::invalid_argument("entropy: eigenvalue " + std::to_string(lambda) + " is negative");
        }
        total -= xlog2x(lambda);
    }
    return total;
}

double entropy(const DensityMatrix &rho) {
    return entropy_of_spectrum(eigenvalues_hermitian(rho.matrix()));
}

double mutual_information(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("mutual_information expects a two-qubit state");
    }
    auto rho_a = DensityMatrix::from_matrix(partial_trace(rho.matrix(), Subsystem::A));
    auto rho_b = DensityMatrix::from_matrix(partial_trace(rho.matrix(), Subsystem::B));
    return std::max(0.0, entropy(rho_a) + entropy(rho_b) - entropy(rho));
}

MeasurementModel::MeasurementModel(std::vector<ComplexMatrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) {
        throw std::invalid_argument("measurement has no elements");
    }
    if (labels_.size() != elements_.size()) {
        throw std::invalid_argument("measurement needs one label per element");
    }
    size_t d = elements_.front().dim();
    for (size_t k = 0; k < elements_.size(); k++) {
        const auto &e = elements_[k];
        if (e.dim() != d) {
            throw std::invalid_argument("measurement elements have mixed dimensions");
        }
        double herm = e.hermiticity_residual();
        if (herm > kPovmTolerance) {
            throw std::invalid_argument("POVM element '" + labels_[k] + "' is not Hermitian (residual " +
                                        std::to_string(herm) + ")");
        }
        double smallest = eigenvalues_hermitian(e).front();
        if (smallest < -kPovmTolerance) {
            throw std::invalid_argument("POVM element '" + labels_[k] + "' is not positive (eigenvalue " +
                                        std::to_string(smallest) + ")");
        }
    }
    double residual = completeness_residual();
    if (residual > kPovmTolerance) {
        throw std::invalid_argument("POVM elements do not sum to identity (residual " + std::to_string(residual) + ")");
    }
}

MeasurementModel MeasurementModel::qubit_projective(double theta, double phi) {
    auto p = bloch_projector(theta, phi);
    ComplexMatrix plus(2, {p[0], p[1], p[2], p[3]});
    ComplexMatrix minus = ComplexMatrix::identity(2) - plus;
    return MeasurementModel({plus, minus}, {"+", "-"});
}

MeasurementModel MeasurementModel::computational(size_t dim) {
    std::vector<ComplexMatrix> elements;
    std::vector<std::string> labels;
    for (size_t k = 0; k < dim; k++) {
        ComplexMatrix e(dim);
        e(k, k) = 1;
        elements.push_back(std::move(e));
        labels.push_back(std::to_string(k));
    }
    return MeasurementModel(std::move(elements), std::move(labels));
}

double MeasurementModel::completeness_residual() const {
    ComplexMatrix total(dim());
    for (const auto &e : elements_) {
        total += e;
    }
    return total.max_abs_diff(ComplexMatrix::identity(dim()));
}

ConditionalEnsemble measure_conditional(const DensityMatrix &rho, const MeasurementModel &m) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("measure_conditional expects a two-qubit state");
    }
    if (m.dim() != 2) {
        throw std::invalid_argument("measure_conditional expects single-qubit POVM elements on B");
    }
    ConditionalEnsemble out;
    for (size_t b = 0; b < m.size(); b++) {
        const auto &e = m.elements()[b];
        auto sigma = reduce_with_effect(rho.matrix(), {e(0, 0), e(0, 1), e(1, 0), e(1, 1)});
        double p = std::real(sigma[0] + sigma[3]);
        if (p < kDroppedOutcome) {
            continue;
        }
        ComplexMatrix cond(2, {sigma[0] / p, sigma[1] / p, sigma[2] / p, sigma[3] / p});
        cond = (cond + cond.adjoint()) * Complex{0.5};
        out.push_back({p, DensityMatrix::from_matrix(std::move(cond)), m.labels()[b]});
    }
    return out;
}

double classical_correlation_at(const DensityMatrix &rho, Subsystem measured, BlochAngles angles) {
    ComplexMatrix scratch;
    const ComplexMatrix &m = measured_on_b(rho, measured, scratch);
    double s_unmeasured = entropy(DensityMatrix::from_matrix(partial_trace(m, Subsystem::A)));
    return s_unmeasured - conditional_entropy(m, angles.theta, angles.phi);
}

ClassicalCorrelation classical_correlation(const DensityMatrix &rho, Subsystem measured) {
    ComplexMatrix scratch;
    const ComplexMatrix &m = measured_on_b(rho, measured, scratch);
    double s_unmeasured = entropy(DensityMatrix::from_matrix(partial_trace(m, Subsystem::A)));

    const double theta_step = std::numbers::pi / (kGridSize - 1);
    const double phi_step = 2 * std::numbers::pi / kGridSize;
    std::vector<double> grid(kGridSize * kGridSize);
    for (int i = 0; i < kGridSize; i++) {
        for (int j = 0; j < kGridSize; j++) {
            grid[i * kGridSize + j] = conditional_entropy(m, i * theta_step, j * phi_step);
        }
    }
    double best = *std::min_element(grid.begin(), grid.end());
    size_t pick = 0;
    while (grid[pick] > best + kGridTieTolerance) {
        pick++;
    }
    std::array<double, 2> start = {static_cast<double>(pick / kGridSize) * theta_step,
                                   static_cast<double>(pick % kGridSize) * phi_step};

    auto f = [&](double theta, double phi) { return conditional_entropy(m, theta, phi); };
    Vertex refined = nelder_mead(f, start, theta_step);
    double min_cond = grid[pick];
    BlochAngles angles{start[0], start[1]};
    if (refined.f < min_cond - kRefineTolerance) {
        min_cond = refined.f;
        angles = canonical_angles(refined.x[0], refined.x[1]);
    }
    return {std::max(0.0, s_unmeasured - min_cond), angles};
}

CorrelationReport discord(const DensityMatrix &rho, Subsystem measured) {
    CorrelationReport report;
    report.mutual_info = mutual_information(rho);
    auto j = classical_correlation(rho, measured);
    report.classical_corr = std::min(j.j, report.mutual_info);
    report.discord = report.mutual_info - report.classical_corr;
    report.argmax = j.argmax;
    return report;
}

double holevo(std::span<const WeightedState> ensemble) {
    if (ensemble.empty()) {
        throw std::invalid_argument("holevo: empty ensemble");
    }
    size_t d = ensemble.front().state.dim();
    double total_p = 0;
    double mean_entropy = 0;
    ComplexMatrix average(d);
    for (const auto &member : ensemble) {
        if (member.state.dim() != d) {
            throw std::invalid_argument("holevo: ensemble members have mixed dimensions");
        }
        if (member.probability < 0) {
            throw std::invalid_argument("holevo: negative probability");
        }
        total_p += member.probability;
        average += member.state.matrix() * Complex{member.probability};
        mean_entropy += member.probability * entropy(member.state);
    }
    if (std::abs(total_p - 1) > 1e-8) {
        throw std::invalid_argument("holevo: probabilities sum to " + std::to_string(total_p));
    }
    return std::max(0.0, entropy(DensityMatrix::from_matrix(std::move(average))) - mean_entropy);
}

}  // namespace dcert
