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

#include "dcert/protocol.h"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace dcert {

namespace {

// Draw indices within one trial's counter stream.
constexpr uint32_t kDrawKey = 0;
constexpr uint32_t kDrawMember = 1;
constexpr uint32_t kDrawNoise = 2;
constexpr uint32_t kDrawNoiseBasis = 3;
constexpr uint32_t kDrawOutcome = 4;
constexpr uint32_t kDrawCoin = 5;

constexpr double kProbabilityTolerance = 1e-8;

size_t uniform_index(const CounterRng &rng, uint64_t trial, uint32_t draw, size_t n) {
    auto k = static_cast<size_t>(rng.uniform(RngDomain::Trial, trial, draw) * static_cast<double>(n));
    return std::min(k, n - 1);
}

size_t sample_outcome(std::span<const double> probs, double u) {
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1) > kProbabilityTolerance) {
        throw std::invalid_argument("outcome probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    double cumulative = 0;
    size_t last_nonzero = 0;
    for (size_t k = 0; k < probs.size(); k++) {
        if (probs[k] <= 0) {
            continue;
        }
        last_nonzero = k;
        cumulative += probs[k];
        if (u * total < cumulative) {
            return k;
        }
    }
    return last_nonzero;
}

void require_probability(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::domain_error("noise parameter p must be in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

Strategy quantum_strategy(const std::optional<MismatchModel> &mismatch) {
    std::vector<std::optional<EncodingKey>> decoder;
    for (auto bell : kBellStates) {
        decoder.push_back(decode_quantum(bell));
    }
    if (!mismatch) {
        std::vector<ComplexMatrix> elements;
        std::vector<std::string> labels;
        for (auto bell : kBellStates) {
            elements.push_back(ComplexMatrix::projector(bell_state(bell)));
            labels.emplace_back(bell_label(bell));
        }
        return {StrategyKind::QuantumBell, MeasurementModel(std::move(elements), std::move(labels)), decoder};
    }
    decoder.push_back(std::nullopt);
    return {StrategyKind::QuantumBell, effective_bell_povm(*mismatch), decoder};
}

Strategy classical_strategy() {
    MeasurementModel zz = MeasurementModel::computational(4);
    std::vector<std::optional<EncodingKey>> decoder;
    for (size_t outcome = 0; outcome < 4; outcome++) {
        uint8_t parity = static_cast<uint8_t>((outcome >> 1) ^ (outcome & 1));
        decoder.push_back(EncodingKey{parity, 0});
    }
    return {StrategyKind::ClassicalZZ, std::move(zz), std::move(decoder), true};
}

Preparation alice_sample(const CounterRng &rng, uint64_t trial, double noise_p) {
    require_probability(noise_p);
    Preparation prep;
    prep.key = EncodingKey::from_index(uniform_index(rng, trial, kDrawKey, 4));
    StateVector product;
    if (noise_p < 1 && rng.uniform(RngDomain::Trial, trial, kDrawNoise) >= noise_p) {
        product.assign(4, Complex{0});
        product[uniform_index(rng, trial, kDrawNoiseBasis, 4)] = 1;
        prep.member = -1;
    } else {
        static const ProductEnsemble kMembers = product_decomposition();
        prep.member = static_cast<int>(uniform_index(rng, trial, kDrawMember, kMembers.size()));
        product = kMembers[static_cast<size_t>(prep.member)].state;
    }
    prep.state = encode(product, prep.key);
    return prep;
}

size_t measure(std::span<const Complex> state, const MeasurementModel &m, const CounterRng &rng, uint64_t trial) {
    std::vector<double> probs;
    probs.reserve(m.size());
    for (const auto &e : m.elements()) {
        probs.push_back(std::max(0.0, std::real(e.expectation(state))));
    }
    return sample_outcome(probs, rng.uniform(RngDomain::Trial, trial, kDrawOutcome));
}

size_t measure(const DensityMatrix &state, const MeasurementModel &m, const CounterRng &rng, uint64_t trial) {
    std::vector<double> probs;
    probs.reserve(m.size());
    for (const auto &e : m.elements()) {
        probs.push_back(std::max(0.0, std::real((e * state.matrix()).trace())));
    }
    return sample_outcome(probs, rng.uniform(RngDomain::Trial, trial, kDrawOutcome));
}

EncodingKey decode_quantum(BellState outcome) {
    for (auto k : EncodingKey::all()) {
        if (omitted_bell_state(k) == outcome) {
            return k;
        }
    }
    throw std::invalid_argument("unknown Bell outcome");
}

static std::optional<EncodingKey> bob_report(const Strategy &strategy, std::span<const Complex> state,
                                             const CounterRng &rng, uint64_t trial, size_t &outcome) {
    outcome = measure(state, strategy.measurement, rng, trial);
    std::optional<EncodingKey> report = strategy.decoder.at(outcome);
    if (report && strategy.randomize_b2) {
        report->b2 = rng.uniform(RngDomain::Trial, trial, kDrawCoin) < 0.5 ? 0 : 1;
    }
    return report;
}

EncodingKey classical_strategy_run(std::span<const Complex> state, const CounterRng &rng, uint64_t trial) {
    static const Strategy kClassical = classical_strategy();
    size_t outcome = 0;
    return *bob_report(kClassical, state, rng, trial, outcome);
}

TrialRecord run_trial(const Strategy &strategy, double noise_p, const CounterRng &rng, uint64_t trial) {
    Preparation prep = alice_sample(rng, trial, noise_p);
    size_t outcome = 0;
    auto report = bob_report(strategy, prep.state, rng, trial, outcome);
    return {prep.key, outcome, report};
}

double channel_mi(const ChannelRows &rows) {
    if (rows.empty()) {
        throw std::invalid_argument("channel_mi: no rows");
    }
    size_t width = rows.front().size();
    std::vector<double> mixture(width, 0.0);
    double mean_row_entropy = 0;
    for (const auto &row : rows) {
        if (row.size() != width) {
            throw std::invalid_argument("channel_mi: ragged rows");
        }
        double total = 0;
        double h = 0;
        for (size_t c = 0; c < width; c++) {
            if (row[c] < 0) {
                throw std::invalid_argument("channel_mi: negative probability");
            }
            total += row[c];
            mixture[c] += row[c] / static_cast<double>(rows.size());
            if (row[c] > 0) {
                h -= row[c] * std::log2(row[c]);
            }
        }
        if (std::abs(total - 1) > kProbabilityTolerance) {
            throw std::invalid_argument("channel_mi: row sums to " + std::to_string(total));
        }
        mean_row_entropy += h / static_cast<double>(rows.size());
    }
    double h_mixture = 0;
    for (double q : mixture) {
        if (q > 0) {
            h_mixture -= q * std::log2(q);
        }
    }
    return std::max(0.0, h_mixture - mean_row_entropy);
}

ChannelRows strategy_channel(const Strategy &strategy, double noise_p) {
    DensityMatrix noisy = depolarize(resource_state(), noise_p);
    ChannelRows rows;
    for (auto k : EncodingKey::all()) {
        DensityMatrix rho = encode(noisy, k);
        std::vector<double> row(4, 0.0);
        double accepted = 0;
        for (size_t o = 0; o < strategy.measurement.size(); o++) {
            const auto &report = strategy.decoder.at(o);
            if (!report) {
                continue;
            }
            double p = std::max(0.0, std::real((strategy.measurement.elements()[o] * rho.matrix()).trace()));
            accepted += p;
            if (strategy.randomize_b2) {
                row[EncodingKey{report->b1, 0}.index()] += p / 2;
                row[EncodingKey{report->b1, 1}.index()] += p / 2;
            } else {
                row[report->index()] += p;
            }
        }
        if (accepted <= 0) {
            throw std::invalid_argument("strategy never reports for key " + to_string(k));
        }
        for (double &x : row) {
            x /= accepted;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double i_q_noise(double p) {
    return 2 - entropy(depolarize(resource_state(), p));
}

double i_c_noise(double p) {
    require_probability(p);
    return 1 - binary_entropy(0.5 - p / 6);
}

Rates rates(const ChannelModel &model) {
    require_probability(model.noise_p);
    Rates r;
    double p_eff = model.noise_p;
    if (model.mismatch) {
        p_eff *= 1 - model.mismatch->xi();
        r.i_q_optics = channel_mi(strategy_channel(quantum_strategy(model.mismatch), model.noise_p));
    }
    r.i_q = i_q_noise(p_eff);
    r.i_c = i_c_noise(model.noise_p);
    r.advantage = r.i_q - r.i_c;
    return r;
}

SimulationResult simulate(const ChannelModel &model, StrategyKind kind, uint64_t seed, uint64_t trials,
                          unsigned threads) {
    require_probability(model.noise_p);
    const Strategy strategy = kind == StrategyKind::QuantumBell ? quantum_strategy(model.mismatch) : classical_strategy();
    const CounterRng rng(seed);

    auto run_block = [&](uint64_t begin, uint64_t end, SimulationResult &out) {
        for (uint64_t t = begin; t < end; t++) {
            TrialRecord rec = run_trial(strategy, model.noise_p, rng, t);
            if (rec.k_m) {
                out.counts.add(rec.k, *rec.k_m);
                out.coincidences++;
            }
        }
    };

    threads = std::max(1u, threads);
    std::vector<SimulationResult> partial(threads);
    if (threads == 1) {
        run_block(0, trials, partial[0]);
    } else {
        std::vector<std::thread> pool;
        uint64_t chunk = (trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; w++) {
            uint64_t begin = std::min(trials, w * chunk);
            uint64_t end = std::min(trials, begin + chunk);
            pool.emplace_back(run_block, begin, end, std::ref(partial[w]));
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    SimulationResult total;
    total.trials = trials;
    for (const auto &p : partial) {
        total.counts += p.counts;
        total.coincidences += p.coincidences;
    }
    return total;
}

}  // namespace dcert
