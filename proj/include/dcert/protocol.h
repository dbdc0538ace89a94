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

#ifndef DCERT_PROTOCOL_H
#define DCERT_PROTOCOL_H

#include <optional>
#include <vector>

#include "dcert/correlations.h"
#include "dcert/estimate.h"
#include "dcert/optics.h"
#include "dcert/qstate.h"
#include "dcert/rng.h"

namespace dcert {

/// Alice's white-noise level and Bob's gate quality.
struct ChannelModel {
    double noise_p = 1.0;
    /// Absent means an ideal Bell analyzer.
    std::optional<MismatchModel> mismatch;
};

enum class StrategyKind { QuantumBell, ClassicalZZ };

/// Bob's measurement and how he turns each outcome into a report k_m.
struct Strategy {
    StrategyKind kind;
    /// POVM on the received two-qubit state.
    MeasurementModel measurement;
    /// Report per outcome; std::nullopt marks a non-coincidence, which is discarded.
    std::vector<std::optional<EncodingKey>> decoder;
    /// Replace b2 of every report by a fresh fair coin.
    bool randomize_b2 = false;
};

/// Bell analysis with the relabeling decoder; ideal projectors, or the optics POVM under mismatch.
Strategy quantum_strategy(const std::optional<MismatchModel> &mismatch = std::nullopt);
/// sigma_z on each qubit; b1 = parity, b2 = coin.
Strategy classical_strategy();

struct Preparation {
    EncodingKey key;
    /// Encoded pure product state handed to Bob.
    StateVector state;
    /// Index into product_decomposition(), or -1 for a white-noise substitution.
    int member = -1;
};

/// Alice's preparation for one trial: k uniform, one of the six product states uniform, then U_k.
/// With probability 1 - noise_p the product state is replaced by a uniformly random
/// computational basis state, which realizes p*rho + (1-p)*I/4 on average.
Preparation alice_sample(const CounterRng &rng, uint64_t trial, double noise_p = 1.0);

/// Born-rule sample of outcome index. Throws when the outcome probabilities do not sum to 1 within 1e-8.
size_t measure(std::span<const Complex> state, const MeasurementModel &m, const CounterRng &rng, uint64_t trial);
size_t measure(const DensityMatrix &state, const MeasurementModel &m, const CounterRng &rng, uint64_t trial);

/// The key whose encoded resource mixture lacks `outcome`. Never equals the true key.
EncodingKey decode_quantum(BellState outcome);

/// sigma_z (x) sigma_z measurement with the parity report.
EncodingKey classical_strategy_run(std::span<const Complex> state, const CounterRng &rng, uint64_t trial);

struct TrialRecord {
    EncodingKey k;
    size_t outcome;
    std::optional<EncodingKey> k_m;  // present iff coincidence
    bool coincidence() const { return k_m.has_value(); }
};

TrialRecord run_trial(const Strategy &strategy, double noise_p, const CounterRng &rng, uint64_t trial);

/// Row k holds P(outcome | k). Rows must sum to 1 within 1e-8.
using ChannelRows = std::vector<std::vector<double>>;

/// I(K; K_m) for a uniform prior on K: H(mean row) - mean H(row).
double channel_mi(const ChannelRows &rows);

/// P(k_m | k) for `strategy` acting on encode(depolarize(resource, noise_p), k), conditioned on coincidence.
ChannelRows strategy_channel(const Strategy &strategy, double noise_p);

/// 2 - S(depolarize(resource_state(), p)).
double i_q_noise(double p);
/// 1 - H2(1/2 - p/6).
double i_c_noise(double p);

struct Rates {
    double i_q = 0;
    double i_c = 0;
    double advantage = 0;
    /// Under mismatch: the rate of the optics-derived analyzer on the coincidence-conditioned channel.
    std::optional<double> i_q_optics;
};

/// Closed-form rates. Under mismatch i_q uses the substitution p -> noise_p * (1 - xi);
/// i_c does not depend on the gate.
Rates rates(const ChannelModel &model);

struct SimulationResult {
    CountTable counts;
    uint64_t trials = 0;
    uint64_t coincidences = 0;
};

/// Runs trials [0, trials) and tallies coincident (k, k_m) pairs. Output does not depend on `threads`.
SimulationResult simulate(const ChannelModel &model, StrategyKind kind, uint64_t seed, uint64_t trials,
                          unsigned threads = 1);

}  // namespace dcert

#endif
