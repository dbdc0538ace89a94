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

#ifndef DCERT_CLI_H
#define DCERT_CLI_H

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcert/correlations.h"
#include "dcert/optics.h"
#include "dcert/protocol.h"
#include "json.hpp"

namespace dcert {

struct RunConfig {
    uint64_t seed = 1;
    uint64_t trials = 100000;
    double noise_p = 1.0;
    double dtau_ratio = 0.0;
    double c_scale = 2 * std::numbers::pi;
    StrategyKind strategy = StrategyKind::QuantumBell;
    double z_threshold = kDefaultZThreshold;
    std::string out;
    std::string state = "resource";
    size_t steps = 0;           // 0 picks the per-sweep default
    std::optional<double> max;  // upper end of a sweep grid
    unsigned threads = 1;
    size_t resamples = kDefaultBootstrapResamples;

    /// Throws std::invalid_argument on trials < 1, noise outside [0, 1] or negative dtau.
    void validate() const;
    MismatchModel mismatch() const { return {dtau_ratio, c_scale}; }
};

/// Builtin names: resource, maximally-mixed, bell-phi-plus. Anything else is read as a JSON state file.
DensityMatrix load_state(std::string_view source);

/// Multi-line "name: value" report of I, J, discord and the optimal measurement angles.
std::string format_report(const CorrelationReport &report);

/// End-to-end Monte Carlo certification run; returns the verdict document.
nlohmann::json run_certification(const RunConfig &cfg);

enum class SweepKind { Noise, Mismatch };

/// One CSV row per grid point, header included.
std::string run_sweep(SweepKind kind, const RunConfig &cfg);

/// Effective analyzer POVM plus diagnostics.
nlohmann::json optics_process(const MismatchModel &m);

/// `%.9g`
std::string format_sig9(double x);

/// Entry point shared by the dcert executable and the tests. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace dcert

#endif
