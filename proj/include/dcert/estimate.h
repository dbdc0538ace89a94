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

#ifndef DCERT_ESTIMATE_H
#define DCERT_ESTIMATE_H

#include <array>
#include <cstdint>

#include "dcert/qstate.h"
#include "json.hpp"

namespace dcert {

/// Joint counts of (k, k_m), indexed by EncodingKey::index().
class CountTable {
   public:
    using Counts = std::array<std::array<uint64_t, 4>, 4>;

    CountTable() = default;
    explicit CountTable(const Counts &counts) : counts_(counts) {}

    void add(EncodingKey k, EncodingKey k_m, uint64_t n = 1) { counts_[k.index()][k_m.index()] += n; }
    uint64_t at(size_t k, size_t k_m) const { return counts_[k][k_m]; }
    const Counts &counts() const { return counts_; }
    uint64_t total() const;
    /// Number of cells with a nonzero count.
    size_t occupied_cells() const;

    CountTable &operator+=(const CountTable &other);
    bool operator==(const CountTable &) const = default;

   private:
    Counts counts_{};
};

/// Plug-in mutual information of the empirical joint distribution, in bits.
/// Throws std::invalid_argument on an empty table.
double plugin_mi(const CountTable &table);

inline constexpr size_t kDefaultBootstrapResamples = 1000;

struct BootstrapResult {
    double sigma = 0;
    /// Set when all counts sit in one cell; sigma is then 0.
    bool degenerate = false;
};

/// Standard deviation of plugin_mi over multinomial resamples of `table` at the same total.
///
/// Resample r draws from the counter stream (seed, r), so the result is independent of
/// `threads`. Requires N >= 10 and resamples >= 100.
BootstrapResult bootstrap_sigma(const CountTable &table, size_t resamples = kDefaultBootstrapResamples,
                                uint64_t seed = 0, unsigned threads = 1);

struct Verdict {
    double i_exp = 0;
    double sigma = 0;
    double i_c_ref = 0;
    double z_score = 0;
    bool certified = false;
    double z_threshold = 5;
};

inline constexpr double kDefaultZThreshold = 5.0;

/// z = (i_exp - i_c_ref) / sigma; certified iff z >= z_threshold.
Verdict certify(double i_exp, double sigma, double i_c_ref, double z_threshold = kDefaultZThreshold);

nlohmann::json verdict_to_json(const Verdict &v, uint64_t n_trials, uint64_t seed);

}  // namespace dcert

#endif
