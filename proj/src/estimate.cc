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

#include "dcert/estimate.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dcert/rng.h"

namespace dcert {

namespace {

CountTable multinomial_resample(const std::array<double, 16> &probs, uint64_t n,
                                const CounterRng &rng, uint64_t resample) {
    PhiloxBitStream bits(rng, RngDomain::Bootstrap, resample);
    CountTable::Counts counts{};
    uint64_t remaining = n;
    double mass = 1.0;
    for (size_t cell = 0; cell < 16 && remaining > 0; cell++) {
        double p = probs[cell];
        if (p <= 0) {
            continue;
        }
        uint64_t drawn = remaining;
        if (cell < 15 && p < mass) {
            std::binomial_distribution<uint64_t> binomial(remaining, std::min(1.0, p / mass));
            drawn = binomial(bits);
        }
        counts[cell / 4][cell % 4] = drawn;
        remaining -= drawn;
        mass -= p;
    }
    return CountTable(counts);
}

}  // namespace

uint64_t CountTable::total() const {
    uint64_t n = 0;
    for (const auto &row : counts_) {
        for (uint64_t c : row) {
            n += c;
        }
    }
    return n;
}

size_t CountTable::occupied_cells() const {
    size_t cells = 0;
    for (const auto &row : counts_) {
        for (uint64_t c : row) {
            cells += c > 0;
        }
    }
    return cells;
}

CountTable &CountTable::operator+=(const CountTable &other) {
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            counts_[r][c] += other.counts_[r][c];
        }
    }
    return *this;
}

double plugin_mi(const CountTable &table) {
    uint64_t n = table.total();
    if (n == 0) {
        throw std::invalid_argument("plugin_mi: empty count table");
    }
    double total = static_cast<double>(n);
    std::array<double, 4> rows{};
    std::array<double, 4> cols{};
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            double x = static_cast<double>(table.at(r, c));
            rows[r] += x;
            cols[c] += x;
        }
    }
    // Sum of n_rc/N * log2(n_rc N / (n_r n_c)). The integer products are exact in double, so
    // tables that factor exactly give exactly zero.
    double mi = 0;
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            double x = static_cast<double>(table.at(r, c));
            if (x > 0) {
                mi += x * std::log2((x * total) / (rows[r] * cols[c]));
            }
        }
    }
    mi /= total;
    return std::clamp(mi, 0.0, 2.0);
}

BootstrapResult bootstrap_sigma(const CountTable &table, size_t resamples, uint64_t seed, unsigned threads) {
    uint64_t n = table.total();
    if (n == 0) {
        throw std::invalid_argument("bootstrap_sigma: empty count table");
    }
    if (table.occupied_cells() == 1) {
        return {0.0, true};
    }
    if (n < 10) {
        throw std::invalid_argument("bootstrap_sigma: need at least 10 counts, got " + std::to_string(n));
    }
    if (resamples < 100) {
        throw std::invalid_argument("bootstrap_sigma: need at least 100 resamples");
    }

    std::array<double, 16> probs{};
    for (size_t cell = 0; cell < 16; cell++) {
        probs[cell] = static_cast<double>(table.at(cell / 4, cell % 4)) / static_cast<double>(n);
    }

    CounterRng rng(seed);
    std::vector<double> values(resamples);
    auto work = [&](size_t begin, size_t end) {
        for (size_t r = begin; r < end; r++) {
            values[r] = plugin_mi(multinomial_resample(probs, n, rng, r));
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work(0, resamples);
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (resamples + threads - 1) / threads;
        for (size_t begin = 0; begin < resamples; begin += chunk) {
            pool.emplace_back(work, begin, std::min(resamples, begin + chunk));
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(resamples);
    double sum_sq = 0;
    for (double v : values) {
        sum_sq += (v - mean) * (v - mean);
    }
    return {std::sqrt(sum_sq / static_cast<double>(resamples - 1)), false};
}

Verdict certify(double i_exp, double sigma, double i_c_ref, double z_threshold) {
    if (!(sigma > 0)) {
        throw std::invalid_argument("certify: sigma must be positive (bootstrap degenerate?), got " +
                                    std::to_string(sigma));
    }
    Verdict v;
    v.i_exp = i_exp;
    v.sigma = sigma;
    v.i_c_ref = i_c_ref;
    v.z_threshold = z_threshold;
    v.z_score = (i_exp - i_c_ref) / sigma;
    v.certified = v.z_score >= z_threshold;
    return v;
}

nlohmann::json verdict_to_json(const Verdict &v, uint64_t n_trials, uint64_t seed) {
    return {
        {"i_exp", v.i_exp},
        {"sigma", v.sigma},
        {"i_c_ref", v.i_c_ref},
        {"z_score", v.z_score},
        {"certified", v.certified},
        {"z_threshold", v.z_threshold},
        {"n_trials", n_trials},
        {"seed", seed},
    };
}

}  // namespace dcert
