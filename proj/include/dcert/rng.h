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

#ifndef DCERT_RNG_H
#define DCERT_RNG_H

#include <array>
#include <cstdint>
#include <limits>

namespace dcert {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key);

/// Independent draw families sharing one seed.
enum class RngDomain : uint32_t {
    Trial = 0,
    Bootstrap = 1,
};

/// Stateless random source keyed by a 64-bit seed.
///
/// A draw is addressed by (domain, stream, draw): the Philox counter is
/// {stream_lo, stream_hi, draw, domain} and the key is {seed_lo, seed_hi}. Any subset of
/// draws can be produced in any order, on any thread, with identical results.
class CounterRng {
   public:
    explicit CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t seed() const { return seed_; }
    std::array<uint32_t, 4> block(RngDomain domain, uint64_t stream, uint32_t draw) const;
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(RngDomain domain, uint64_t stream, uint32_t draw) const;

   private:
    uint64_t seed_;
};

/// UniformRandomBitGenerator over consecutive draws of one (domain, stream), for use with
/// <random> distributions.
class PhiloxBitStream {
   public:
    using result_type = uint32_t;

    PhiloxBitStream(const CounterRng &rng, RngDomain domain, uint64_t stream)
        : rng_(rng), domain_(domain), stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

   private:
    CounterRng rng_;
    RngDomain domain_;
    uint64_t stream_;
    uint32_t next_draw_ = 0;
    std::array<uint32_t, 4> buffer_{};
    int used_ = 4;
};

}  // namespace dcert

#endif
