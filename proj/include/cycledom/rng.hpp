// Copyright 2026 The cycledom Authors
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

#ifndef CYCLEDOM_RNG_HPP
#define CYCLEDOM_RNG_HPP

#include <cstdint>
#include <random>

namespace cycledom {

/// Reproducible random stream identified by (seed, stream). Backed by
/// std::mt19937_64 seeded through std::seed_seq; both are fully specified by
/// the standard, and the conversions below avoid the implementation-defined
/// standard distributions, so a given (seed, stream) yields the same draws
/// on every platform.
class Rng {
   public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound >= 1 (Lemire's method).
    std::uint32_t below(std::uint32_t bound) {
        std::uint64_t x = next() >> 32;
        std::uint64_t m = x * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
            while (low < threshold) {
                x = next() >> 32;
                m = x * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace cycledom

#endif  // CYCLEDOM_RNG_HPP
