// Copyright 2026 The bscert Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace bscert {

using RngSeed = std::uint64_t;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream (seed, a, b), e.g. (seed, matrix index, run index).
constexpr RngSeed derive_seed(RngSeed seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

/// 64-bit Mersenne Twister with portable uniform/normal draws.
///
/// Draws are computed here rather than through <random> distributions so that a
/// given seed yields the same stream on every standard library.
class Rng {
   public:
    explicit Rng(RngSeed seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, 2 pi).
    double phase() { return 2.0 * std::numbers::pi * uniform(); }

    /// Standard normal via Box-Muller (no cached second variate).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Poisson draw by CDF inversion; exact for means where exp(-mean) is representable.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 600.0) {
            std::poisson_distribution<std::uint64_t> dist(mean);
            return dist(engine_);
        }
        const double u = uniform();
        double pmf = std::exp(-mean);
        double cdf = pmf;
        std::uint64_t k = 0;
        while (u >= cdf) {
            ++k;
            pmf *= mean / static_cast<double>(k);
            const double next = cdf + pmf;
            if (next == cdf) break;
            cdf = next;
        }
        return k;
    }

    std::mt19937_64 &engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace bscert
