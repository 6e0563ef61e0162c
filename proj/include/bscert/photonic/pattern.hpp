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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "bscert/core/error.hpp"

namespace bscert {

/// Photon counts per mode (input S or output T).
class OccupationPattern {
   public:
    OccupationPattern() = default;
    explicit OccupationPattern(std::vector<unsigned> occupations) : occ_(std::move(occupations)) {
        if (occ_.empty()) throw DimensionError("OccupationPattern: at least one mode required");
    }
    OccupationPattern(std::initializer_list<unsigned> occupations)
        : OccupationPattern(std::vector<unsigned>(occupations)) {}

    /// All-ones input with one photon per mode.
    static OccupationPattern test_state(std::size_t modes) {
        return OccupationPattern(std::vector<unsigned>(modes, 1U));
    }

    std::size_t modes() const { return occ_.size(); }
    unsigned total() const { return std::accumulate(occ_.begin(), occ_.end(), 0U); }
    unsigned operator[](std::size_t mode) const { return occ_[mode]; }
    const std::vector<unsigned> &occupations() const { return occ_; }

    bool single_photon_inputs() const {
        for (auto s : occ_)
            if (s > 1) return false;
        return true;
    }

    /// Dash-joined form, e.g. "1-1-0-2".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < occ_.size(); ++i) {
            if (i) out += '-';
            out += std::to_string(occ_[i]);
        }
        return out;
    }

    static OccupationPattern parse(std::string_view text) {
        std::vector<unsigned> occ;
        std::size_t pos = 0;
        while (true) {
            const std::size_t dash = text.find('-', pos);
            const std::string_view field = text.substr(pos, dash == std::string_view::npos ? dash : dash - pos);
            unsigned value = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
                throw ParseError("invalid occupation pattern '" + std::string(text) + "'");
            }
            occ.push_back(value);
            if (dash == std::string_view::npos) break;
            pos = dash + 1;
        }
        return OccupationPattern(std::move(occ));
    }

    auto operator<=>(const OccupationPattern &) const = default;
    bool operator==(const OccupationPattern &) const = default;

   private:
    std::vector<unsigned> occ_;
};

/// Non-decreasing list of 0-based mode indices, one entry per photon.
using ModeArrangement = std::vector<std::size_t>;

inline ModeArrangement pattern_to_arrangement(const OccupationPattern &pattern) {
    ModeArrangement modes;
    modes.reserve(pattern.total());
    for (std::size_t j = 0; j < pattern.modes(); ++j)
        for (unsigned c = 0; c < pattern[j]; ++c) modes.push_back(j);
    return modes;
}

inline OccupationPattern arrangement_to_pattern(const ModeArrangement &arrangement, std::size_t modes) {
    std::vector<unsigned> occ(modes, 0U);
    for (auto m : arrangement) {
        if (m >= modes) throw DimensionError("arrangement_to_pattern: mode index out of range");
        ++occ[m];
    }
    return OccupationPattern(std::move(occ));
}

/// Exact factorial for n <= 20.
inline std::uint64_t factorial_u64(unsigned n) {
    if (n > 20) throw CapExceededError("factorial_u64: n! overflows 64 bits for n > 20");
    std::uint64_t f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// n! as a double; exact integer arithmetic up to 20, gamma function above.
inline double factorial(unsigned n) {
    if (n <= 20) return static_cast<double>(factorial_u64(n));
    return std::tgamma(static_cast<double>(n) + 1.0);
}

/// prod_i occ_i!
inline double factorial_product(const OccupationPattern &pattern) {
    double p = 1.0;
    for (auto s : pattern.occupations()) p *= factorial(s);
    return p;
}

/// C(modes + photons - 1, photons), saturating at uint64 max.
inline std::uint64_t pattern_count(unsigned photons, std::size_t modes) {
    if (modes == 0) return 0;
    // C(a, k) with k = min(photons, modes - 1) built incrementally, exact at every step
    const std::uint64_t a = modes + photons - 1;
    const std::uint64_t k = std::min<std::uint64_t>(photons, modes - 1);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = a - k + i;
        const std::uint64_t g = std::gcd(c, i);
        const std::uint64_t cr = c / g;
        const std::uint64_t ir = i / g;
        const std::uint64_t nr = num / ir;
        if (cr > std::numeric_limits<std::uint64_t>::max() / nr) return std::numeric_limits<std::uint64_t>::max();
        c = cr * nr;
    }
    return c;
}

inline constexpr std::uint64_t kDefaultPatternCap = 10'000'000;

namespace detail {
inline void enumerate_into(std::vector<unsigned> &current, std::size_t pos, unsigned remaining,
                           std::vector<OccupationPattern> &out) {
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        out.emplace_back(current);
        return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
        current[pos] = v;
        enumerate_into(current, pos + 1, remaining - v, out);
    }
}
}  // namespace detail

/// All patterns of `photons` over `modes`, ascending lexicographic order.
inline std::vector<OccupationPattern> enumerate_patterns(unsigned photons, std::size_t modes,
                                                         std::uint64_t cap = kDefaultPatternCap) {
    if (modes == 0) throw DimensionError("enumerate_patterns: at least one mode required");
    const std::uint64_t count = pattern_count(photons, modes);
    if (count > cap) {
        throw CapExceededError("enumerate_patterns: " + std::to_string(count) +
                               " configurations exceed cap " + std::to_string(cap));
    }
    std::vector<OccupationPattern> out;
    out.reserve(count);
    std::vector<unsigned> current(modes, 0U);
    detail::enumerate_into(current, 0, photons, out);
    return out;
}

}  // namespace bscert
