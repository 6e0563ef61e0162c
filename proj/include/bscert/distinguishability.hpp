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
#include <map>
#include <vector>

#include "bscert/core/matrix.hpp"
#include "bscert/core/permanent.hpp"
#include "bscert/photonic/pattern.hpp"
#include "bscert/photonic/probability.hpp"

namespace bscert {

inline constexpr double kOverlapNormTolerance = 1e-12;

/// Gram-Schmidt expansion coefficients of each photon's temporal mode.
///
/// Photon 0 defines temporal mode 0. Photon p (p >= 1) has p + 1 coefficients
/// over temporal modes 0..p, with sum_k |C(p, k)|^2 = 1.
class OverlapCoefficients {
   public:
    OverlapCoefficients() : rows_{{Complex(1.0)}} {}

    /// `rows[i]` holds the coefficients of photon i + 1 and must have length i + 2.
    explicit OverlapCoefficients(std::vector<std::vector<Complex>> rows) {
        rows_.push_back({Complex(1.0)});
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::size_t photon = i + 1;
            if (rows[i].size() != photon + 1) {
                throw DimensionError("OverlapCoefficients: photon " + std::to_string(photon + 1) + " needs " +
                                     std::to_string(photon + 1) + " coefficients");
            }
            double norm = 0.0;
            for (const auto &c : rows[i]) {
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                    throw InputError("OverlapCoefficients: non-finite coefficient");
                norm += std::norm(c);
            }
            if (std::abs(norm - 1.0) > kOverlapNormTolerance) {
                throw InputError("OverlapCoefficients: coefficients of photon " + std::to_string(photon + 1) +
                                 " are not normalized");
            }
            rows_.push_back(std::move(rows[i]));
        }
    }

    /// Every photon fully in the reference temporal mode.
    static OverlapCoefficients indistinguishable(std::size_t photons) {
        return from_fn(photons, [](std::size_t, std::size_t k) { return k == 0 ? 1.0 : 0.0; });
    }

    /// Every photon in its own temporal mode.
    static OverlapCoefficients distinguishable(std::size_t photons) {
        return from_fn(photons, [](std::size_t p, std::size_t k) { return k == p ? 1.0 : 0.0; });
    }

    std::size_t photons() const { return rows_.size(); }
    const std::vector<Complex> &row(std::size_t photon) const { return rows_.at(photon); }

    /// Rows for photons 1..n-1 (the reference row is implicit).
    std::vector<std::vector<Complex>> free_rows() const { return {rows_.begin() + 1, rows_.end()}; }

   private:
    template <typename F>
    static OverlapCoefficients from_fn(std::size_t photons, F &&f) {
        if (photons == 0) throw InputError("OverlapCoefficients: need at least one photon");
        std::vector<std::vector<Complex>> rows;
        for (std::size_t p = 1; p < photons; ++p) {
            std::vector<Complex> row;
            for (std::size_t k = 0; k <= p; ++k) row.emplace_back(f(p, k));
            rows.push_back(std::move(row));
        }
        return OverlapCoefficients(std::move(rows));
    }

    std::vector<std::vector<Complex>> rows_;
};

/// Equal weight on every temporal mode: C(p, k) = 1/sqrt(p + 1), so all n!
/// expansion terms share the amplitude 1/sqrt(n!).
inline OverlapCoefficients uniform_overlap_coefficients(std::size_t photons) {
    if (photons == 0) throw InputError("uniform_overlap_coefficients: need at least one photon");
    std::vector<std::vector<Complex>> rows;
    for (std::size_t p = 1; p < photons; ++p)
        rows.emplace_back(p + 1, Complex(1.0 / std::sqrt(static_cast<double>(p + 1))));
    return OverlapCoefficients(std::move(rows));
}

/// One term of the expanded input: photon p sits in temporal mode labels[p].
struct ExtendedTerm {
    Complex amplitude;
    std::vector<std::size_t> labels;
};

/// All prod_{p>=1} (p + 1) = n! label assignments with amplitude prod_p C(p, labels[p]).
inline std::vector<ExtendedTerm> expand_input(const OverlapCoefficients &c) {
    const std::size_t n = c.photons();
    std::vector<ExtendedTerm> terms;
    std::vector<std::size_t> labels(n, 0);
    while (true) {
        Complex amp = 1.0;
        for (std::size_t p = 1; p < n; ++p) amp *= c.row(p)[labels[p]];
        terms.push_back({amp, labels});
        // mixed-radix increment, digit p ranges over 0..p
        std::size_t p = 1;
        while (p < n && ++labels[p] > p) labels[p++] = 0;
        if (p >= n) break;
    }
    return terms;
}

/// Spatial output distribution of partially distinguishable single photons.
///
/// The interferometer acts as U on spatial modes and as the identity on the n
/// temporal modes. Each extended output basis state gets the coherent sum of the
/// permanent amplitudes of all input terms; the spatial distribution marginalizes
/// the temporal labels.
inline std::map<OccupationPattern, double> pd_output_distribution(const UnitaryMatrix &u, const OccupationPattern &s,
                                                                  const OverlapCoefficients &c,
                                                                  std::uint64_t cap = kDefaultPatternCap) {
    detail::require_same_modes(u, s, "pd_output_distribution");
    if (!s.single_photon_inputs()) {
        throw InputError("pd_output_distribution: only single-photon inputs are supported");
    }
    const unsigned n = s.total();
    const std::size_t modes = u.dim();
    std::map<OccupationPattern, double> dist;
    if (n == 0) {
        dist[s] = 1.0;
        return dist;
    }
    if (c.photons() != n) throw DimensionError("pd_output_distribution: coefficient set sized for a different n");

    const ModeArrangement in = pattern_to_arrangement(s);
    std::vector<ExtendedTerm> terms;
    for (auto &term : expand_input(c))
        if (std::norm(term.amplitude) > 0.0) terms.push_back(std::move(term));

    std::vector<std::vector<unsigned>> term_counts;
    for (const auto &term : terms) {
        std::vector<unsigned> counts(n, 0U);
        for (auto l : term.labels) ++counts[l];
        term_counts.push_back(std::move(counts));
    }

    for (const auto &spatial : enumerate_patterns(n, modes, cap)) dist.emplace(spatial, 0.0);

    // extended mode index = spatial * n + temporal
    const auto extended = enumerate_patterns(n, modes * n, cap);
    ComplexMatrix a(n, n);
    std::vector<unsigned> temporal(n);
    std::vector<unsigned> spatial(modes);
    for (const auto &e : extended) {
        std::fill(temporal.begin(), temporal.end(), 0U);
        std::fill(spatial.begin(), spatial.end(), 0U);
        const ModeArrangement out = pattern_to_arrangement(e);
        for (auto x : out) {
            ++temporal[x % n];
            ++spatial[x / n];
        }
        Complex amp = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (term_counts[i] != temporal) continue;
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t p = 0; p < n; ++p)
                    a(q, p) = (out[q] % n == terms[i].labels[p]) ? u(out[q] / n, in[p]) : Complex(0.0);
            amp += terms[i].amplitude * permanent(a);
        }
        if (amp == Complex(0.0)) continue;
        dist[OccupationPattern(spatial)] += std::norm(amp) / factorial_product(e);
    }
    return dist;
}

}  // namespace bscert
