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

#include "bscert/model.hpp"
#include "bscert/photonic/pattern.hpp"
#include "bscert/photonic/probability.hpp"

namespace bscert {

using Distribution = std::map<OccupationPattern, double>;

struct DistributionOptions {
    std::uint64_t pattern_cap = kDefaultPatternCap;
    /// Coherent model: stop once P(total photons > cutoff) falls below this.
    double coherent_tail_tolerance = 1e-10;
};

struct ExactDistribution {
    Distribution probabilities;
    /// Probability mass beyond the enumerated totals (coherent model only).
    double tail_bound = 0.0;

    double sum() const {
        double s = 0.0;
        for (const auto &[pattern, p] : probabilities) s += p;
        return s;
    }
};

/// P(X > cutoff) for X ~ Poisson(mean), summed upward from cutoff + 1.
inline double poisson_tail(double mean, unsigned cutoff) {
    if (mean <= 0.0) return 0.0;
    const double first = cutoff + 1.0;
    double log_pmf = -mean + first * std::log(mean) - std::lgamma(first + 1.0);
    double tail = 0.0;
    for (double m = first;; m += 1.0) {
        const double pmf = std::exp(log_pmf);
        tail += pmf;
        if (m > mean && pmf < tail * 1e-17) break;
        log_pmf += std::log(mean) - std::log(m + 1.0);
    }
    return tail;
}

/// Smallest cutoff with poisson_tail(mean, cutoff) < tolerance.
inline unsigned poisson_cutoff(double mean, double tolerance) {
    unsigned cutoff = 0;
    while (poisson_tail(mean, cutoff) >= tolerance) ++cutoff;
    return cutoff;
}

/// Full output distribution for `model`, ascending lexicographic keys.
///
/// `input` is the photon input pattern; the coherent model uses its own amplitudes
/// and enumerates every output total up to the Poisson cutoff.
inline ExactDistribution exact_distribution(const SamplerModel &model, const UnitaryMatrix &u,
                                            const OccupationPattern &input, const DistributionOptions &options = {}) {
    ExactDistribution out;
    const auto over_patterns = [&](auto &&prob) {
        detail::require_same_modes(u, input, "exact_distribution");
        for (const auto &t : enumerate_patterns(input.total(), u.dim(), options.pattern_cap))
            out.probabilities.emplace(t, prob(t));
    };
    std::visit(overloaded{
                   [&](const BosonModel &) {
                       over_patterns([&](const OccupationPattern &t) { return boson_probability(u, input, t); });
                   },
                   [&](const ClassicalModel &) {
                       over_patterns([&](const OccupationPattern &t) { return classical_probability(u, input, t); });
                   },
                   [&](const MeanFieldSharedModel &) {
                       over_patterns([&](const OccupationPattern &t) {
                           return meanfield_shared_average_probability(u, input, t);
                       });
                   },
                   [&](const MeanFieldIndependentModel &) {
                       over_patterns(
                           [&](const OccupationPattern &t) { return meanfield_average_probability(u, input, t); });
                   },
                   [&](const CoherentModel &m) {
                       if (m.amplitudes.modes() != u.dim())
                           throw DimensionError("exact_distribution: amplitude count differs from dimension");
                       const double mean = m.amplitudes.mean_photons();
                       const unsigned cutoff = poisson_cutoff(mean, options.coherent_tail_tolerance);
                       std::uint64_t count = 0;
                       for (unsigned total = 0; total <= cutoff; ++total) {
                           count += pattern_count(total, u.dim());
                           if (count > options.pattern_cap)
                               throw CapExceededError("exact_distribution: coherent enumeration exceeds cap");
                       }
                       for (unsigned total = 0; total <= cutoff; ++total)
                           for (const auto &t : enumerate_patterns(total, u.dim(), options.pattern_cap))
                               out.probabilities.emplace(t, coherent_average_probability(u, m.amplitudes, t));
                       out.tail_bound = poisson_tail(mean, cutoff);
                   },
                   [&](const PartiallyDistinguishableModel &m) {
                       out.probabilities = pd_output_distribution(u, input, m.coefficients, options.pattern_cap);
                   },
               },
               model);
    return out;
}

}  // namespace bscert
