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
#include <optional>
#include <string>
#include <vector>

#include "bscert/core/rng.hpp"
#include "bscert/model.hpp"
#include "bscert/photonic/distribution.hpp"

namespace bscert {

struct SampleBatch {
    OccupationPattern input;
    std::string model;
    std::string matrix_id;
    std::vector<OccupationPattern> events;
    RngSeed seed = 0;
    /// Fraction of originally drawn events kept by postselection.
    double retained_fraction = 1.0;
    /// Samples drawn before any postselection.
    std::size_t drawn = 0;
    std::optional<CoherentInput> amplitudes;
};

/// Inverse-CDF sampler over a fixed list of weights.
class CategoricalSampler {
   public:
    explicit CategoricalSampler(std::span<const double> weights) {
        cdf_.reserve(weights.size());
        double acc = 0.0;
        for (auto w : weights) {
            if (!(w >= 0.0)) throw InputError("CategoricalSampler: negative or NaN weight");
            acc += w;
            cdf_.push_back(acc);
        }
        if (!(acc > 0.0)) throw InputError("CategoricalSampler: weights sum to zero");
    }

    std::size_t operator()(Rng &rng) const {
        const double u = rng.uniform() * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }

   private:
    std::vector<double> cdf_;
};

namespace detail {

inline SampleBatch make_batch(const OccupationPattern &input, std::string model, std::size_t count, RngSeed seed) {
    SampleBatch batch{input, std::move(model), {}, {}, seed, 1.0, count, std::nullopt};
    batch.events.reserve(count);
    return batch;
}

inline SampleBatch sample_from_distribution(const Distribution &dist, const OccupationPattern &input,
                                            std::string model, std::size_t count, RngSeed seed) {
    std::vector<const OccupationPattern *> support;
    std::vector<double> weights;
    for (const auto &[pattern, p] : dist) {
        support.push_back(&pattern);
        weights.push_back(std::max(p, 0.0));
    }
    const CategoricalSampler draw(weights);
    Rng rng(seed);
    auto batch = make_batch(input, std::move(model), count, seed);
    for (std::size_t i = 0; i < count; ++i) batch.events.push_back(*support[draw(rng)]);
    return batch;
}

/// Single-photon detection probabilities p_k = |sum_p e^{i theta_p} U(k, j_p)|^2 / n.
inline std::vector<double> meanfield_mode_probabilities(const UnitaryMatrix &u, const ModeArrangement &in, Rng &rng) {
    std::vector<Complex> phases;
    for (std::size_t p = 0; p < in.size(); ++p) phases.push_back(std::polar(1.0, rng.phase()));
    std::vector<double> probs(u.dim(), 0.0);
    for (std::size_t k = 0; k < u.dim(); ++k) {
        Complex amp = 0.0;
        for (std::size_t p = 0; p < in.size(); ++p) amp += phases[p] * u(k, in[p]);
        probs[k] = std::norm(amp) / static_cast<double>(in.size());
    }
    return probs;
}

}  // namespace detail

/// Exact boson sampling by inversion of the full output distribution.
inline SampleBatch sample_boson(const UnitaryMatrix &u, const OccupationPattern &s, std::size_t count, RngSeed seed,
                                std::uint64_t cap = kDefaultPatternCap) {
    const auto exact = exact_distribution(BosonModel{}, u, s, {.pattern_cap = cap});
    return detail::sample_from_distribution(exact.probabilities, s, "boson", count, seed);
}

/// Distinguishable photons: each photon routed independently with probability |U(k, j)|^2.
inline SampleBatch sample_classical(const UnitaryMatrix &u, const OccupationPattern &s, std::size_t count,
                                    RngSeed seed) {
    detail::require_same_modes(u, s, "sample_classical");
    const std::size_t modes = u.dim();
    std::vector<CategoricalSampler> routes;
    for (std::size_t j = 0; j < modes; ++j) {
        std::vector<double> w(modes);
        for (std::size_t k = 0; k < modes; ++k) w[k] = std::norm(u(k, j));
        routes.emplace_back(w);
    }
    const ModeArrangement in = pattern_to_arrangement(s);
    Rng rng(seed);
    auto batch = detail::make_batch(s, "classical", count, seed);
    std::vector<unsigned> occ(modes);
    for (std::size_t i = 0; i < count; ++i) {
        std::fill(occ.begin(), occ.end(), 0U);
        for (auto j : in) ++occ[routes[j](rng)];
        batch.events.emplace_back(occ);
    }
    return batch;
}

enum class PhaseRegeneration { Shared, Independent };

/// Mean-field imposter. Shared: one phase vector per run for all n photons.
/// Independent: a fresh phase vector for each photon.
inline SampleBatch sample_meanfield(const UnitaryMatrix &u, const OccupationPattern &s, std::size_t count,
                                    RngSeed seed, PhaseRegeneration variant) {
    detail::require_same_modes(u, s, "sample_meanfield");
    detail::require_single_photons(s, "sample_meanfield");
    const ModeArrangement in = pattern_to_arrangement(s);
    const std::size_t modes = u.dim();
    Rng rng(seed);
    auto batch = detail::make_batch(
        s, variant == PhaseRegeneration::Shared ? "mf-shared" : "mf-independent", count, seed);
    std::vector<unsigned> occ(modes);
    for (std::size_t i = 0; i < count; ++i) {
        std::fill(occ.begin(), occ.end(), 0U);
        if (!in.empty()) {
            if (variant == PhaseRegeneration::Shared) {
                const CategoricalSampler draw(detail::meanfield_mode_probabilities(u, in, rng));
                for (std::size_t p = 0; p < in.size(); ++p) ++occ[draw(rng)];
            } else {
                for (std::size_t p = 0; p < in.size(); ++p) {
                    const CategoricalSampler draw(detail::meanfield_mode_probabilities(u, in, rng));
                    ++occ[draw(rng)];
                }
            }
        }
        batch.events.emplace_back(occ);
    }
    return batch;
}

/// Coherent-state imposter: fresh input phases per run, independent Poisson output modes.
inline SampleBatch sample_coherent(const UnitaryMatrix &u, const CoherentInput &alpha, std::size_t count,
                                   RngSeed seed) {
    if (alpha.modes() != u.dim()) throw DimensionError("sample_coherent: amplitude count differs from dimension");
    const std::size_t modes = u.dim();
    std::vector<unsigned> nominal;
    for (auto a : alpha.values()) nominal.push_back(static_cast<unsigned>(std::lround(a * a)));
    Rng rng(seed);
    auto batch = detail::make_batch(OccupationPattern(nominal), "coherent", count, seed);
    batch.amplitudes = alpha;
    std::vector<double> chi(modes);
    std::vector<unsigned> occ(modes);
    for (std::size_t i = 0; i < count; ++i) {
        for (auto &c : chi) c = rng.phase();
        const auto beta = detail::coherent_output_fields(u, alpha, chi);
        for (std::size_t k = 0; k < modes; ++k) occ[k] = static_cast<unsigned>(rng.poisson(std::norm(beta[k])));
        batch.events.emplace_back(occ);
    }
    return batch;
}

/// Partially distinguishable photons, by inversion of the exact spatial distribution.
inline SampleBatch sample_pd(const UnitaryMatrix &u, const OccupationPattern &s, const OverlapCoefficients &c,
                             std::size_t count, RngSeed seed, std::uint64_t cap = kDefaultPatternCap) {
    return detail::sample_from_distribution(pd_output_distribution(u, s, c, cap), s, "pd", count, seed);
}

/// Dispatch on the model tag.
inline SampleBatch sample(const SamplerModel &model, const UnitaryMatrix &u, const OccupationPattern &s,
                          std::size_t count, RngSeed seed, std::uint64_t cap = kDefaultPatternCap) {
    return std::visit(
        overloaded{
            [&](const BosonModel &) { return sample_boson(u, s, count, seed, cap); },
            [&](const ClassicalModel &) { return sample_classical(u, s, count, seed); },
            [&](const MeanFieldSharedModel &) {
                return sample_meanfield(u, s, count, seed, PhaseRegeneration::Shared);
            },
            [&](const MeanFieldIndependentModel &) {
                return sample_meanfield(u, s, count, seed, PhaseRegeneration::Independent);
            },
            [&](const CoherentModel &m) { return sample_coherent(u, m.amplitudes, count, seed); },
            [&](const PartiallyDistinguishableModel &m) { return sample_pd(u, s, m.coefficients, count, seed, cap); },
        },
        model);
}

/// Keep only events with the given photon total.
inline SampleBatch postselect(const SampleBatch &batch, unsigned total) {
    SampleBatch out = batch;
    out.events.clear();
    for (const auto &e : batch.events)
        if (e.total() == total) out.events.push_back(e);
    if (!batch.events.empty()) {
        out.retained_fraction = batch.retained_fraction * static_cast<double>(out.events.size()) /
                                static_cast<double>(batch.events.size());
    }
    return out;
}

/// Monte Carlo average of the fixed-phase mean-field probability over `runs`
/// shared phase vectors.
inline double meanfield_shared_average_montecarlo(const UnitaryMatrix &u, const OccupationPattern &s,
                                                  const OccupationPattern &t, std::size_t runs, RngSeed seed) {
    detail::require_photon_match(u, s, t, "meanfield_shared_average_montecarlo");
    detail::require_single_photons(s, "meanfield_shared_average_montecarlo");
    Rng rng(seed);
    const unsigned n = s.total();
    std::vector<double> theta(n);
    double sum = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
        for (auto &th : theta) th = rng.phase();
        sum += meanfield_probability_given_phases(u, s, t, PhaseVector(theta));
    }
    return sum / static_cast<double>(runs);
}

}  // namespace bscert
