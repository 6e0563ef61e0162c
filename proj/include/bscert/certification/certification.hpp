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
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bscert/certification/statistics.hpp"
#include "bscert/photonic/distribution.hpp"
#include "bscert/photonic/pattern.hpp"
#include "bscert/photonic/probability.hpp"
#include "bscert/sampling.hpp"

namespace bscert {

/// Event counts sharing one photon number and mode count.
class CountTable {
   public:
    CountTable(unsigned photons, std::size_t modes) : photons_(photons), modes_(modes) {}

    static CountTable from_events(std::span<const OccupationPattern> events, unsigned photons, std::size_t modes) {
        CountTable t(photons, modes);
        for (const auto &e : events) t.add(e);
        return t;
    }

    void add(const OccupationPattern &event, std::uint64_t count = 1) {
        if (event.modes() != modes_ || event.total() != photons_) {
            throw InputError("CountTable: event " + event.to_string() + " does not have " +
                             std::to_string(photons_) + " photons over " + std::to_string(modes_) + " modes");
        }
        if (count == 0) return;
        counts_[event] += count;
        total_ += count;
    }

    unsigned photons() const { return photons_; }
    std::size_t modes() const { return modes_; }
    std::uint64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }
    const std::map<OccupationPattern, std::uint64_t> &counts() const { return counts_; }

    std::uint64_t count(const OccupationPattern &event) const {
        const auto it = counts_.find(event);
        return it == counts_.end() ? 0 : it->second;
    }

    Distribution frequencies() const {
        Distribution out;
        for (const auto &[pattern, c] : counts_)
            out[pattern] = static_cast<double>(c) / static_cast<double>(total_);
        return out;
    }

   private:
    unsigned photons_;
    std::size_t modes_;
    std::map<OccupationPattern, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Exact counts of a batch. An empty batch takes its shape from the input pattern.
inline CountTable tally(const SampleBatch &batch) {
    const OccupationPattern &shape = batch.events.empty() ? batch.input : batch.events.front();
    return CountTable::from_events(batch.events, shape.total(), shape.modes());
}

/// (max - min) event frequency over every possible pattern, zero-count ones included.
inline double spread_statistic(const CountTable &t) {
    if (t.empty()) throw InputError("spread_statistic: empty table");
    std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t hi = 0;
    for (const auto &pattern : enumerate_patterns(t.photons(), t.modes())) {
        const auto c = t.count(pattern);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return static_cast<double>(hi - lo) / static_cast<double>(t.total());
}

/// Total variation distance over the union of both supports.
inline double tvd(const Distribution &p, const Distribution &q) {
    double sum = 0.0;
    for (const auto &[pattern, pv] : p) {
        const auto it = q.find(pattern);
        sum += std::abs(pv - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto &[pattern, qv] : q)
        if (!p.contains(pattern)) sum += std::abs(qv);
    return 0.5 * sum;
}

inline constexpr double kMinExpectedPerCell = 5.0;

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit against `reference`, pooling the least likely cells
/// until each pooled cell expects at least five counts.
inline ChiSquareResult chi_square_vs_reference(const CountTable &t, const Distribution &reference) {
    if (t.empty()) throw InputError("chi_square_vs_reference: empty table");
    for (const auto &[pattern, c] : t.counts())
        if (!reference.contains(pattern))
            throw InputError("chi_square_vs_reference: observed event " + pattern.to_string() +
                             " outside the reference support");

    struct Cell {
        double expected;
        double observed;
    };
    const double n = static_cast<double>(t.total());
    std::vector<Cell> cells;
    for (const auto &[pattern, p] : reference) cells.push_back({p * n, static_cast<double>(t.count(pattern))});
    std::stable_sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) { return a.expected < b.expected; });

    std::vector<Cell> pooled;
    Cell open{0.0, 0.0};
    for (const auto &c : cells) {
        open.expected += c.expected;
        open.observed += c.observed;
        if (open.expected >= kMinExpectedPerCell) {
            pooled.push_back(open);
            open = {0.0, 0.0};
        }
    }
    if (open.expected > 0.0 || open.observed > 0.0) {
        if (pooled.empty()) {
            pooled.push_back(open);
        } else {
            pooled.back().expected += open.expected;
            pooled.back().observed += open.observed;
        }
    }
    if (pooled.size() <= 1) throw InputError("chi_square_vs_reference: degenerate pooling (at most one cell)");

    ChiSquareResult r;
    for (const auto &c : pooled) {
        if (!(c.expected > 0.0)) throw InputError("chi_square_vs_reference: pooled cell with zero expectation");
        const double d = c.observed - c.expected;
        r.statistic += d * d / c.expected;
    }
    r.dof = pooled.size() - 1;
    r.p_value = chi_square_upper_tail(r.statistic, r.dof);
    return r;
}

enum class Verdict { BosonLike, MeanFieldLike, Inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::BosonLike: return "BosonLike";
        case Verdict::MeanFieldLike: return "MeanFieldLike";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct CertificationOptions {
    double significance = 1e-3;
    std::uint64_t min_samples = 10'000;
};

struct CertificationReport {
    double chi_square = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    double spread = 0.0;
    double tvd_to_meanfield = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double significance = 1e-3;
    std::uint64_t min_samples = 10'000;
    std::uint64_t samples = 0;
    unsigned photons = 0;
};

/// Output distribution of the mean-field sampler fed the all-ones test state.
inline Distribution meanfield_test_state_distribution(unsigned n) {
    Distribution d;
    for (const auto &t : enumerate_patterns(n, n)) d.emplace(t, meanfield_test_state_probability(n, t));
    return d;
}

/// Test-state protocol. `table` holds outputs of a black box fed (1, ..., 1) on
/// n modes. Verdict: Inconclusive below `min_samples`; otherwise BosonLike when
/// the chi-square test against the mean-field test-state law rejects at
/// `significance`, else MeanFieldLike.
inline CertificationReport certify_against_meanfield(const CountTable &table, unsigned n,
                                                     const CertificationOptions &options = {}) {
    if (table.photons() != n || table.modes() != n) {
        throw InputError("certify_against_meanfield: events must carry n photons over n modes");
    }
    CertificationReport report;
    report.significance = options.significance;
    report.min_samples = options.min_samples;
    report.samples = table.total();
    report.photons = n;
    if (table.empty()) return report;

    const Distribution reference = meanfield_test_state_distribution(n);
    report.spread = spread_statistic(table);
    report.tvd_to_meanfield = tvd(table.frequencies(), reference);
    bool rejected = false;
    try {
        const auto chi = chi_square_vs_reference(table, reference);
        report.chi_square = chi.statistic;
        report.dof = chi.dof;
        report.p_value = chi.p_value;
        rejected = chi.p_value < options.significance;
    } catch (const InputError &) {
        // too few samples to form two pooled cells; leave the neutral statistic
    }
    if (table.total() < options.min_samples) {
        report.verdict = Verdict::Inconclusive;
    } else {
        report.verdict = rejected ? Verdict::BosonLike : Verdict::MeanFieldLike;
    }
    return report;
}

inline CertificationReport certify_against_meanfield(std::span<const OccupationPattern> events, unsigned n,
                                                     const CertificationOptions &options = {}) {
    return certify_against_meanfield(CountTable::from_events(events, n, n), n, options);
}

enum class TableChoice { First, Second, Inconclusive };

/// Picks the table holding the single most frequent event across both tables
/// (frequencies compared exactly); equal maxima are Inconclusive.
inline TableChoice most_frequent_event_test(const CountTable &a, const CountTable &b) {
    if (a.empty() || b.empty()) throw InputError("most_frequent_event_test: empty table");
    if (a.photons() != b.photons() || a.modes() != b.modes())
        throw DimensionError("most_frequent_event_test: tables have different shapes");
    const auto peak = [](const CountTable &t) {
        std::uint64_t m = 0;
        for (const auto &[pattern, c] : t.counts()) m = std::max(m, c);
        return m;
    };
    // compare peak_a / total_a with peak_b / total_b without rounding
    const auto lhs = static_cast<unsigned __int128>(peak(a)) * b.total();
    const auto rhs = static_cast<unsigned __int128>(peak(b)) * a.total();
    if (lhs > rhs) return TableChoice::First;
    if (rhs > lhs) return TableChoice::Second;
    return TableChoice::Inconclusive;
}

}  // namespace bscert
