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

#include <map>
#include <string>
#include <vector>

#include "bscert/core/haar.hpp"
#include "bscert/io/csv_io.hpp"
#include "bscert/parallel.hpp"
#include "bscert/sampling.hpp"

namespace bscert {

struct ReproduceConfig {
    RngSeed seed = 1;
    /// Overrides for the figure defaults; 0 keeps the default.
    std::size_t matrices = 0;
    std::size_t samples = 0;
    unsigned workers = std::thread::hardware_concurrency();
};

/// Aggregated counts of one figure panel.
struct FigurePanel {
    std::string id;
    OccupationPattern input;
    std::size_t matrices = 0;
    std::size_t samples_per_matrix = 0;
    std::vector<std::string> models;
    /// counts[m] over every pattern with input.total() photons
    std::vector<io::EventCounts> counts;
    std::vector<std::uint64_t> drawn;
    std::vector<std::uint64_t> retained;
};

struct FigureResult {
    int figure = 0;
    std::vector<FigurePanel> panels;
};

namespace detail {

struct PanelSpec {
    std::string id;
    OccupationPattern input;
    std::size_t matrices;
    std::size_t samples;
    std::vector<SamplerModel> models;
    std::uint64_t stream;
};

inline FigurePanel run_panel(const PanelSpec &spec, const ReproduceConfig &config) {
    const unsigned n = spec.input.total();
    const std::size_t modes = spec.input.modes();
    FigurePanel panel{spec.id, spec.input, spec.matrices, spec.samples, {}, {}, {}, {}};
    for (const auto &m : spec.models) panel.models.push_back(model_name(m));

    using PerMatrix = std::vector<SampleBatch>;
    const auto batches = parallel_map(
        spec.matrices,
        [&](std::size_t i) {
            const RngSeed matrix_seed = derive_seed(config.seed, spec.stream, i);
            const UnitaryMatrix u = haar_unitary(modes, matrix_seed);
            PerMatrix out;
            for (std::size_t m = 0; m < spec.models.size(); ++m) {
                auto batch = sample(spec.models[m], u, spec.input, spec.samples, derive_seed(matrix_seed, m + 1));
                batch.matrix_id = "haar:" + std::to_string(matrix_seed);
                out.push_back(postselect(batch, n));
            }
            return out;
        },
        config.workers);

    const auto universe = enumerate_patterns(n, modes);
    for (std::size_t m = 0; m < spec.models.size(); ++m) {
        io::EventCounts counts;
        for (const auto &t : universe) counts.emplace(t, 0);
        std::uint64_t drawn = 0;
        std::uint64_t retained = 0;
        for (const auto &per_matrix : batches) {
            const auto &b = per_matrix[m];
            for (const auto &e : b.events) ++counts[e];
            drawn += b.drawn;
            retained += b.events.size();
        }
        panel.counts.push_back(std::move(counts));
        panel.drawn.push_back(drawn);
        panel.retained.push_back(retained);
    }
    return panel;
}

inline std::uint64_t panel_stream(int figure, std::size_t panel) { return 1000ULL * figure + panel; }

}  // namespace detail

/// Runs the sampling pipeline behind figure 1, 2, 3 or 4.
///
/// fig1: boson, classical, both mean-field variants and coherent (alpha_j = 1 on
///       occupied modes, post-selected to n) for S = (0,1,1,0) and (0,1,1,1,0),
///       100 Haar matrices x 100 samples, aggregated.
/// fig2: boson vs mean-field, test state (1,1,1,1), one Haar matrix per panel,
///       4 panels x 10,000 samples.
/// fig3: as fig2 with S = (0,1,1,0).
/// fig4: boson, classical, pd (uniform coefficients) and mean-field for S = (1,1,1).
inline FigureResult reproduce_figure(int figure, const ReproduceConfig &config) {
    const auto pick = [](std::size_t override_value, std::size_t fallback) {
        return override_value ? override_value : fallback;
    };
    std::vector<detail::PanelSpec> specs;
    switch (figure) {
        case 1: {
            const std::vector<OccupationPattern> inputs = {{0, 1, 1, 0}, {0, 1, 1, 1, 0}};
            for (std::size_t p = 0; p < inputs.size(); ++p) {
                specs.push_back({std::string(1, static_cast<char>('a' + p)), inputs[p], pick(config.matrices, 100),
                                 pick(config.samples, 100),
                                 {BosonModel{}, ClassicalModel{}, MeanFieldSharedModel{}, MeanFieldIndependentModel{},
                                  CoherentModel{CoherentInput::from_pattern(inputs[p])}},
                                 detail::panel_stream(1, p)});
            }
            break;
        }
        case 2:
        case 3:
        case 4: {
            const OccupationPattern input = figure == 2   ? OccupationPattern::test_state(4)
                                            : figure == 3 ? OccupationPattern{0, 1, 1, 0}
                                                          : OccupationPattern::test_state(3);
            std::vector<SamplerModel> models = {BosonModel{}};
            if (figure == 4) {
                models.push_back(ClassicalModel{});
                models.push_back(PartiallyDistinguishableModel{uniform_overlap_coefficients(3)});
            }
            models.push_back(MeanFieldSharedModel{});
            models.push_back(MeanFieldIndependentModel{});
            // one Haar matrix per panel
            const std::size_t panels = pick(config.matrices, 4);
            for (std::size_t p = 0; p < panels; ++p)
                specs.push_back({std::to_string(p + 1), input, 1, pick(config.samples, 10'000), models,
                                 detail::panel_stream(figure, p)});
            break;
        }
        default:
            throw InputError("reproduce_figure: figure must be 1, 2, 3 or 4");
    }
    FigureResult result{figure, {}};
    for (const auto &spec : specs) result.panels.push_back(detail::run_panel(spec, config));
    return result;
}

/// "panel,event,<model>..." with one row per possible event.
inline std::string figure_counts_csv(const FigureResult &fig) {
    std::string out = "panel,event";
    if (!fig.panels.empty())
        for (const auto &m : fig.panels.front().models) out += "," + m;
    out += "\n";
    for (const auto &panel : fig.panels) {
        for (const auto &[pattern, unused] : panel.counts.front()) {
            out += panel.id + "," + pattern.to_string();
            for (const auto &counts : panel.counts) out += "," + std::to_string(counts.at(pattern));
            out += "\n";
        }
    }
    return out;
}

/// "panel,model,input,matrices,samples,retained" per panel and model.
inline std::string figure_totals_csv(const FigureResult &fig) {
    std::string out = "panel,model,input,matrices,samples,retained\n";
    for (const auto &panel : fig.panels)
        for (std::size_t m = 0; m < panel.models.size(); ++m)
            out += panel.id + "," + panel.models[m] + "," + panel.input.to_string() + "," +
                   std::to_string(panel.matrices) + "," + std::to_string(panel.drawn[m]) + "," +
                   std::to_string(panel.retained[m]) + "\n";
    return out;
}

}  // namespace bscert
