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

// Command-line front end: gen-matrix, distribution, sample, certify, reproduce.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bscert/bscert.hpp"
#include "bscert/io/csv_io.hpp"
#include "bscert/io/json_io.hpp"
#include "bscert/reproduce.hpp"
#include "json.hpp"

namespace {

using namespace bscert;
using nlohmann::json;

constexpr int kExitError = 1;

/// JSON config: {"<subcommand>": {"<long flag name>": value, ...}}.
class JsonConfig : public CLI::Config {
   public:
    std::string to_config(const CLI::App *, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error &e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

   private:
    static std::string scalar(const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

    static void flatten(const json &j, std::vector<std::string> parents, std::vector<CLI::ConfigItem> &items) {
        for (const auto &[key, value] : j.items()) {
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                flatten(value, next, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto &v : value) item.inputs.push_back(scalar(v));
            } else if (value.is_boolean()) {
                item.inputs.push_back(value.get<bool>() ? "true" : "false");
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Options shared by distribution and sample.
struct ExperimentOptions {
    std::size_t modes = 0;
    unsigned photons = 0;
    std::string input;
    bool test_state = false;
    std::string matrix_file;
    RngSeed seed = 1;
    std::vector<double> amplitudes;
    std::string coefficients_file;
    std::string out;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--modes", modes, "Number of modes N (needed without --matrix-file)");
        cmd->add_option("--photons", photons, "Photon number n; occupies modes 1..n when --input is absent");
        cmd->add_option("--input", input, "Input occupation pattern, dash-joined (e.g. 0-1-1-0)");
        cmd->add_flag("--test-state", test_state, "Use the all-ones test state on every mode");
        cmd->add_option("--matrix-file", matrix_file, "Unitary matrix JSON; a Haar matrix is drawn from --seed otherwise");
        cmd->add_option("--seed", seed, "Master seed");
        cmd->add_option("--amplitudes", amplitudes, "Coherent amplitudes |alpha_j| (default sqrt of input)")
            ->delimiter(',');
        cmd->add_option("--coefficients", coefficients_file, "Overlap coefficients JSON for the pd model");
        cmd->add_option("--out", out, "Output file (stdout when empty)");
    }

    UnitaryMatrix matrix(std::size_t index = 0) const {
        if (!matrix_file.empty()) return io::load_matrix(matrix_file);
        if (modes == 0) throw UsageError("--modes must be >= 1 when no --matrix-file is given");
        return haar_unitary(modes, derive_seed(seed, 0, index));
    }

    std::string matrix_label(std::size_t index = 0) const {
        if (!matrix_file.empty()) return matrix_file;
        return "haar:seed=" + std::to_string(seed) + ":index=" + std::to_string(index) + ":dim=" + std::to_string(modes);
    }

    OccupationPattern input_pattern(std::size_t dim) const {
        if (test_state) return OccupationPattern::test_state(dim);
        if (!input.empty()) {
            auto p = OccupationPattern::parse(input);
            if (p.modes() != dim) throw UsageError("--input has " + std::to_string(p.modes()) + " modes, matrix has " +
                                                   std::to_string(dim));
            return p;
        }
        if (photons > dim) throw UsageError("--photons exceeds the number of modes");
        std::vector<unsigned> occ(dim, 0U);
        for (unsigned i = 0; i < photons; ++i) occ[i] = 1;
        return OccupationPattern(occ);
    }

    SamplerModel model(const std::string &name, const OccupationPattern &s) const {
        if (name == "coherent") {
            if (amplitudes.empty()) return CoherentModel{CoherentInput::from_pattern(s)};
            if (amplitudes.size() != s.modes()) throw UsageError("--amplitudes needs one value per mode");
            return CoherentModel{CoherentInput(amplitudes)};
        }
        if (name == "pd") {
            if (coefficients_file.empty()) return PartiallyDistinguishableModel{uniform_overlap_coefficients(s.total())};
            return PartiallyDistinguishableModel{io::load_coefficients(coefficients_file)};
        }
        try {
            return parameterless_model(name);
        } catch (const InputError &) {
            throw UsageError("unknown model '" + name +
                             "' (boson, classical, mf-shared, mf-independent, coherent, pd)");
        }
    }
};

void emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(path, text);
    }
}

int run_gen_matrix(std::size_t dim, RngSeed seed, const std::string &out) {
    if (dim == 0) throw UsageError("--modes must be >= 1");
    const auto u = haar_unitary(dim, derive_seed(seed, 0, 0));
    emit(out, io::matrix_to_json(u.matrix()).dump(2) + "\n");
    return 0;
}

int run_distribution(const ExperimentOptions &opt, const std::vector<std::string> &models) {
    if (models.empty()) throw UsageError("at least one --model is required");
    const auto u = opt.matrix();
    const auto s = opt.input_pattern(u.dim());
    std::vector<Distribution> dists;
    for (const auto &name : models) {
        const auto exact = exact_distribution(opt.model(name, s), u, s);
        std::cerr << name << ": sum=" << io::format_double(exact.sum());
        if (exact.tail_bound > 0.0) std::cerr << " truncation_tail=" << io::format_double(exact.tail_bound);
        std::cerr << "\n";
        dists.push_back(exact.probabilities);
    }
    emit(opt.out, io::distribution_csv(models, dists));
    return 0;
}

int run_sample(const ExperimentOptions &opt, const std::string &model_name_arg, std::size_t samples,
               std::size_t matrices, std::optional<unsigned> postselect_total) {
    if (samples == 0) throw UsageError("--samples must be >= 1");
    if (matrices == 0) throw UsageError("--matrices must be >= 1");
    if (opt.out.empty()) throw UsageError("sample needs --out <batch.csv>");
    std::vector<OccupationPattern> events;
    SampleBatch summary;
    std::size_t drawn = 0;
    for (std::size_t i = 0; i < matrices; ++i) {
        const auto u = opt.matrix(i);
        const auto s = opt.input_pattern(u.dim());
        auto batch = sample(opt.model(model_name_arg, s), u, s, samples, derive_seed(opt.seed, 1, i));
        drawn += batch.drawn;
        if (postselect_total) batch = postselect(batch, *postselect_total);
        events.insert(events.end(), batch.events.begin(), batch.events.end());
        if (i == 0) summary = std::move(batch);
    }
    summary.events = std::move(events);
    summary.drawn = drawn;
    summary.seed = opt.seed;
    summary.retained_fraction = static_cast<double>(summary.events.size()) / static_cast<double>(drawn);

    io::write_text_file(opt.out, io::batch_csv(io::count_events(summary.events)));
    auto sidecar = io::batch_sidecar(summary, opt.matrix_label());
    sidecar["matrices"] = matrices;
    if (postselect_total) sidecar["postselect"] = *postselect_total;
    const auto sidecar_path = std::filesystem::path(opt.out).replace_extension(".json");
    io::write_text_file(sidecar_path.string(), sidecar.dump(2) + "\n");
    std::cerr << "wrote " << summary.events.size() << " events to " << opt.out << " (" << sidecar_path.string()
              << ")\n";
    return 0;
}

int run_certify(const std::vector<std::string> &paths, double significance, std::uint64_t min_samples,
                const std::string &out) {
    io::EventCounts counts;
    for (const auto &path : paths) {
        io::EventCounts part;
        try {
            part = path == "-" ? io::parse_batch_csv(std::cin) : io::load_batch_csv(path);
        } catch (const ParseError &e) {
            throw ParseError(path + ": " + e.what());
        }
        for (const auto &[pattern, c] : part) counts[pattern] += c;
    }
    std::optional<CountTable> table;
    unsigned n = 0;
    for (const auto &[pattern, c] : counts) {
        if (!table) {
            n = pattern.total();
            if (pattern.modes() != n)
                throw InputError("certify: events must carry one photon per mode in total (n = N), got " +
                                 pattern.to_string());
            table.emplace(n, pattern.modes());
        }
        table->add(pattern, c);
    }
    if (!table) throw InputError("certify: no events");
    const auto report = certify_against_meanfield(*table, n, {significance, min_samples});
    emit(out, io::report_to_json(report).dump(2) + "\n");
    std::cerr << "verdict: " << verdict_name(report.verdict) << "\n";
    return io::verdict_exit_code(report.verdict);
}

int run_reproduce(int figure, const ReproduceConfig &config, const std::string &outdir) {
    std::filesystem::create_directories(outdir);
    const auto result = reproduce_figure(figure, config);
    const auto base = std::filesystem::path(outdir) / ("fig" + std::to_string(figure));
    io::write_text_file(base.string() + ".csv", figure_counts_csv(result));
    io::write_text_file(base.string() + "_totals.csv", figure_totals_csv(result));
    std::cerr << "wrote " << base.string() << ".csv and " << base.string() << "_totals.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"bscert: linear-optics sampler simulation and mean-field certification"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config with one object per subcommand; flags win");

    std::size_t gm_dim = 0;
    RngSeed gm_seed = 1;
    std::string gm_out;
    auto *gen = app.add_subcommand("gen-matrix", "Draw a Haar-random unitary and write it as JSON");
    gen->add_option("--modes", gm_dim, "Matrix dimension")->required();
    gen->add_option("--seed", gm_seed, "Seed");
    gen->add_option("--out", gm_out, "Output path (stdout when empty)");

    ExperimentOptions dist_opt;
    std::vector<std::string> dist_models;
    auto *dist = app.add_subcommand("distribution", "Exact output probabilities per pattern, one column per model");
    dist_opt.add_to(dist);
    dist->add_option("--model", dist_models, "Models (repeat or comma-separate)")->delimiter(',');

    ExperimentOptions sample_opt;
    std::string sample_model;
    std::size_t sample_count = 10'000;
    std::size_t sample_matrices = 1;
    std::optional<unsigned> sample_post;
    auto *samp = app.add_subcommand("sample", "Draw a batch and write event,count CSV plus a JSON sidecar");
    sample_opt.add_to(samp);
    samp->add_option("--model", sample_model, "Model")->required();
    samp->add_option("--samples", sample_count, "Samples per matrix");
    samp->add_option("--matrices", sample_matrices, "Haar matrices to aggregate over");
    samp->add_option("--postselect", sample_post, "Keep only events with this photon total");

    std::vector<std::string> cert_paths;
    double cert_sig = 1e-3;
    std::uint64_t cert_min = 10'000;
    std::string cert_out;
    auto *cert = app.add_subcommand("certify", "Test-state certification of batch CSVs (exit 0/2/3)");
    cert->add_option("batches", cert_paths, "Batch CSV files ('-' for stdin)")->required();
    cert->add_option("--significance", cert_sig, "Chi-square significance level")->check(CLI::Range(0.0, 1.0));
    cert->add_option("--min-samples", cert_min, "Samples needed for a MeanFieldLike verdict");
    cert->add_option("--out", cert_out, "Report JSON path (stdout when empty)");

    int fig = 0;
    ReproduceConfig rep_config;
    std::string rep_out = "figures";
    auto *rep = app.add_subcommand("reproduce", "Run a figure pipeline and write aggregated count tables");
    rep->add_option("--figure", fig, "Figure 1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
    rep->add_option("--seed", rep_config.seed, "Master seed");
    rep->add_option("--matrices", rep_config.matrices, "Override the number of matrices (panels for figs 2-4)");
    rep->add_option("--samples", rep_config.samples, "Override samples per matrix");
    rep->add_option("--out", rep_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return run_gen_matrix(gm_dim, gm_seed, gm_out);
        if (*dist) return run_distribution(dist_opt, dist_models);
        if (*samp) return run_sample(sample_opt, sample_model, sample_count, sample_matrices, sample_post);
        if (*cert) return run_certify(cert_paths, cert_sig, cert_min, cert_out);
        if (*rep) return run_reproduce(fig, rep_config, rep_out);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
