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

#include <fstream>
#include <string>

#include "bscert/certification/certification.hpp"
#include "bscert/core/matrix.hpp"
#include "bscert/distinguishability.hpp"
#include "bscert/sampling.hpp"
#include "json.hpp"

namespace bscert::io {

using nlohmann::json;

inline json matrix_to_json(const ComplexMatrix &m) {
    if (!m.is_square()) throw DimensionError("matrix_to_json: only square matrices are serialized");
    json re = json::array();
    json im = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (const auto &z : m.row(r)) {
            re_row.push_back(z.real());
            im_row.push_back(z.imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

/// Parses {"dim", "re", "im"} and re-validates unitarity.
inline UnitaryMatrix unitary_from_json(const json &j, double tol = kUnitarityTolerance) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        const auto &re = j.at("re");
        const auto &im = j.at("im");
        if (dim == 0 || re.size() != dim || im.size() != dim) throw ParseError("matrix: 're'/'im' must have dim rows");
        std::vector<Complex> data;
        data.reserve(dim * dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (re[r].size() != dim || im[r].size() != dim) throw ParseError("matrix: row length differs from dim");
            for (std::size_t c = 0; c < dim; ++c) data.emplace_back(re[r][c].get<double>(), im[r][c].get<double>());
        }
        return UnitaryMatrix(ComplexMatrix(dim, dim, std::move(data)), tol);
    } catch (const json::exception &e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void save_matrix(const std::string &path, const ComplexMatrix &m) {
    write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

inline UnitaryMatrix load_matrix(const std::string &path) { return unitary_from_json(read_json_file(path)); }

/// {"n": n, "C": [[[re, im], ...] for photons 2..n]}
inline json coefficients_to_json(const OverlapCoefficients &c) {
    json rows = json::array();
    for (const auto &row : c.free_rows()) {
        json r = json::array();
        for (const auto &z : row) r.push_back({z.real(), z.imag()});
        rows.push_back(std::move(r));
    }
    return {{"n", c.photons()}, {"C", std::move(rows)}};
}

inline OverlapCoefficients coefficients_from_json(const json &j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        const auto &rows = j.at("C");
        if (n == 0 || rows.size() != n - 1) throw ParseError("coefficients: 'C' must hold n - 1 rows");
        std::vector<std::vector<Complex>> parsed;
        for (const auto &row : rows) {
            std::vector<Complex> r;
            for (const auto &z : row) {
                if (!z.is_array() || z.size() != 2) throw ParseError("coefficients: entries must be [re, im]");
                r.emplace_back(z[0].get<double>(), z[1].get<double>());
            }
            parsed.push_back(std::move(r));
        }
        return OverlapCoefficients(std::move(parsed));
    } catch (const json::exception &e) {
        throw ParseError(std::string("coefficients: ") + e.what());
    }
}

inline OverlapCoefficients load_coefficients(const std::string &path) {
    return coefficients_from_json(read_json_file(path));
}

inline json batch_sidecar(const SampleBatch &batch, const std::string &matrix_file) {
    json j = {{"seed", batch.seed},
              {"model", batch.model},
              {"input", batch.input.to_string()},
              {"matrix_file", matrix_file},
              {"samples", batch.drawn},
              {"events", batch.events.size()},
              {"retained_fraction", batch.retained_fraction}};
    if (batch.amplitudes) j["amplitudes"] = std::vector<double>(batch.amplitudes->values().begin(),
                                                                batch.amplitudes->values().end());
    return j;
}

inline json report_to_json(const CertificationReport &r) {
    return {{"chi_square", r.chi_square},
            {"dof", r.dof},
            {"p_value", r.p_value},
            {"spread", r.spread},
            {"tvd_to_meanfield", r.tvd_to_meanfield},
            {"verdict", verdict_name(r.verdict)},
            {"significance", r.significance},
            {"min_samples", r.min_samples},
            {"samples", r.samples},
            {"photons", r.photons}};
}

/// CLI exit status for a verdict.
inline int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::BosonLike: return 0;
        case Verdict::MeanFieldLike: return 2;
        case Verdict::Inconclusive: return 3;
    }
    return 3;
}

}  // namespace bscert::io
