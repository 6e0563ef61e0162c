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

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bscert/photonic/distribution.hpp"
#include "bscert/photonic/pattern.hpp"

namespace bscert::io {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

using EventCounts = std::map<OccupationPattern, std::uint64_t>;

inline EventCounts count_events(std::span<const OccupationPattern> events) {
    EventCounts counts;
    for (const auto &e : events) ++counts[e];
    return counts;
}

/// "event,count" with dash-joined patterns, ascending lexicographic order.
inline std::string batch_csv(const EventCounts &counts) {
    std::string out = "event,count\n";
    for (const auto &[pattern, c] : counts) out += pattern.to_string() + "," + std::to_string(c) + "\n";
    return out;
}

inline EventCounts parse_batch_csv(std::istream &in) {
    EventCounts counts;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::size_t modes = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != "event,count") throw ParseError("expected header 'event,count'", lineno);
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected two comma-separated fields", lineno);
        OccupationPattern pattern;
        try {
            pattern = OccupationPattern::parse(std::string_view(line).substr(0, comma));
        } catch (const std::exception &e) {
            throw ParseError(e.what(), lineno);
        }
        if (modes != 0 && pattern.modes() != modes) throw ParseError("inconsistent mode count", lineno);
        modes = pattern.modes();
        const std::string field = line.substr(comma + 1);
        std::uint64_t c = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), c);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
            throw ParseError("invalid count '" + field + "'", lineno);
        counts[pattern] += c;
    }
    if (!header) throw ParseError("missing header 'event,count'", lineno == 0 ? 1 : lineno);
    return counts;
}

inline EventCounts load_batch_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_batch_csv(in);
}

/// "event,<col>,..." over the union of supports; absent entries are 0.
inline std::string distribution_csv(const std::vector<std::string> &columns, const std::vector<Distribution> &dists) {
    std::map<OccupationPattern, std::vector<double>> rows;
    for (std::size_t c = 0; c < dists.size(); ++c)
        for (const auto &[pattern, p] : dists[c]) {
            auto &row = rows[pattern];
            row.resize(dists.size(), 0.0);
            row[c] = p;
        }
    std::string out = "event";
    for (const auto &name : columns) out += "," + name;
    out += "\n";
    for (const auto &[pattern, row] : rows) {
        out += pattern.to_string();
        for (double p : row) out += "," + format_double(p);
        out += "\n";
    }
    return out;
}

}  // namespace bscert::io
