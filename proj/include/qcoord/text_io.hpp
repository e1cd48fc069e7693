// Copyright 2026 The qcoord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoord/circuit.hpp"
#include "qcoord/common.hpp"

namespace qcoord {

// Leading comment block carried by every result file: tool version, seed and
// config digest, so figures can be traced back to their runs. No wall-clock
// content, keeping reruns byte-identical.
struct FileMetadata {
    std::string title;
    std::uint64_t seed = 0;
    std::uint64_t config_digest = 0;

    void write(std::ostream& os) const {
        os << "# " << title << "\n";
        os << "# qcoord " << kVersion << "\n";
        os << "# seed " << seed << "\n";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(config_digest));
        os << "# config_digest " << buf << "\n";
    }
};

// Delimited table with one header row; numeric cells print with 17
// significant digits so re-ingestion is lossless.
class TableWriter {
public:
    TableWriter(std::ostream& os, FileMetadata meta, std::vector<std::string> columns)
        : os_(os), columns_(std::move(columns)) {
        meta.write(os_);
        os_ << "# columns:";
        for (const auto& c : columns_) os_ << ' ' << c;
        os_ << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        detail::require(cells.size() == columns_.size(), "table row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ' ';
            os_ << cells[i];
        }
        os_ << '\n';
    }

    static std::string cell(double v) { return detail::format_double(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }

private:
    std::ostream& os_;
    std::vector<std::string> columns_;
};

inline std::uint64_t file_digest(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    detail::require(is.good(), "cannot open file for digest: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return fnv1a64(ss.str());
}

// Price series file: comment block plus "t value" rows.
inline std::vector<double> read_price_series(const std::string& path) {
    std::ifstream is(path);
    detail::require(is.good(), "cannot open price series: " + path);
    std::vector<double> series;
    std::string line;
    while (std::getline(is, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::size_t t;
        double v;
        ls >> t >> v;
        detail::require(!ls.fail(), "bad price series row: " + line);
        if (series.size() <= t) series.resize(t + 1, 0.0);
        series[t] = v;
    }
    detail::require(!series.empty(), "price series file is empty");
    return series;
}

inline void write_series_file(const std::string& path, const FileMetadata& meta,
                              const std::vector<std::string>& columns,
                              const std::vector<std::vector<double>>& series) {
    std::ofstream os(path);
    detail::require(os.good(), "cannot open output file: " + path);
    TableWriter table(os, meta, columns);
    detail::require(!series.empty(), "no series to write");
    const std::size_t T = series[0].size();
    for (const auto& s : series)
        detail::require(s.size() == T, "series length mismatch");
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<std::string> cells;
        cells.reserve(series.size() + 1);
        cells.push_back(std::to_string(t));
        for (const auto& s : series) cells.push_back(TableWriter::cell(s[t]));
        table.row(cells);
    }
}

}  // namespace qcoord
