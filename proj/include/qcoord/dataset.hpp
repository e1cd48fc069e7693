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

#include "qcoord/qmodel.hpp"

namespace qcoord {

// Incentive-response samples for one energy community. One sample per row:
// horizon price values followed by horizon response values, in physical
// units; the header carries the EC type and the min-max scaling constants.
struct Dataset {
    std::string ec_type;  // "R", "C" or "I"
    std::size_t horizon = 0;
    Scaling scaling;
    std::vector<std::vector<double>> prices;
    std::vector<std::vector<double>> responses;

    std::size_t size() const { return prices.size(); }

    void validate() const {
        detail::require(horizon >= 1, "dataset horizon must be >= 1");
        detail::require(prices.size() == responses.size(),
                        "price and response sample counts differ");
        for (const auto& p : prices)
            detail::require(p.size() == horizon, "price row has the wrong horizon");
        for (const auto& r : responses)
            detail::require(r.size() == horizon, "response row has the wrong horizon");
    }

    // Recomputes the scaling constants from the stored samples.
    void fit_scaling() {
        detail::require(!prices.empty(), "cannot fit scaling on an empty dataset");
        double pmin = prices[0][0], pmax = prices[0][0];
        double rmin = responses[0][0], rmax = responses[0][0];
        for (const auto& p : prices)
            for (double v : p) {
                pmin = std::min(pmin, v);
                pmax = std::max(pmax, v);
            }
        for (const auto& r : responses)
            for (double v : r) {
                rmin = std::min(rmin, v);
                rmax = std::max(rmax, v);
            }
        if (pmax <= pmin) pmax = pmin + 1.0;
        if (rmax <= rmin) rmax = rmin + 1.0;
        scaling = Scaling{pmin, pmax, rmin, rmax};
    }
};

inline void write_dataset(std::ostream& os, const Dataset& ds) {
    ds.validate();
    os << "# qcoord dataset v1\n";
    os << "# ec_type " << ds.ec_type << "\n";
    os << "# horizon " << ds.horizon << "\n";
    os << "# price_min " << detail::format_double(ds.scaling.price_min) << " price_max "
       << detail::format_double(ds.scaling.price_max) << "\n";
    os << "# resp_min " << detail::format_double(ds.scaling.resp_min) << " resp_max "
       << detail::format_double(ds.scaling.resp_max) << "\n";
    os << "# samples " << ds.size() << "\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t t = 0; t < ds.horizon; ++t) {
            if (t) os << ' ';
            os << detail::format_double(ds.prices[i][t]);
        }
        for (std::size_t t = 0; t < ds.horizon; ++t)
            os << ' ' << detail::format_double(ds.responses[i][t]);
        os << '\n';
    }
}

inline void write_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream os(path);
    detail::require(os.good(), "cannot open dataset file for writing: " + path);
    write_dataset(os, ds);
}

inline Dataset read_dataset(std::istream& is) {
    Dataset ds;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "ec_type") {
                ls >> ds.ec_type;
            } else if (key == "horizon") {
                ls >> ds.horizon;
            } else if (key == "price_min") {
                std::string skip;
                ls >> ds.scaling.price_min >> skip >> ds.scaling.price_max;
            } else if (key == "resp_min") {
                std::string skip;
                ls >> ds.scaling.resp_min >> skip >> ds.scaling.resp_max;
            }
            continue;
        }
        detail::require(ds.horizon > 0, "dataset header must precede sample rows");
        std::istringstream ls(line);
        std::vector<double> row;
        row.reserve(2 * ds.horizon);
        double v;
        while (ls >> v) row.push_back(v);
        detail::require(row.size() == 2 * ds.horizon, "sample row has the wrong width");
        ds.prices.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(ds.horizon));
        ds.responses.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(ds.horizon),
                                  row.end());
    }
    ds.validate();
    return ds;
}

inline Dataset read_dataset(const std::string& path) {
    std::ifstream is(path);
    detail::require(is.good(), "cannot open dataset file: " + path);
    return read_dataset(is);
}

}  // namespace qcoord
