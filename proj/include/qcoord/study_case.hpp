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

#include <string>

#include "qcoord/coordination.hpp"
#include "qcoord/ec_community.hpp"
#include "qcoord/scenario.hpp"
#include "qcoord/text_io.hpp"

namespace qcoord {

// Default desk-scale study: the 33-bus feeder, three communities at buses
// 7/15/18, quarter-hour day-ahead horizon, and the two-tier upstream tariff.
// Both the CLI and the verification suites read their defaults from here so
// every entry point exercises the same case.
struct StudyCase {
    std::size_t horizon = 96;
    double dt_hours = 0.25;
    double price_floor = 0.05;
    double price_cap = 0.20;
    double price_target_mean = 0.115;
    double ec_scale_residential = 0.25;
    double ec_scale_commercial = 0.35;
    double ec_scale_industrial = 0.50;
    std::size_t scenario_count = 256;

    std::vector<double> lower_bounds() const { return std::vector<double>(horizon, price_floor); }
    std::vector<double> upper_bounds() const { return std::vector<double>(horizon, price_cap); }

    EcGroundTruth ec_truth(EcType type) const {
        switch (type) {
            case EcType::Residential:
                return EcGroundTruth::make(type, horizon, dt_hours, ec_scale_residential);
            case EcType::Commercial:
                return EcGroundTruth::make(type, horizon, dt_hours, ec_scale_commercial);
            case EcType::Industrial:
                return EcGroundTruth::make(type, horizon, dt_hours, ec_scale_industrial);
        }
        throw std::logic_error("unknown EC type");
    }

    ScenarioSpec scenario_spec() const {
        ScenarioSpec spec;
        spec.horizon = horizon;
        spec.dt_hours = dt_hours;
        return spec;
    }

    CostConfig cost_config(const std::string& dn_price_path) const {
        CostConfig cost;
        cost.dt_hours = dt_hours;
        cost.dn_price = read_price_series(dn_price_path);
        detail::require(cost.dn_price.size() == horizon,
                        "upstream price series length does not match the horizon");
        return cost;
    }

    CoordinationConfig coordination_config(const std::string& dn_price_path) const {
        CoordinationConfig config;
        config.cost = cost_config(dn_price_path);
        config.price_lower = lower_bounds();
        config.price_upper = upper_bounds();
        config.price_target_mean = price_target_mean;
        return config;
    }
};

}  // namespace qcoord
