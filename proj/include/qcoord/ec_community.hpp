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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcoord/dataset.hpp"
#include "qcoord/network.hpp"
#include "qcoord/price_projection.hpp"

namespace qcoord {

// Deterministic prosumer dispatch standing in for an EC's private optimizer:
// a battery arbitrages price spreads and a shiftable-load pool fills the
// cheapest steps. Simple enough that small cases admit brute-force oracles.
struct EcGroundTruth {
    EcType type = EcType::Commercial;
    std::vector<double> base_load;   // per-unit, one entry per step
    double battery_energy_cap = 0.5;  // per-unit-hours
    double battery_power_cap = 0.25;  // per-unit
    double battery_efficiency = 0.92;  // round-trip, applied on discharge
    double shiftable_energy = 1.0;   // per-unit-hours moved within the horizon
    double shiftable_step_cap = 0.2;  // per-unit
    double dt_hours = 0.25;

    std::size_t horizon() const { return base_load.size(); }

    void validate() const {
        detail::require(!base_load.empty(), "EC base load profile is empty");
        detail::require(battery_energy_cap >= 0.0 && battery_power_cap >= 0.0,
                        "battery caps must be nonnegative");
        detail::require(battery_efficiency > 0.0 && battery_efficiency <= 1.0,
                        "battery efficiency must lie in (0, 1]");
        detail::require(shiftable_energy >= 0.0 && shiftable_step_cap >= 0.0,
                        "shiftable-load parameters must be nonnegative");
        detail::require(dt_hours > 0.0, "dt must be positive");
        detail::require(shiftable_energy <=
                            shiftable_step_cap * dt_hours * static_cast<double>(horizon()) + 1e-12,
                        "shiftable pool cannot fit under its per-step cap");
    }

    // Representative communities; flexibility grows residential ->
    // commercial -> industrial. `scale` sets the peak base load in per-unit.
    static EcGroundTruth make(EcType type, std::size_t horizon, double dt_hours, double scale) {
        EcGroundTruth ec;
        ec.type = type;
        ec.dt_hours = dt_hours;
        ec.base_load.resize(horizon);
        for (std::size_t t = 0; t < horizon; ++t) {
            const double h = dt_hours * static_cast<double>(t);
            double shape = 0.0;
            switch (type) {
                case EcType::Residential:
                    shape = 0.45 + 0.15 * std::exp(-std::pow(h - 8.0, 2) / 6.0) +
                            0.55 * std::exp(-std::pow(h - 20.0, 2) / 8.0);
                    break;
                case EcType::Commercial:
                    shape = 0.35 + 0.65 * sigmoid_shape(h - 8.5) * sigmoid_shape(18.5 - h);
                    break;
                case EcType::Industrial:
                    shape = 0.80 + 0.12 * std::sin(2.0 * M_PI * h / 24.0 + 0.7);
                    break;
            }
            ec.base_load[t] = scale * shape;
        }
        const double day_hours = dt_hours * static_cast<double>(horizon);
        switch (type) {
            case EcType::Residential:
                ec.battery_energy_cap = 0.30 * scale;
                ec.battery_power_cap = 0.15 * scale;
                ec.battery_efficiency = 0.90;
                ec.shiftable_energy = 0.03 * scale * day_hours;
                ec.shiftable_step_cap = 0.12 * scale;
                break;
            case EcType::Commercial:
                ec.battery_energy_cap = 0.80 * scale;
                ec.battery_power_cap = 0.30 * scale;
                ec.battery_efficiency = 0.92;
                ec.shiftable_energy = 0.06 * scale * day_hours;
                ec.shiftable_step_cap = 0.25 * scale;
                break;
            case EcType::Industrial:
                ec.battery_energy_cap = 1.60 * scale;
                ec.battery_power_cap = 0.50 * scale;
                ec.battery_efficiency = 0.95;
                ec.shiftable_energy = 0.10 * scale * day_hours;
                ec.shiftable_step_cap = 0.45 * scale;
                break;
        }
        return ec;
    }

private:
    static double sigmoid_shape(double x) { return 1.0 / (1.0 + std::exp(-1.5 * x)); }
};

// Net exchange profile in response to a price series: base load plus the
// shiftable pool placed in the cheapest steps plus battery arbitrage over
// profitable charge/discharge pairs. Ties break toward the earlier step, so
// the dispatch is deterministic.
inline std::vector<double> ec_respond(const EcGroundTruth& ec,
                                      const std::vector<double>& prices) {
    ec.validate();
    const std::size_t T = ec.horizon();
    detail::require(prices.size() == T, "price series does not match the EC horizon");
    const double dt = ec.dt_hours;

    // Shiftable pool: fill the cheapest steps up to the per-step cap.
    std::vector<double> shift_power(T, 0.0);
    if (ec.shiftable_energy > 0.0 && ec.shiftable_step_cap > 0.0) {
        std::vector<std::size_t> order(T);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return prices[a] < prices[b]; });
        double remaining = ec.shiftable_energy;
        for (const std::size_t t : order) {
            if (remaining <= 0.0) break;
            const double take = std::min(remaining, ec.shiftable_step_cap * dt);
            shift_power[t] = take / dt;
            remaining -= take;
        }
    }

    // Battery: greedily commit the most profitable feasible charge/discharge
    // pairs (charge strictly before discharge; the store starts empty).
    std::vector<double> charge(T, 0.0), discharge(T, 0.0);  // grid-side energy per step
    if (ec.battery_energy_cap > 0.0 && ec.battery_power_cap > 0.0) {
        struct Pair {
            std::size_t c, d;
            double profit;
        };
        std::vector<Pair> pairs;
        for (std::size_t c = 0; c < T; ++c)
            for (std::size_t d = c + 1; d < T; ++d) {
                const double profit = prices[d] * ec.battery_efficiency - prices[c];
                if (profit > 1e-12) pairs.push_back({c, d, profit});
            }
        std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.profit != b.profit) return a.profit > b.profit;
            if (a.c != b.c) return a.c < b.c;
            return a.d < b.d;
        });
        std::vector<double> soc(T + 1, 0.0);  // stored energy after step t
        const double p_step = ec.battery_power_cap * dt;
        for (const Pair& pr : pairs) {
            double e = std::min(p_step - charge[pr.c],
                                (p_step - discharge[pr.d]) / ec.battery_efficiency);
            // Stored energy rises by e on [c, d); respect the energy cap.
            for (std::size_t t = pr.c; t < pr.d && e > 0.0; ++t)
                e = std::min(e, ec.battery_energy_cap - soc[t + 1]);
            if (e <= 1e-12) continue;
            charge[pr.c] += e;
            discharge[pr.d] += e * ec.battery_efficiency;
            for (std::size_t t = pr.c; t < pr.d; ++t) soc[t + 1] += e;
        }
    }

    std::vector<double> response(T);
    for (std::size_t t = 0; t < T; ++t)
        response[t] = ec.base_load[t] + shift_power[t] + (charge[t] - discharge[t]) / dt;
    return response;
}

// Smooth random price curves within bounds and mean-pinned, paired with the
// ground-truth response. Deterministic per seed.
inline Dataset generate_training_data(const EcGroundTruth& ec, std::size_t n_samples,
                                      const std::vector<double>& lower,
                                      const std::vector<double>& upper, double target_mean,
                                      std::uint64_t seed) {
    detail::require(n_samples >= 1, "need at least one sample");
    const std::size_t T = ec.horizon();
    detail::require(lower.size() == T && upper.size() == T, "price bounds length mismatch");

    Dataset ds;
    ds.ec_type = ec_type_code(ec.type);
    ds.horizon = T;
    Rng base(seed ^ 0xeccda7a5ULL);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng = base.fork(i);
        std::vector<double> raw(T, target_mean);
        const int modes = 4;
        for (int k = 1; k <= modes; ++k) {
            const double amp = rng.uniform(0.0, 0.8 / static_cast<double>(k)) *
                               (upper[0] - lower[0]);
            const double phase = rng.uniform(0.0, 2.0 * M_PI);
            for (std::size_t t = 0; t < T; ++t)
                raw[t] += amp * std::sin(2.0 * M_PI * k * static_cast<double>(t) /
                                             static_cast<double>(T) +
                                         phase);
        }
        std::vector<double> price = project_prices(std::move(raw), lower, upper, target_mean);
        std::vector<double> response = ec_respond(ec, price);
        ds.prices.push_back(std::move(price));
        ds.responses.push_back(std::move(response));
    }
    ds.fit_scaling();
    return ds;
}

}  // namespace qcoord
