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

#include <cmath>
#include <vector>

#include "qcoord/distribution.hpp"
#include "qcoord/lindistflow.hpp"
#include "qcoord/network.hpp"

namespace qcoord {

// One stochastic realization of RES output and loads over the horizon.
struct Scenario {
    double probability = 1.0;
    std::vector<std::vector<double>> res_power;  // aligned with NetworkCase::res
    std::vector<std::vector<double>> p_load;     // per bus
    std::vector<std::vector<double>> q_load;     // per bus
};

struct ScenarioSet {
    std::size_t horizon = 0;
    std::vector<Scenario> scenarios;

    std::size_t size() const { return scenarios.size(); }

    void validate(const NetworkCase& net) const {
        detail::require(!scenarios.empty(), "scenario set is empty");
        double total = 0.0;
        for (const Scenario& s : scenarios) {
            total += s.probability;
            detail::require(s.res_power.size() == net.res.size(),
                            "scenario RES series count mismatch");
            detail::require(s.p_load.size() == net.n_buses() &&
                                s.q_load.size() == net.n_buses(),
                            "scenario load series count mismatch");
            for (const auto& series : s.res_power)
                detail::require(series.size() == horizon, "RES series length mismatch");
            for (const auto& series : s.p_load)
                detail::require(series.size() == horizon, "load series length mismatch");
        }
        detail::require(std::abs(total - 1.0) <= 1e-12,
                        "scenario probabilities must sum to 1");
    }
};

// Generation recipe: smooth nominal daily shapes scaled per attachment, with
// truncated-Gaussian (+-3 sigma) multiplicative factors per scenario.
struct ScenarioSpec {
    std::size_t horizon = 96;
    double dt_hours = 0.25;
    double load_scale = 1.15;         // nominal-load multiplier for the study case
    double wt_capacity = 1.2;         // per-unit
    double pv_capacity = 0.9;
    double res_sigma = 0.25;          // RES factor spread
    double load_sigma = 0.05;         // common load factor spread
    double uncertain_load_sigma = 0.20;

    void validate() const {
        detail::require(horizon >= 1, "scenario horizon must be >= 1");
        detail::require(dt_hours > 0.0, "dt must be positive");
        detail::require(res_sigma >= 0.0 && load_sigma >= 0.0 && uncertain_load_sigma >= 0.0,
                        "sigmas must be nonnegative");
    }

    double hour_of(std::size_t t) const { return dt_hours * static_cast<double>(t); }

    // Daily demand shape: overnight valley, morning shoulder, evening peak.
    double load_shape(double hour) const {
        const double morning = std::exp(-std::pow(hour - 9.5, 2) / 18.0);
        const double evening = std::exp(-std::pow(hour - 19.5, 2) / 10.0);
        return 0.45 + 0.25 * morning + 0.55 * evening;
    }

    double pv_shape(double hour) const {
        if (hour < 6.0 || hour > 20.0) return 0.0;
        const double s = std::sin(M_PI * (hour - 6.0) / 14.0);
        return std::pow(s, 1.5);
    }

    double wt_shape(double hour) const {
        return 0.55 + 0.25 * std::sin(2.0 * M_PI * hour / 24.0 + 1.1) +
               0.10 * std::sin(2.0 * M_PI * hour / 8.0);
    }
};

inline ScenarioSet generate_scenarios(const NetworkCase& net, std::size_t count,
                                      const ScenarioSpec& spec, std::uint64_t seed) {
    detail::require(count >= 1, "need at least one scenario");
    spec.validate();
    net.validate();
    const std::size_t T = spec.horizon;
    ScenarioSet set;
    set.horizon = T;
    set.scenarios.resize(count);
    Rng base(seed ^ 0x5ce4a6105ULL);
    for (std::size_t s = 0; s < count; ++s) {
        Rng rng = base.fork(s);
        Scenario& sc = set.scenarios[s];
        sc.probability = 1.0 / static_cast<double>(count);
        const double common_load = rng.truncated_normal(1.0, spec.load_sigma);
        sc.p_load.assign(net.n_buses(), std::vector<double>(T));
        sc.q_load.assign(net.n_buses(), std::vector<double>(T));
        std::vector<double> bus_factor(net.n_buses(), common_load);
        for (const std::size_t ub : net.uncertain_loads)
            bus_factor[ub] = rng.truncated_normal(1.0, spec.uncertain_load_sigma);
        for (std::size_t b = 0; b < net.n_buses(); ++b) {
            for (std::size_t t = 0; t < T; ++t) {
                const double shape = spec.load_shape(spec.hour_of(t));
                sc.p_load[b][t] = net.buses[b].p_load * spec.load_scale * shape * bus_factor[b];
                sc.q_load[b][t] = net.buses[b].q_load * spec.load_scale * shape * bus_factor[b];
            }
        }
        sc.res_power.assign(net.res.size(), std::vector<double>(T));
        for (std::size_t r = 0; r < net.res.size(); ++r) {
            const double factor = rng.truncated_normal(1.0, spec.res_sigma);
            const bool is_wt = net.res[r].second == "WT";
            const double cap = is_wt ? spec.wt_capacity : spec.pv_capacity;
            for (std::size_t t = 0; t < T; ++t) {
                const double h = spec.hour_of(t);
                const double shape = is_wt ? spec.wt_shape(h) : spec.pv_shape(h);
                sc.res_power[r][t] = std::max(0.0, cap * shape * factor);
            }
        }
    }
    return set;
}

// Consumption-positive injections for one scenario and time step:
//   p_j = -P_res + P_load + P_ec_exchange,   q_j = Q_load + ratio * P_ec.
// ec_exchange carries one series per EC attachment, aligned with
// NetworkCase::ecs.
inline void build_injections(const NetworkCase& net, const Scenario& sc,
                             const std::vector<std::vector<double>>& ec_exchange,
                             std::size_t t, double reactive_ratio, std::vector<double>& p_inj,
                             std::vector<double>& q_inj) {
    const std::size_t n = net.n_buses();
    p_inj.assign(n, 0.0);
    q_inj.assign(n, 0.0);
    for (std::size_t b = 0; b < n; ++b) {
        p_inj[b] = sc.p_load[b][t];
        q_inj[b] = sc.q_load[b][t];
    }
    for (std::size_t r = 0; r < net.res.size(); ++r)
        p_inj[net.res[r].first] -= sc.res_power[r][t];
    for (std::size_t e = 0; e < net.ecs.size(); ++e) {
        p_inj[net.ecs[e].first] += ec_exchange[e][t];
        q_inj[net.ecs[e].first] += reactive_ratio * ec_exchange[e][t];
    }
}

// Weighted samples binned into 2^n equal-width bins over their range; returns
// masses plus bin centers. A zero-width support degenerates to a point mass
// on the first bin.
inline GriddedDistribution bin_weighted_values(const std::vector<double>& values,
                                               const std::vector<double>& weights,
                                               std::size_t n_qubits) {
    detail::require(n_qubits >= 1 && n_qubits <= 16, "qubit count out of range");
    detail::require(!values.empty() && values.size() == weights.size(),
                    "values and weights must align");
    double total_w = 0.0;
    for (double w : weights) total_w += w;
    detail::require(total_w > 0.0, "weights must have positive total mass");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    const std::size_t bins = std::size_t{1} << n_qubits;
    std::vector<double> masses(bins, 0.0);
    std::vector<double> centers(bins);
    if (hi - lo <= 1e-15) {
        masses[0] = 1.0;
        std::fill(centers.begin(), centers.end(), lo);
        return GriddedDistribution{DiscreteDistribution(n_qubits, std::move(masses)),
                                   std::move(centers)};
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i)
        centers[i] = lo + (static_cast<double>(i) + 0.5) * width;
    for (std::size_t s = 0; s < values.size(); ++s) {
        auto idx = static_cast<std::size_t>((values[s] - lo) / width);
        if (idx >= bins) idx = bins - 1;
        masses[idx] += weights[s] / total_w;
    }
    double drift = -1.0;
    for (double m : masses) drift += m;
    masses[bins / 2] -= drift;
    return GriddedDistribution{DiscreteDistribution(n_qubits, std::move(masses)),
                               std::move(centers)};
}

// Voltage-magnitude histogram across scenarios at one (bus, t), ready for
// quantum state preparation.
inline GriddedDistribution voltage_distribution(const NetworkCase& net, const Topology& topo,
                                                const ScenarioSet& scenarios,
                                                const std::vector<std::vector<double>>& ec_exchange,
                                                std::size_t bus, std::size_t t,
                                                std::size_t n_qubits,
                                                double reactive_ratio = 0.33) {
    detail::require(bus < net.n_buses(), "bus index out of range");
    detail::require(t < scenarios.horizon, "time index out of range");
    std::vector<double> values(scenarios.size());
    std::vector<double> weights(scenarios.size());
    std::vector<double> p_inj, q_inj;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        build_injections(net, scenarios.scenarios[s], ec_exchange, t, reactive_ratio, p_inj,
                         q_inj);
        const OperatingPoint op = solve_lindistflow(net, topo, std::move(p_inj), std::move(q_inj));
        values[s] = std::sqrt(std::max(0.0, op.v_sq[bus]));
        weights[s] = scenarios.scenarios[s].probability;
        p_inj.clear();
        q_inj.clear();
    }
    return bin_weighted_values(values, weights, n_qubits);
}

}  // namespace qcoord
