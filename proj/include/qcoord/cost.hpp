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

#include "qcoord/scenario.hpp"

namespace qcoord {

inline double positive_part(double z) { return z > 0.0 ? z : 0.0; }

struct CostConfig {
    double alpha = 0.95;        // CVaR confidence level
    double lambda = 1.0;        // risk-aversion weight
    double beta1 = 100.0;       // voltage-violation penalty
    double beta2 = 100.0;       // flow-violation penalty
    double dt_hours = 0.25;
    double reactive_ratio = 0.33;
    std::vector<double> dn_price;  // upstream tariff, one entry per step

    void validate(std::size_t horizon) const {
        detail::require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
        detail::require(lambda >= 0.0 && beta1 >= 0.0 && beta2 >= 0.0,
                        "weights must be nonnegative");
        detail::require(dt_hours > 0.0, "dt must be positive");
        detail::require(dn_price.size() == horizon, "upstream price series length mismatch");
    }
};

// Cost components of one scenario, kept separate for reporting.
struct ScenarioCostBreakdown {
    double total = 0.0;
    double energy = 0.0;           // -revenue from ECs + upstream purchase
    double voltage_penalty = 0.0;  // beta1 * rectified voltage violations
    double flow_penalty = 0.0;     // beta2 * rectified flow violations
    double max_violation = 0.0;    // largest single voltage/flow violation
};

// C_s per the risk model: energy exchange cost plus rectified voltage and
// flow violations, integrated over the horizon. Voltage violations act on the
// magnitude sqrt(v_sq).
inline ScenarioCostBreakdown scenario_cost_breakdown(
    const NetworkCase& net, const Topology& topo, const Scenario& scenario,
    const std::vector<double>& ec_price, const std::vector<std::vector<double>>& ec_exchange,
    const CostConfig& config) {
    const std::size_t T = ec_price.size();
    config.validate(T);
    detail::require(ec_exchange.size() == net.ecs.size(),
                    "one exchange series per EC attachment required");
    for (const auto& series : ec_exchange)
        detail::require(series.size() == T, "exchange series length mismatch");
    for (const auto& series : scenario.p_load)
        detail::require(series.size() == T, "scenario horizon mismatch");

    ScenarioCostBreakdown out;
    std::vector<double> p_inj, q_inj;
    for (std::size_t t = 0; t < T; ++t) {
        build_injections(net, scenario, ec_exchange, t, config.reactive_ratio, p_inj, q_inj);
        const OperatingPoint op = solve_lindistflow(net, topo, std::move(p_inj), std::move(q_inj));
        p_inj.clear();
        q_inj.clear();

        double revenue = 0.0;
        for (std::size_t e = 0; e < net.ecs.size(); ++e)
            revenue += ec_price[t] * ec_exchange[e][t];
        const double upstream = config.dn_price[t] * op.exchange_dn;
        out.energy += config.dt_hours * (-revenue + upstream);

        double vpen = 0.0;
        for (std::size_t b = 0; b < net.n_buses(); ++b) {
            const double v = std::sqrt(std::max(0.0, op.v_sq[b]));
            const double over = positive_part(v - net.buses[b].v_max);
            const double under = positive_part(net.buses[b].v_min - v);
            vpen += over + under;
            out.max_violation = std::max({out.max_violation, over, under});
        }
        out.voltage_penalty += config.dt_hours * config.beta1 * vpen;

        double fpen = 0.0;
        for (std::size_t l = 0; l < net.n_lines(); ++l) {
            const double over = positive_part(op.p_flow[l] - net.lines[l].p_max);
            const double under = positive_part(net.lines[l].p_min - op.p_flow[l]);
            fpen += over + under;
            out.max_violation = std::max({out.max_violation, over, under});
        }
        out.flow_penalty += config.dt_hours * config.beta2 * fpen;
    }
    out.total = out.energy + out.voltage_penalty + out.flow_penalty;
    return out;
}

inline double scenario_cost(const NetworkCase& net, const Topology& topo,
                            const Scenario& scenario, const std::vector<double>& ec_price,
                            const std::vector<std::vector<double>>& ec_exchange,
                            const CostConfig& config) {
    return scenario_cost_breakdown(net, topo, scenario, ec_price, ec_exchange, config).total;
}

// C = sum_s gamma_s C_s + lambda (v + 1/(1-alpha) sum_s gamma_s [C_s - v]_+).
inline double cvar_objective(const std::vector<double>& costs,
                             const std::vector<double>& probabilities, double v_alpha,
                             double alpha, double lambda) {
    detail::require(costs.size() == probabilities.size() && !costs.empty(),
                    "costs and probabilities must align");
    detail::require(alpha < 1.0, "alpha = 1 makes the CVaR term undefined");
    double expectation = 0.0;
    double tail = 0.0;
    for (std::size_t s = 0; s < costs.size(); ++s) {
        expectation += probabilities[s] * costs[s];
        tail += probabilities[s] * positive_part(costs[s] - v_alpha);
    }
    return expectation + lambda * (v_alpha + tail / (1.0 - alpha));
}

// Smallest cost value whose exceedance probability is at most 1 - alpha; the
// alpha-quantile of the discrete cost distribution and the minimizer of the
// CVaR objective in v.
inline double optimal_var(const std::vector<double>& costs,
                          const std::vector<double>& probabilities, double alpha) {
    detail::require(!costs.empty() && costs.size() == probabilities.size(),
                    "costs and probabilities must align");
    std::vector<std::size_t> idx(costs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    double tail_above = 1.0;
    for (const std::size_t s : idx) {
        tail_above -= probabilities[s];
        if (tail_above <= 1.0 - alpha + 1e-12) return costs[s];
    }
    return costs[idx.back()];
}

// d C / d v at fixed costs: lambda (1 - (1/(1-alpha)) P(C_s > v)).
inline double cvar_v_derivative(const std::vector<double>& costs,
                                const std::vector<double>& probabilities, double v_alpha,
                                double alpha, double lambda) {
    double exceed = 0.0;
    for (std::size_t s = 0; s < costs.size(); ++s)
        if (costs[s] > v_alpha) exceed += probabilities[s];
    return lambda * (1.0 - exceed / (1.0 - alpha));
}

}  // namespace qcoord
