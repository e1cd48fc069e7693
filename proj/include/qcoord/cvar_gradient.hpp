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
#include <variant>
#include <vector>

#include "qcoord/cost.hpp"
#include "qcoord/estimators.hpp"
#include "qcoord/scenario.hpp"

namespace qcoord {

// Per-scenario network quantities for one price/response operating point,
// cached so the gradient assembly and the penalty estimators share them.
struct EvaluatedScenarios {
    std::size_t horizon = 0;
    std::vector<double> costs;   // C_s
    std::vector<double> probs;   // gamma_s
    std::vector<double> energy;  // energy component of C_s
    std::vector<double> voltage_penalty;
    std::vector<double> flow_penalty;
    double max_violation = 0.0;
    // volt[(s * T + t) * B + b]: voltage magnitude; flow[(s * T + t) * L + l].
    std::vector<double> volt;
    std::vector<double> flow;

    double voltage(std::size_t s, std::size_t t, std::size_t b, std::size_t n_buses) const {
        return volt[(s * horizon + t) * n_buses + b];
    }
    double line_flow(std::size_t s, std::size_t t, std::size_t l, std::size_t n_lines) const {
        return flow[(s * horizon + t) * n_lines + l];
    }

    double mean_cost() const {
        double acc = 0.0;
        for (std::size_t s = 0; s < costs.size(); ++s) acc += probs[s] * costs[s];
        return acc;
    }

    double mean_voltage_penalty() const {
        double acc = 0.0;
        for (std::size_t s = 0; s < costs.size(); ++s) acc += probs[s] * voltage_penalty[s];
        return acc;
    }
};

inline EvaluatedScenarios evaluate_scenarios(const NetworkCase& net, const Topology& topo,
                                             const ScenarioSet& scenarios,
                                             const std::vector<double>& ec_price,
                                             const std::vector<std::vector<double>>& ec_exchange,
                                             const CostConfig& config) {
    const std::size_t T = ec_price.size();
    config.validate(T);
    const std::size_t S = scenarios.size();
    const std::size_t B = net.n_buses();
    const std::size_t L = net.n_lines();
    EvaluatedScenarios ev;
    ev.horizon = T;
    ev.costs.resize(S);
    ev.probs.resize(S);
    ev.energy.resize(S);
    ev.voltage_penalty.resize(S);
    ev.flow_penalty.resize(S);
    ev.volt.resize(S * T * B);
    ev.flow.resize(S * T * L);
    std::vector<double> p_inj, q_inj;
    for (std::size_t s = 0; s < S; ++s) {
        const Scenario& sc = scenarios.scenarios[s];
        ev.probs[s] = sc.probability;
        double energy = 0.0, vpen = 0.0, fpen = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            build_injections(net, sc, ec_exchange, t, config.reactive_ratio, p_inj, q_inj);
            const OperatingPoint op =
                solve_lindistflow(net, topo, std::move(p_inj), std::move(q_inj));
            p_inj.clear();
            q_inj.clear();
            double revenue = 0.0;
            for (std::size_t e = 0; e < net.ecs.size(); ++e)
                revenue += ec_price[t] * ec_exchange[e][t];
            energy += config.dt_hours * (-revenue + config.dn_price[t] * op.exchange_dn);
            for (std::size_t b = 0; b < B; ++b) {
                const double v = std::sqrt(std::max(0.0, op.v_sq[b]));
                ev.volt[(s * T + t) * B + b] = v;
                const double over = positive_part(v - net.buses[b].v_max);
                const double under = positive_part(net.buses[b].v_min - v);
                vpen += over + under;
                ev.max_violation = std::max({ev.max_violation, over, under});
            }
            for (std::size_t l = 0; l < L; ++l) {
                ev.flow[(s * T + t) * L + l] = op.p_flow[l];
                const double over = positive_part(op.p_flow[l] - net.lines[l].p_max);
                const double under = positive_part(net.lines[l].p_min - op.p_flow[l]);
                fpen += over + under;
                ev.max_violation = std::max({ev.max_violation, over, under});
            }
        }
        ev.energy[s] = energy;
        ev.voltage_penalty[s] = config.dt_hours * config.beta1 * vpen;
        ev.flow_penalty[s] = config.dt_hours * config.beta2 * fpen;
        ev.costs[s] = ev.energy[s] + ev.voltage_penalty[s] + ev.flow_penalty[s];
    }
    return ev;
}

// Scenario-expectation of the chain-rule violation weights at one quantity:
//   over  = E[ 1(value > upper) * w(value) ],
//   under = E[ 1(value < lower) * w(value) ],
// with w = 1/(2 value) for voltages (the sqrt chain factor) and w = 1 for
// flows. The quantum backend bins the weighted indicator into f(i) on the
// value grid and estimates E[f] by amplitude estimation; the Monte Carlo
// backend averages scenarios directly, bypassing the binning.
struct PenaltyWeights {
    double over = 0.0;
    double under = 0.0;
    std::uint64_t queries = 0;
};

namespace detail {

inline double qae_weight_estimate(const GriddedDistribution& g,
                                  const std::vector<double>& f_values, const QaeChoice& choice,
                                  std::uint64_t& queries) {
    double maxf = 0.0;
    for (double f : f_values) maxf = std::max(maxf, f);
    if (maxf <= 0.0) return 0.0;
    std::vector<double> scaled(f_values.size());
    for (std::size_t i = 0; i < f_values.size(); ++i) scaled[i] = f_values[i] / maxf;
    const TargetFunction f(g.dist.n_qubits(), scaled);
    const RotationOracle oracle = build_oracle(g.dist, f, choice.circuit);
    const EstimateResult r = qae_estimate(oracle, choice.config);
    queries += r.oracle_queries;
    return r.value * maxf;
}

}  // namespace detail

inline PenaltyWeights estimate_penalty_weights(const std::vector<double>& values,
                                               const std::vector<double>& weights,
                                               double upper, double lower, bool sqrt_chain,
                                               const EstimatorChoice& estimator) {
    detail::require(!values.empty() && values.size() == weights.size(),
                    "values and weights must align");
    double total_w = 0.0;
    for (double w : weights) total_w += w;
    detail::require(total_w > 0.0, "weights must have positive mass");

    const auto chain = [&](double v) { return sqrt_chain ? 1.0 / (2.0 * v) : 1.0; };

    PenaltyWeights out;
    if (const auto* mc = std::get_if<McChoice>(&estimator)) {
        if (mc->samples == 0) {
            // Exhaustive weighted average.
            for (std::size_t s = 0; s < values.size(); ++s) {
                const double w = weights[s] / total_w;
                if (values[s] > upper) out.over += w * chain(values[s]);
                if (values[s] < lower) out.under += w * chain(values[s]);
            }
            out.queries = values.size();
            return out;
        }
        std::vector<double> cdf(values.size());
        double acc = 0.0;
        for (std::size_t s = 0; s < values.size(); ++s) {
            acc += weights[s];
            cdf[s] = acc;
        }
        Rng rng(mc->seed);
        for (std::uint64_t k = 0; k < mc->samples; ++k) {
            const double u = rng.uniform() * acc;
            const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            const std::size_t s =
                it == cdf.end() ? values.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
            if (values[s] > upper) out.over += chain(values[s]);
            if (values[s] < lower) out.under += chain(values[s]);
        }
        out.over /= static_cast<double>(mc->samples);
        out.under /= static_cast<double>(mc->samples);
        out.queries = mc->samples;
        return out;
    }

    const auto& qae = std::get<QaeChoice>(estimator);
    const GriddedDistribution g = bin_weighted_values(values, weights, qae.n_qubits);
    std::vector<double> f_over(g.grid.size()), f_under(g.grid.size());
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
        f_over[i] = g.grid[i] > upper ? chain(g.grid[i]) : 0.0;
        f_under[i] = g.grid[i] < lower ? chain(g.grid[i]) : 0.0;
    }
    out.over = detail::qae_weight_estimate(g, f_over, qae, out.queries);
    out.under = detail::qae_weight_estimate(g, f_under, qae, out.queries);
    return out;
}

// Spec-shaped single-term entry point: the scenario-expectation factor of one
// rectified penalty term at (bus-or-line, t). The analytic sensitivity chain
// (line impedances, surrogate Jacobian) is applied by cvar_gradient.
struct ViolationTarget {
    enum class Kind { BusVoltage, LineFlow };
    Kind kind = Kind::BusVoltage;
    std::size_t index = 0;
};

inline PenaltyWeights estimate_penalty_gradient(const NetworkCase& net, const Topology& topo,
                                                const ScenarioSet& scenarios,
                                                const std::vector<std::vector<double>>& ec_exchange,
                                                ViolationTarget target, std::size_t t,
                                                const EstimatorChoice& estimator,
                                                double reactive_ratio = 0.33) {
    std::vector<double> values(scenarios.size());
    std::vector<double> weights(scenarios.size());
    std::vector<double> p_inj, q_inj;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        build_injections(net, scenarios.scenarios[s], ec_exchange, t, reactive_ratio, p_inj,
                         q_inj);
        const OperatingPoint op = solve_lindistflow(net, topo, std::move(p_inj), std::move(q_inj));
        p_inj.clear();
        q_inj.clear();
        if (target.kind == ViolationTarget::Kind::BusVoltage)
            values[s] = std::sqrt(std::max(0.0, op.v_sq[target.index]));
        else
            values[s] = op.p_flow[target.index];
        weights[s] = scenarios.scenarios[s].probability;
    }
    const bool is_volt = target.kind == ViolationTarget::Kind::BusVoltage;
    const double upper = is_volt ? net.buses[target.index].v_max : net.lines[target.index].p_max;
    const double lower = is_volt ? net.buses[target.index].v_min : net.lines[target.index].p_min;
    return estimate_penalty_weights(values, weights, upper, lower, is_volt, estimator);
}

struct CvarGradient {
    std::vector<double> d_price;  // dC/dpi, one entry per step
    double d_var = 0.0;           // dC/dv
    std::uint64_t estimator_queries = 0;
};

// Assembles the risk-objective gradient: revenue and upstream-purchase terms
// analytically, rectified penalty terms through the configured expectation
// estimator, the CVaR tail by re-estimating over the tail scenario subset.
// The surrogate Jacobians map exchange sensitivities into price space.
inline CvarGradient cvar_gradient(const NetworkCase& net, const LinDistFlowSensitivity& sens,
                                  const EvaluatedScenarios& ev,
                                  const std::vector<double>& ec_price,
                                  const std::vector<std::vector<double>>& ec_exchange,
                                  const std::vector<std::vector<std::vector<double>>>& jacobians,
                                  double v_alpha, const CostConfig& config,
                                  const EstimatorChoice& estimator) {
    const std::size_t T = ec_price.size();
    const std::size_t E = net.ecs.size();
    const std::size_t B = net.n_buses();
    const std::size_t L = net.n_lines();
    const std::size_t S = ev.costs.size();
    detail::require(jacobians.size() == E, "one Jacobian per EC required");

    CvarGradient out;
    out.d_price.assign(T, 0.0);
    out.d_var = cvar_v_derivative(ev.costs, ev.probs, v_alpha, config.alpha, config.lambda);

    // Tail membership and mass.
    std::vector<std::size_t> tail;
    double tail_mass = 0.0;
    for (std::size_t s = 0; s < S; ++s)
        if (ev.costs[s] > v_alpha) {
            tail.push_back(s);
            tail_mass += ev.probs[s];
        }
    const double tail_scale = config.lambda / (1.0 - config.alpha);

    // d(exchange at e, time t) / d(price at u) premultiplied sums.
    // Energy terms are scenario-independent, so expectation and tail parts
    // share them with weights 1 and tail_scale * tail_mass.
    const double energy_weight = 1.0 + tail_scale * tail_mass;
    for (std::size_t u = 0; u < T; ++u) {
        double acc = 0.0;
        for (std::size_t e = 0; e < E; ++e) {
            acc -= ec_exchange[e][u];  // d(-pi_t P_t)/d pi_u, direct term
            for (std::size_t t = 0; t < T; ++t)
                acc += (config.dn_price[t] - ec_price[t]) * jacobians[e][t][u];
        }
        out.d_price[u] += config.dt_hours * energy_weight * acc;
    }

    // Penalty terms. Screening by scenario extremes keeps estimator calls to
    // the (bus/line, t) pairs that can actually violate.
    std::vector<double> values(S), weights(S);
    std::vector<double> tail_values, tail_weights;
    const auto add_penalty = [&](double beta, double over_minus_under_full,
                                 double over_minus_under_tail, std::size_t t,
                                 const auto& dquantity_dexchange) {
        const double factor =
            config.dt_hours * beta *
            (over_minus_under_full + tail_scale * tail_mass * over_minus_under_tail);
        if (factor == 0.0) return;
        for (std::size_t u = 0; u < T; ++u) {
            double acc = 0.0;
            for (std::size_t e = 0; e < E; ++e)
                acc += dquantity_dexchange(e) * jacobians[e][t][u];
            out.d_price[u] += factor * acc;
        }
    };

    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t b = 0; b < B; ++b) {
            double lo = 1e30, hi = -1e30;
            for (std::size_t s = 0; s < S; ++s) {
                const double v = ev.voltage(s, t, b, B);
                values[s] = v;
                weights[s] = ev.probs[s];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi <= net.buses[b].v_max && lo >= net.buses[b].v_min) continue;
            PenaltyWeights full = estimate_penalty_weights(
                values, weights, net.buses[b].v_max, net.buses[b].v_min, true, estimator);
            out.estimator_queries += full.queries;
            PenaltyWeights tail_w;
            if (!tail.empty()) {
                tail_values.clear();
                tail_weights.clear();
                for (const std::size_t s : tail) {
                    tail_values.push_back(ev.voltage(s, t, b, B));
                    tail_weights.push_back(ev.probs[s]);
                }
                tail_w = estimate_penalty_weights(tail_values, tail_weights,
                                                  net.buses[b].v_max, net.buses[b].v_min, true,
                                                  estimator);
                out.estimator_queries += tail_w.queries;
            }
            add_penalty(config.beta1, full.over - full.under, tail_w.over - tail_w.under, t,
                        [&](std::size_t e) {
                            return sens.dvsq_dexchange(b, net.ecs[e].first,
                                                       config.reactive_ratio);
                        });
        }
        for (std::size_t l = 0; l < L; ++l) {
            double lo = 1e30, hi = -1e30;
            for (std::size_t s = 0; s < S; ++s) {
                const double f = ev.line_flow(s, t, l, L);
                values[s] = f;
                weights[s] = ev.probs[s];
                lo = std::min(lo, f);
                hi = std::max(hi, f);
            }
            if (hi <= net.lines[l].p_max && lo >= net.lines[l].p_min) continue;
            PenaltyWeights full = estimate_penalty_weights(
                values, weights, net.lines[l].p_max, net.lines[l].p_min, false, estimator);
            out.estimator_queries += full.queries;
            PenaltyWeights tail_w;
            if (!tail.empty()) {
                tail_values.clear();
                tail_weights.clear();
                for (const std::size_t s : tail) {
                    tail_values.push_back(ev.line_flow(s, t, l, L));
                    tail_weights.push_back(ev.probs[s]);
                }
                tail_w = estimate_penalty_weights(tail_values, tail_weights,
                                                  net.lines[l].p_max, net.lines[l].p_min, false,
                                                  estimator);
                out.estimator_queries += tail_w.queries;
            }
            add_penalty(config.beta2, full.over - full.under, tail_w.over - tail_w.under, t,
                        [&](std::size_t e) {
                            return sens.dflow_dexchange(l, net.ecs[e].first);
                        });
        }
    }
    return out;
}

}  // namespace qcoord
