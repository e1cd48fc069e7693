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

#include <chrono>
#include <memory>
#include <vector>

#include "qcoord/cvar_gradient.hpp"
#include "qcoord/ec_community.hpp"
#include "qcoord/price_projection.hpp"
#include "qcoord/qmodel.hpp"

namespace qcoord {

// Price-to-response mapping plugged into the coordination loop: either a
// trained surrogate or (for testing and data generation) the ground-truth
// dispatch itself.
class PriceResponder {
public:
    virtual ~PriceResponder() = default;
    virtual std::vector<double> respond(const std::vector<double>& price) = 0;
};

class SurrogateResponder final : public PriceResponder {
public:
    explicit SurrogateResponder(QTcnLstmModel model)
        : model_(std::move(model)), eval_(model_) {}

    std::vector<double> respond(const std::vector<double>& price) override {
        return eval_.forward(price);
    }

    const QTcnLstmModel& model() const { return model_; }

private:
    QTcnLstmModel model_;
    ModelEvaluator eval_;
};

class GroundTruthResponder final : public PriceResponder {
public:
    explicit GroundTruthResponder(EcGroundTruth truth) : truth_(std::move(truth)) {}

    std::vector<double> respond(const std::vector<double>& price) override {
        return ec_respond(truth_, price);
    }

private:
    EcGroundTruth truth_;
};

// Central finite shifts of the responder output with respect to each price
// step, on the normalized price scale.
inline std::vector<std::vector<double>> response_jacobian(PriceResponder& responder,
                                                          const std::vector<double>& price,
                                                          const std::vector<double>& lower,
                                                          const std::vector<double>& upper,
                                                          double shift = 1e-3) {
    const std::size_t T = price.size();
    std::vector<std::vector<double>> jac(T, std::vector<double>(T, 0.0));
    std::vector<double> bumped = price;
    for (std::size_t u = 0; u < T; ++u) {
        const double h = shift * (upper[u] - lower[u]);
        bumped[u] = price[u] + h;
        const std::vector<double> plus = responder.respond(bumped);
        bumped[u] = price[u] - h;
        const std::vector<double> minus = responder.respond(bumped);
        bumped[u] = price[u];
        for (std::size_t t = 0; t < T; ++t) jac[t][u] = (plus[t] - minus[t]) / (2.0 * h);
    }
    return jac;
}

struct CoordinationConfig {
    CostConfig cost;
    std::vector<double> price_lower;
    std::vector<double> price_upper;
    double price_target_mean = 0.0;
    double eta = 0.05;  // step size on normalized prices
    std::size_t max_iters = 40;
    double grad_tol = 1e-3;
    double min_eta = 1e-5;
    double jacobian_shift = 1e-3;
    EstimatorChoice estimator = McChoice{0, 0};  // exhaustive scenario average

    void validate(std::size_t horizon) const {
        cost.validate(horizon);
        detail::require(price_lower.size() == horizon && price_upper.size() == horizon,
                        "price bound series must match the horizon");
        detail::require(eta > 0.0 && max_iters >= 1, "bad optimizer settings");
    }
};

struct IterationRecord {
    std::size_t iter = 0;
    double objective = 0.0;
    double expectation_term = 0.0;
    double cvar_term = 0.0;
    double v_alpha = 0.0;
    double max_violation = 0.0;
    double grad_norm = 0.0;
    std::uint64_t estimator_queries = 0;
    double wall_time_s = 0.0;  // in-memory only; output files stay reproducible
};

struct CoordinationResult {
    std::vector<double> prices;
    double v_alpha = 0.0;
    std::vector<IterationRecord> log;
    std::vector<std::vector<double>> responses;      // per EC
    double final_objective = 0.0;
    double mean_voltage_penalty = 0.0;
    bool converged = false;
};

// Objective and bookkeeping for one candidate price vector.
namespace detail {

struct LoopPoint {
    std::vector<std::vector<double>> responses;
    EvaluatedScenarios ev;
    double v_alpha = 0.0;
    double objective = 0.0;
    double expectation = 0.0;
};

inline LoopPoint evaluate_point(const NetworkCase& net, const Topology& topo,
                                const ScenarioSet& scenarios,
                                std::vector<std::unique_ptr<PriceResponder>>& responders,
                                const std::vector<double>& price,
                                const CoordinationConfig& config) {
    LoopPoint pt;
    pt.responses.reserve(responders.size());
    for (auto& r : responders) pt.responses.push_back(r->respond(price));
    pt.ev = evaluate_scenarios(net, topo, scenarios, price, pt.responses, config.cost);
    pt.v_alpha = optimal_var(pt.ev.costs, pt.ev.probs, config.cost.alpha);
    pt.objective = cvar_objective(pt.ev.costs, pt.ev.probs, pt.v_alpha, config.cost.alpha,
                                  config.cost.lambda);
    pt.expectation = pt.ev.mean_cost();
    return pt;
}

}  // namespace detail

// Projected gradient descent on the incentive price: evaluate the scenario
// set, refresh v at the cost quantile, assemble the gradient, step in
// normalized price coordinates, project back onto bounds + mean, halving the
// step on objective increases.
inline CoordinationResult run_coordination(const NetworkCase& net, const Topology& topo,
                                           const ScenarioSet& scenarios,
                                           std::vector<std::unique_ptr<PriceResponder>>& responders,
                                           std::vector<double> initial_price,
                                           const CoordinationConfig& config) {
    const std::size_t T = scenarios.horizon;
    config.validate(T);
    detail::require(responders.size() == net.ecs.size(),
                    "one responder per EC attachment required");
    const LinDistFlowSensitivity sens = LinDistFlowSensitivity::build(net, topo);

    std::vector<double> price = project_prices(std::move(initial_price), config.price_lower,
                                               config.price_upper, config.price_target_mean);
    double eta = config.eta;
    CoordinationResult result;
    const auto t_start = std::chrono::steady_clock::now();

    detail::LoopPoint pt =
        detail::evaluate_point(net, topo, scenarios, responders, price, config);
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        if (!std::isfinite(pt.objective))
            throw std::runtime_error("coordination diverged: non-finite objective at iteration " +
                                     std::to_string(iter));

        std::vector<std::vector<std::vector<double>>> jacobians;
        jacobians.reserve(responders.size());
        for (auto& r : responders)
            jacobians.push_back(response_jacobian(*r, price, config.price_lower,
                                                  config.price_upper, config.jacobian_shift));

        const CvarGradient grad =
            cvar_gradient(net, sens, pt.ev, price, pt.responses, jacobians, pt.v_alpha,
                          config.cost, config.estimator);

        double gnorm = 0.0;
        for (double g : grad.d_price) gnorm += g * g;
        gnorm = std::sqrt(gnorm);

        IterationRecord rec;
        rec.iter = iter;
        rec.objective = pt.objective;
        rec.expectation_term = pt.expectation;
        rec.cvar_term = pt.objective - pt.expectation;
        rec.v_alpha = pt.v_alpha;
        rec.max_violation = pt.ev.max_violation;
        rec.grad_norm = gnorm;
        rec.estimator_queries = grad.estimator_queries;
        rec.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        result.log.push_back(rec);

        if (gnorm < config.grad_tol) {
            result.converged = true;
            break;
        }

        // Step in normalized coordinates z = (pi - lo)/range, halving until
        // the objective stops increasing.
        bool stepped = false;
        while (eta >= config.min_eta) {
            std::vector<double> candidate(T);
            for (std::size_t u = 0; u < T; ++u) {
                const double range = config.price_upper[u] - config.price_lower[u];
                candidate[u] = price[u] - eta * range * range * grad.d_price[u];
            }
            candidate = project_prices(std::move(candidate), config.price_lower,
                                       config.price_upper, config.price_target_mean);
            detail::LoopPoint next =
                detail::evaluate_point(net, topo, scenarios, responders, candidate, config);
            if (next.objective <= pt.objective + 1e-12) {
                price = std::move(candidate);
                pt = std::move(next);
                stepped = true;
                break;
            }
            eta *= 0.5;
        }
        if (!stepped) {
            result.converged = true;
            break;
        }
    }

    result.prices = price;
    result.v_alpha = pt.v_alpha;
    result.responses = pt.responses;
    result.final_objective = pt.objective;
    result.mean_voltage_penalty = pt.ev.mean_voltage_penalty();
    return result;
}

}  // namespace qcoord
