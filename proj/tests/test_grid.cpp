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

#include <gtest/gtest.h>

#include <cmath>

#include "qcoord/cost.hpp"
#include "qcoord/lindistflow.hpp"
#include "qcoord/network.hpp"
#include "qcoord/scenario.hpp"

namespace {

using namespace qcoord;

const std::string kNetworkPath = std::string(QCOORD_SOURCE_DIR) + "/data/ieee33.net";

NetworkCase two_bus_case() {
    NetworkCase net;
    net.buses.resize(2);
    net.lines.push_back(Line{0, 1, 0.01, 0.02, 10.0, -10.0});
    net.slack = 0;
    return net;
}

TEST(Network, LoadsIeee33File) {
    const NetworkCase net = read_network(kNetworkPath);
    EXPECT_EQ(net.n_buses(), 33u);
    EXPECT_EQ(net.n_lines(), 32u);
    EXPECT_EQ(net.res.size(), 3u);
    EXPECT_EQ(net.uncertain_loads.size(), 3u);
    ASSERT_EQ(net.ecs.size(), 3u);
    EXPECT_EQ(net.ecs[0].first, 6u);  // bus 7, industrial
    EXPECT_EQ(net.ecs[0].second, EcType::Industrial);
    EXPECT_EQ(net.ecs[1].first, 14u);
    EXPECT_EQ(net.ecs[1].second, EcType::Commercial);
    EXPECT_EQ(net.ecs[2].first, 17u);
    EXPECT_EQ(net.ecs[2].second, EcType::Residential);
    EXPECT_NO_THROW(Topology::build(net));
}

TEST(Network, RejectsCyclesAndDisconnection) {
    NetworkCase net = two_bus_case();
    net.buses.resize(3);
    net.lines.push_back(Line{1, 2, 0.01, 0.01, 10, -10});
    EXPECT_NO_THROW(Topology::build(net));
    // Cycle: replace the second line with a duplicate of the first.
    net.lines[1] = Line{1, 0, 0.01, 0.01, 10, -10};
    EXPECT_THROW(Topology::build(net), std::invalid_argument);
    // Disconnected: a self-contained pair away from the slack.
    net.buses.resize(4);
    net.lines[1] = Line{2, 3, 0.01, 0.01, 10, -10};
    EXPECT_THROW(Topology::build(net), std::invalid_argument);
}

TEST(LinDistFlow, ZeroInjectionsGiveFlatProfile) {
    const NetworkCase net = read_network(kNetworkPath);
    const Topology topo = Topology::build(net);
    const OperatingPoint op = solve_lindistflow(net, topo, std::vector<double>(33, 0.0),
                                                std::vector<double>(33, 0.0));
    for (double f : op.p_flow) EXPECT_EQ(f, 0.0);
    for (double v : op.v_sq) EXPECT_EQ(v, 1.0);
    EXPECT_EQ(op.exchange_dn, 0.0);
}

TEST(LinDistFlow, TwoBusHandExample) {
    // p = 0.1, q = 0.05 at bus 2 over r = 0.01, x = 0.02:
    // P = 0.1, Q = 0.05, v_sq = 1 - 2(0.001 + 0.001) = 0.996.
    const NetworkCase net = two_bus_case();
    const Topology topo = Topology::build(net);
    const OperatingPoint op = solve_lindistflow(net, topo, {0.0, 0.1}, {0.0, 0.05});
    EXPECT_NEAR(op.p_flow[0], 0.1, 1e-15);
    EXPECT_NEAR(op.q_flow[0], 0.05, 1e-15);
    EXPECT_NEAR(op.v_sq[1], 0.996, 1e-15);
    EXPECT_NEAR(op.exchange_dn, 0.1, 1e-15);
}

TEST(LinDistFlow, NominalThirtyThreeBusBalance) {
    const NetworkCase net = read_network(kNetworkPath);
    const Topology topo = Topology::build(net);
    std::vector<double> p(33), q(33);
    for (std::size_t b = 0; b < 33; ++b) {
        p[b] = net.buses[b].p_load;
        q[b] = net.buses[b].q_load;
    }
    const OperatingPoint op = solve_lindistflow(net, topo, p, q);
    EXPECT_LE(max_balance_residual(net, topo, op), 1e-9);
    // The classic case dips toward ~0.91 p.u. at the feeder end under the
    // linearized model.
    const double v18 = std::sqrt(op.v_sq[17]);
    EXPECT_LT(v18, 0.95);
    EXPECT_GT(v18, 0.85);
}

TEST(LinDistFlow, SensitivitiesMatchSolverDifferences) {
    const NetworkCase net = read_network(kNetworkPath);
    const Topology topo = Topology::build(net);
    const LinDistFlowSensitivity sens = LinDistFlowSensitivity::build(net, topo);
    std::vector<double> p(33, 0.01), q(33, 0.005);
    const OperatingPoint base = solve_lindistflow(net, topo, p, q);
    const double ratio = 0.33;
    const double h = 1e-6;
    for (const std::size_t ec_bus : {6u, 14u, 17u}) {
        std::vector<double> p2 = p, q2 = q;
        p2[ec_bus] += h;
        q2[ec_bus] += ratio * h;
        const OperatingPoint bumped = solve_lindistflow(net, topo, p2, q2);
        for (const std::size_t b : {5u, 17u, 30u}) {
            const double fd = (bumped.v_sq[b] - base.v_sq[b]) / h;
            EXPECT_NEAR(fd, sens.dvsq_dexchange(b, ec_bus, ratio), 1e-6);
        }
        for (std::size_t l = 0; l < net.n_lines(); ++l) {
            const double fd = (bumped.p_flow[l] - base.p_flow[l]) / h;
            EXPECT_NEAR(fd, sens.dflow_dexchange(l, ec_bus), 1e-6);
        }
    }
}

CostConfig test_cost_config(std::size_t T) {
    CostConfig c;
    c.dn_price.assign(T, 0.1);
    return c;
}

TEST(ScenarioCost, ZeroEverythingCostsNothing) {
    const NetworkCase net = two_bus_case();
    const Topology topo = Topology::build(net);
    Scenario sc;
    sc.p_load.assign(2, std::vector<double>(4, 0.0));
    sc.q_load.assign(2, std::vector<double>(4, 0.0));
    const std::vector<double> price(4, 0.1);
    const std::vector<std::vector<double>> exchange;  // no ECs
    const double c =
        scenario_cost(net, topo, sc, price, exchange, test_cost_config(4));
    EXPECT_EQ(c, 0.0);
}

TEST(ScenarioCost, SingleOvervoltagePenaltyArithmetic) {
    // One step with a 0.02 p.u. overvoltage at beta1 = 100 and dt = 0.25
    // contributes exactly 0.5.
    NetworkCase net = two_bus_case();
    net.buses[1].v_max = 1.00;
    const Topology topo = Topology::build(net);
    // A negative injection (net generation) raises the voltage:
    // v_sq = 1 - 2 r p = 1 + |p| 2 r; choose p so sqrt(v_sq) = 1.02.
    const double target_vsq = 1.02 * 1.02;
    const double p = (1.0 - target_vsq) / (2.0 * net.lines[0].r);
    Scenario sc;
    sc.p_load.assign(2, std::vector<double>(1, 0.0));
    sc.q_load.assign(2, std::vector<double>(1, 0.0));
    sc.p_load[1][0] = p;
    CostConfig config = test_cost_config(1);
    config.dn_price.assign(1, 0.0);
    const std::vector<double> price(1, 0.0);
    const ScenarioCostBreakdown bd =
        scenario_cost_breakdown(net, topo, sc, price, {}, config);
    EXPECT_NEAR(bd.voltage_penalty, 100.0 * 0.02 * 0.25, 1e-9);
    EXPECT_NEAR(bd.total, bd.voltage_penalty + bd.energy, 1e-12);

    CostConfig doubled = config;
    doubled.beta1 = 200.0;
    const ScenarioCostBreakdown bd2 =
        scenario_cost_breakdown(net, topo, sc, price, {}, doubled);
    EXPECT_NEAR(bd2.voltage_penalty, 2.0 * bd.voltage_penalty, 1e-12);
}

TEST(Cvar, ClosedFormExamples) {
    // Identical costs with v at that cost: C = c + lambda c.
    const std::vector<double> equal(5, 2.0);
    const std::vector<double> probs(5, 0.2);
    for (const double lambda : {0.0, 1.0, 2.5})
        EXPECT_NEAR(cvar_objective(equal, probs, 2.0, 0.9, lambda), 2.0 + lambda * 2.0, 1e-12);

    // Four equiprobable costs (1,2,3,10), alpha = 0.75, v = 3:
    // C = 4 + lambda (3 + 4 * 0.25 * 7) = 4 + 10 lambda.
    const std::vector<double> costs = {1.0, 2.0, 3.0, 10.0};
    const std::vector<double> quarter(4, 0.25);
    for (const double lambda : {0.0, 1.0, 3.0})
        EXPECT_NEAR(cvar_objective(costs, quarter, 3.0, 0.75, lambda), 4.0 + 10.0 * lambda,
                    1e-12);
}

TEST(Cvar, OptimalVarIsOrderStatisticAndMinimizer) {
    const std::vector<double> same(7, 4.2);
    const std::vector<double> p7(7, 1.0 / 7.0);
    EXPECT_EQ(optimal_var(same, p7, 0.95), 4.2);

    Rng rng(41);
    std::vector<double> costs(100);
    for (double& c : costs) c = rng.uniform(0.0, 50.0);
    const std::vector<double> probs(100, 0.01);
    std::vector<double> sorted = costs;
    std::sort(sorted.begin(), sorted.end());
    const double v = optimal_var(costs, probs, 0.95);
    EXPECT_EQ(v, sorted[94]);  // 95th order statistic, 1-indexed

    // Dense scan over candidate v confirms the quantile minimizes the CVaR
    // objective.
    const double obj_at_v = cvar_objective(costs, probs, v, 0.95, 1.0);
    for (const double cand : sorted)
        EXPECT_GE(cvar_objective(costs, probs, cand, 0.95, 1.0), obj_at_v - 1e-9);
    // Stationarity of the v-derivative at the quantile (atoms allow exact 0
    // here because (1-alpha) S is an integer).
    EXPECT_NEAR(cvar_v_derivative(costs, probs, v, 0.95, 1.0), 0.0, 1e-6);
}

TEST(Scenarios, ZeroSigmaReproducesNominal) {
    const NetworkCase net = read_network(kNetworkPath);
    ScenarioSpec spec;
    spec.horizon = 8;
    spec.res_sigma = 0.0;
    spec.load_sigma = 0.0;
    spec.uncertain_load_sigma = 0.0;
    const ScenarioSet a = generate_scenarios(net, 3, spec, 1);
    const ScenarioSet b = generate_scenarios(net, 3, spec, 999);
    a.validate(net);
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t bbus = 0; bbus < 33; ++bbus)
            for (std::size_t t = 0; t < 8; ++t)
                EXPECT_EQ(a.scenarios[s].p_load[bbus][t], b.scenarios[s].p_load[bbus][t]);
}

TEST(Scenarios, WeightsAndFactorStatistics) {
    const NetworkCase net = read_network(kNetworkPath);
    ScenarioSpec spec;
    spec.horizon = 4;
    const std::size_t S = 256;
    const ScenarioSet set = generate_scenarios(net, S, spec, 7);
    set.validate(net);
    double total = 0.0;
    for (const Scenario& s : set.scenarios) total += s.probability;
    EXPECT_NEAR(total, 1.0, 1e-12);

    // Sample mean of the RES factor approaches 1 within 3 sigma / sqrt(S).
    const double nominal = [&] {
        ScenarioSpec zero = spec;
        zero.res_sigma = 0.0;
        zero.load_sigma = 0.0;
        zero.uncertain_load_sigma = 0.0;
        return generate_scenarios(net, 1, zero, 1).scenarios[0].res_power[0][1];
    }();
    double mean_factor = 0.0;
    for (const Scenario& s : set.scenarios) mean_factor += s.res_power[0][1] / nominal;
    mean_factor /= static_cast<double>(S);
    EXPECT_NEAR(mean_factor, 1.0, 3.0 * spec.res_sigma / std::sqrt(static_cast<double>(S)));
}

TEST(Scenarios, DeterministicPerSeed) {
    const NetworkCase net = read_network(kNetworkPath);
    ScenarioSpec spec;
    spec.horizon = 6;
    const ScenarioSet a = generate_scenarios(net, 16, spec, 5);
    const ScenarioSet b = generate_scenarios(net, 16, spec, 5);
    for (std::size_t s = 0; s < 16; ++s)
        EXPECT_EQ(a.scenarios[s].res_power[0], b.scenarios[s].res_power[0]);
}

TEST(VoltageDistribution, PointMassAndMassConservation) {
    const NetworkCase net = read_network(kNetworkPath);
    const Topology topo = Topology::build(net);
    const std::vector<std::vector<double>> no_ec(net.ecs.size(),
                                                 std::vector<double>(4, 0.0));
    ScenarioSpec spec;
    spec.horizon = 4;
    spec.res_sigma = 0.0;
    spec.load_sigma = 0.0;
    spec.uncertain_load_sigma = 0.0;
    const ScenarioSet identical = generate_scenarios(net, 8, spec, 2);
    const GriddedDistribution point =
        voltage_distribution(net, topo, identical, no_ec, 17, 1, 4);
    EXPECT_NEAR(point.dist.mass(0), 1.0, 1e-12);

    ScenarioSpec noisy = spec;
    noisy.res_sigma = 0.3;
    noisy.uncertain_load_sigma = 0.2;
    noisy.load_sigma = 0.05;
    const ScenarioSet spread = generate_scenarios(net, 64, noisy, 3);
    const GriddedDistribution g = voltage_distribution(net, topo, spread, no_ec, 17, 1, 5);
    double total = 0.0;
    for (double m : g.dist.masses()) total += m;
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(VoltageDistribution, BinnedExpectationWithinLipschitzBound) {
    // For the 1-Lipschitz rectifier [v - vbar]_+, the binned expectation
    // differs from the direct scenario average by at most half a bin width.
    const NetworkCase net = read_network(kNetworkPath);
    const Topology topo = Topology::build(net);
    ScenarioSpec spec;
    spec.horizon = 4;
    const std::size_t S = 128;
    const ScenarioSet set = generate_scenarios(net, S, spec, 11);
    const std::vector<std::vector<double>> no_ec(net.ecs.size(),
                                                 std::vector<double>(4, 0.0));
    const std::size_t bus = 17, t = 2;
    std::vector<double> volts;
    std::vector<double> p_inj, q_inj;
    for (const Scenario& sc : set.scenarios) {
        build_injections(net, sc, no_ec, t, 0.33, p_inj, q_inj);
        const OperatingPoint op = solve_lindistflow(net, topo, p_inj, q_inj);
        volts.push_back(std::sqrt(op.v_sq[bus]));
    }
    const double vbar =
        std::accumulate(volts.begin(), volts.end(), 0.0) / static_cast<double>(S);
    double direct = 0.0;
    for (double v : volts) direct += positive_part(v - vbar) / static_cast<double>(S);

    const std::size_t n = 6;
    const GriddedDistribution g = voltage_distribution(net, topo, set, no_ec, bus, t, n);
    double binned = 0.0;
    for (std::size_t i = 0; i < g.grid.size(); ++i)
        binned += g.dist.mass(i) * positive_part(g.grid[i] - vbar);
    const double bin_width = g.grid[1] - g.grid[0];
    EXPECT_NEAR(binned, direct, 0.5 * bin_width + 1e-12);
}

}  // namespace
