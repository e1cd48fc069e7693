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

#include "qcoord/amplitude_estimation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qcoord/benchmark_target.hpp"
#include "qcoord/estimators.hpp"
#include "qcoord/grover.hpp"
#include "qcoord/monte_carlo.hpp"
#include "qcoord/state_prep.hpp"

namespace {

using namespace qcoord;

// Single-qubit amplitude loader: A|0>|0> with P(ancilla = 1) = a, as the
// minimal Grover test bed.
Circuit amplitude_loader(double a) {
    Circuit c(2);
    c.ry(1, 2.0 * std::asin(std::sqrt(a)));
    return c;
}

TEST(Grover, HalfAmplitudeFixedPoint) {
    // a = 0.5 -> theta = pi/4; P(1) after Q^0 A stays 0.5.
    const Circuit a = amplitude_loader(0.5);
    const StateVector s = run_circuit(a, StateVector(2));
    EXPECT_NEAR(probability_of(s, 1, 1), 0.5, 1e-12);
}

TEST(Grover, TrigIdentityAtPowerOne) {
    // a = sin^2(pi/12), k = 1 -> P(1) = sin^2(3 pi/12) = 0.5.
    const double a = std::pow(std::sin(M_PI / 12.0), 2);
    const Circuit ac = amplitude_loader(a);
    const Circuit q = build_grover(ac, 1);
    StateVector s = run_circuit(ac, StateVector(2));
    run_in_place(q, s);
    EXPECT_NEAR(probability_of(s, 1, 1), 0.5, 1e-10);
}

TEST(Grover, PowerIdentityAcrossAmplitudes) {
    for (const double a : {0.05, 0.1, 0.25, 0.5}) {
        const double theta = std::asin(std::sqrt(a));
        const Circuit ac = amplitude_loader(a);
        const Circuit q = build_grover(ac, 1);
        StateVector s = run_circuit(ac, StateVector(2));
        for (std::uint32_t k = 0; k <= 8; ++k) {
            const double expected = std::pow(std::sin((2.0 * k + 1.0) * theta), 2);
            EXPECT_NEAR(probability_of(s, 1, 1), expected, 1e-9)
                << "a=" << a << " k=" << k;
            run_in_place(q, s);
        }
    }
}

TEST(Grover, AmplificationNearOptimalPower) {
    for (const double a : {0.01, 0.05, 0.1, 0.25}) {
        const double theta = std::asin(std::sqrt(a));
        const auto k = static_cast<std::uint32_t>(std::floor(M_PI / (4.0 * theta)));
        const Circuit ac = amplitude_loader(a);
        const Circuit q = build_grover(ac, 1);
        StateVector s = run_circuit(ac, StateVector(2));
        for (std::uint32_t i = 0; i < k; ++i) run_in_place(q, s);
        EXPECT_GE(probability_of(s, 1, 1), 0.9) << "a=" << a;
    }
}

TEST(Grover, IdentityHoldsOnMultiQubitOracle) {
    // Same identity through a full circuit-2 oracle on a loaded distribution.
    const DiscreteDistribution d = discretized_gaussian_by_index(3, 4.0, 1.5);
    Rng rng(31);
    std::vector<double> values(8);
    for (double& v : values) v = rng.uniform() * 0.6;
    const TargetFunction f(3, values);
    const double a = brute_force_expectation(d, f);
    const double theta = std::asin(std::sqrt(a));

    const RotationOracle oracle = build_circuit2(prepare_distribution(d), f);
    const std::vector<std::uint32_t> powers = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> probs =
        grover_power_probabilities(oracle.full, oracle.ancilla, powers);
    for (std::size_t j = 0; j < powers.size(); ++j) {
        const double expected = std::pow(std::sin((2.0 * powers[j] + 1.0) * theta), 2);
        EXPECT_NEAR(probs[j], expected, 1e-9) << "k=" << powers[j];
    }
}

TEST(Mlqae, ZeroFunctionEstimatesZero) {
    const TargetFunction f(2, std::vector<double>(4, 0.0));
    const RotationOracle oracle = build_circuit2(prepare_uniform(2), f);
    QaeConfig config;
    config.seed = 1;
    const EstimateResult r = mlqae_estimate(oracle, config);
    EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(Mlqae, UniformRampHitsHalf) {
    // f(i) = i/3 on the uniform 2-qubit distribution; truth = 0.5.
    std::vector<double> values = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    const TargetFunction f(2, values);
    const DiscreteDistribution uniform(2, std::vector<double>(4, 0.25));
    const double truth = brute_force_expectation(uniform, f);
    EXPECT_NEAR(truth, 0.5, 1e-15);

    const RotationOracle oracle = build_circuit2(prepare_uniform(2), f);
    QaeConfig config;
    config.seed = 3;
    const EstimateResult r = mlqae_estimate(oracle, config, truth);
    EXPECT_NEAR(r.value, 0.5, 0.01);
    ASSERT_TRUE(r.relative_error_pct.has_value());
    EXPECT_LE(*r.relative_error_pct, 2.0);
}

TEST(Mlqae, QueryAccountingIsExact) {
    const TargetFunction f(2, {0.1, 0.2, 0.3, 0.4});
    const RotationOracle oracle = build_circuit2(prepare_uniform(2), f);
    QaeConfig config;
    config.grover_powers = {0, 1, 2, 4};
    config.shots_per_power = 50;
    const EstimateResult r = mlqae_estimate(oracle, config);
    EXPECT_EQ(r.oracle_queries, 50u * (1 + 3 + 5 + 9));
    EXPECT_GE(r.oracle_queries, 50u);
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, 1.0);
}

TEST(Mlqae, ExactCountsConvergeToTruthWithinGridBound) {
    // Consistency at large shot count: error <= 3x the Cramer-Rao-style
    // bound. Fisher information per power is 4 * shots * (2k+1)^2.
    const VoltageBenchmark bench;
    const std::size_t n = 5;
    const GriddedDistribution g = bench.distribution(n);
    const TargetFunction f = bench.target(n);
    const double a = brute_force_expectation(g.dist, f);
    const RotationOracle oracle = build_circuit2(prepare_distribution(g.dist), f);

    QaeConfig config;
    config.shots_per_power = 10000;
    config.seed = 17;
    const EstimateResult r = mlqae_estimate(oracle, config);

    double fisher = 0.0;
    for (const std::uint32_t k : config.grover_powers)
        fisher += 4.0 * config.shots_per_power * std::pow(2.0 * k + 1.0, 2);
    const double theta = std::asin(std::sqrt(a));
    const double sigma_a = std::abs(std::sin(2.0 * theta)) / std::sqrt(fisher);
    const double grid_step = (M_PI / 2.0) / 10000.0 * std::abs(std::sin(2.0 * theta));
    EXPECT_LE(std::abs(r.value - a), 3.0 * (sigma_a + grid_step));
}

TEST(Mlqae, RejectsBadSchedules) {
    const TargetFunction f(2, {0.1, 0.2, 0.3, 0.4});
    const RotationOracle oracle = build_circuit2(prepare_uniform(2), f);
    QaeConfig config;
    config.grover_powers = {};
    EXPECT_THROW(mlqae_estimate(oracle, config), std::invalid_argument);
    config.grover_powers = {0, 2, 1};
    EXPECT_THROW(mlqae_estimate(oracle, config), std::invalid_argument);
}

TEST(Canonical, ZeroAmplitudeReadsZero) {
    const Circuit a = amplitude_loader(0.0);
    QaeConfig config;
    config.method = QaeMethod::Canonical;
    config.phase_qubits = 3;
    const EstimateResult r = canonical_qae_estimate(a, 1, config);
    EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(Canonical, OnGridAmplitudeIsExact) {
    // a = 0.5 -> theta = pi/4 sits on the m = 3 grid exactly.
    const Circuit a = amplitude_loader(0.5);
    QaeConfig config;
    config.method = QaeMethod::Canonical;
    config.phase_qubits = 3;
    const EstimateResult r = canonical_qae_estimate(a, 1, config);
    EXPECT_NEAR(r.value, 0.5, 1e-12);
}

TEST(Canonical, OffGridErrorWithinPhaseBound) {
    // |a_hat - a| <= pi/2^m + O(2^-2m), checked exhaustively at small m.
    for (const std::uint32_t m : {4u, 5u, 6u}) {
        for (const double a : {0.07, 0.13, 0.21, 0.33, 0.48, 0.61, 0.84}) {
            const Circuit ac = amplitude_loader(a);
            QaeConfig config;
            config.method = QaeMethod::Canonical;
            config.phase_qubits = m;
            const EstimateResult r = canonical_qae_estimate(ac, 1, config);
            const double bound = M_PI / std::pow(2.0, m) + std::pow(M_PI / std::pow(2.0, m), 2);
            EXPECT_LE(std::abs(r.value - a), bound) << "m=" << m << " a=" << a;
        }
    }
}

TEST(Canonical, QubitBudgetEnforced) {
    const Circuit a = amplitude_loader(0.3);
    QaeConfig config;
    config.method = QaeMethod::Canonical;
    config.phase_qubits = 27;
    EXPECT_THROW(canonical_qae_estimate(a, 1, config), std::invalid_argument);
}

TEST(MonteCarlo, PointMassIsExact) {
    std::vector<double> masses(8, 0.0);
    masses[5] = 1.0;
    const DiscreteDistribution d(3, masses);
    const TargetFunction f(3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.625, 0.7, 0.8});
    const EstimateResult r = mc_estimate(d, f, 37, 4);
    EXPECT_DOUBLE_EQ(r.value, 0.625);
    EXPECT_EQ(r.oracle_queries, 37u);
    EXPECT_THROW(mc_estimate(d, f, 0, 4), std::invalid_argument);
}

TEST(MonteCarlo, ErrorShrinksWithSamples) {
    const VoltageBenchmark bench;
    const std::size_t n = 10;
    const GriddedDistribution g = bench.distribution(n);
    const TargetFunction f = bench.target(n);
    const double truth = brute_force_expectation(g.dist, f);
    double err_small = 0.0, err_large = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        err_small += std::abs(mc_estimate(g.dist, f, 100, seed, truth).value - truth);
        err_large += std::abs(mc_estimate(g.dist, f, 100000, seed, truth).value - truth);
    }
    EXPECT_LT(err_large, err_small);
}

TEST(EstimateExpectation, BackendsAgreeWithBruteForce) {
    const VoltageBenchmark bench;
    const std::size_t n = 5;
    const GriddedDistribution g = bench.distribution(n);
    const TargetFunction f = bench.target(n);
    const double truth = brute_force_expectation(g.dist, f);

    const EstimateResult mc = estimate_expectation(g.dist, f, McChoice{200000, 7}, truth);
    EXPECT_NEAR(mc.value, truth, 0.01 * std::max(truth, 0.05));

    QaeChoice qae;
    qae.circuit = 2;
    qae.n_qubits = n;
    qae.config.exact_expected_counts = true;
    const EstimateResult q2 = estimate_expectation(g.dist, f, qae, truth);
    EXPECT_NEAR(q2.value, truth, 1e-6);

    // Constant f: every backend is exact up to sampling noise.
    const TargetFunction fc(n, std::vector<double>(g.dist.size(), 0.42));
    const EstimateResult mcc = estimate_expectation(g.dist, fc, McChoice{1000, 3}, 0.42);
    EXPECT_NEAR(mcc.value, 0.42, 1e-12);
}

TEST(EstimateExpectation, Circuit1BiasExceedsCircuit2) {
    const VoltageBenchmark bench;
    const std::size_t n = 5;
    const GriddedDistribution g = bench.distribution(n);
    const TargetFunction f = bench.target(n);
    const double truth = bench.reference_truth();

    QaeChoice qae1{1, n, {}};
    qae1.config.exact_expected_counts = true;
    QaeChoice qae2{2, n, {}};
    qae2.config.exact_expected_counts = true;
    const EstimateResult r1 = estimate_expectation(g.dist, f, qae1, truth);
    const EstimateResult r2 = estimate_expectation(g.dist, f, qae2, truth);
    ASSERT_TRUE(r1.relative_error_pct && r2.relative_error_pct);
    EXPECT_GT(*r1.relative_error_pct, *r2.relative_error_pct);
}

}  // namespace
