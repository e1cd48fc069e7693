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

#include "qcoord/state_prep.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qcoord/benchmark_target.hpp"

namespace {

using namespace qcoord;

TEST(PrepareUniform, SingleQubitHalves) {
    const Circuit c = prepare_uniform(1);
    const StateVector s = run_circuit(c, StateVector(1));
    EXPECT_NEAR(s.probability(0), 0.5, 1e-15);
    EXPECT_NEAR(s.probability(1), 0.5, 1e-15);
    EXPECT_THROW(prepare_uniform(0), std::invalid_argument);
}

TEST(PrepareUniform, ThreeQubitsAllEighth) {
    const Circuit c = prepare_uniform(3);
    EXPECT_EQ(c.depth(), 1u);
    const StateVector s = run_circuit(c, StateVector(3));
    for (std::uint64_t i = 0; i < 8; ++i) EXPECT_NEAR(s.probability(i), 0.125, 1e-12);
}

TEST(PrepareDistribution, PointMassGivesBasisState) {
    std::vector<double> masses(8, 0.0);
    masses[0] = 1.0;
    const DiscreteDistribution d(3, masses);
    const StateVector s = run_circuit(prepare_distribution(d), StateVector(3));
    EXPECT_NEAR(s.probability(0), 1.0, 1e-12);

    std::vector<double> m5(8, 0.0);
    m5[5] = 1.0;
    const StateVector s5 =
        run_circuit(prepare_distribution(DiscreteDistribution(3, m5)), StateVector(3));
    EXPECT_NEAR(s5.probability(5), 1.0, 1e-12);
}

TEST(PrepareDistribution, UniformMassesMatchHadamardPrep) {
    const DiscreteDistribution d(2, {0.25, 0.25, 0.25, 0.25});
    const StateVector a = run_circuit(prepare_distribution(d), StateVector(2));
    const StateVector b = run_circuit(prepare_uniform(2), StateVector(2));
    for (std::uint64_t i = 0; i < 4; ++i)
        EXPECT_NEAR(a.probability(i), b.probability(i), 1e-12);
}

TEST(PrepareDistribution, GaussianReadbackMatchesMasses) {
    const DiscreteDistribution d = discretized_gaussian_by_index(5, 16.0, 4.0);
    const StateVector s = run_circuit(prepare_distribution(d), StateVector(5));
    for (std::uint64_t i = 0; i < d.size(); ++i)
        EXPECT_NEAR(s.probability(i), d.mass(i), 1e-10);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(PrepareDistribution, RandomMassesReadback) {
    Rng rng(13);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> masses(16);
        double sum = 0.0;
        for (double& m : masses) {
            m = rng.uniform();
            sum += m;
        }
        for (double& m : masses) m /= sum;
        double drift = -1.0;
        for (double m : masses) drift += m;
        masses[0] -= drift;
        const DiscreteDistribution d(4, masses);
        const StateVector s = run_circuit(prepare_distribution(d), StateVector(4));
        for (std::uint64_t i = 0; i < 16; ++i)
            EXPECT_NEAR(s.probability(i), d.mass(i), 1e-10);
    }
}

TEST(Distribution, InvalidMassesRejected) {
    EXPECT_THROW(DiscreteDistribution(2, {0.5, 0.5, 0.1, -0.1}), std::invalid_argument);
    EXPECT_THROW(DiscreteDistribution(2, {0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(DiscreteDistribution(2, {1.0}), std::invalid_argument);
}

TEST(TargetFunction, RangeCheckedAtConstruction) {
    EXPECT_NO_THROW(TargetFunction(2, {0.0, 0.5, 1.0, 0.25}));
    EXPECT_THROW(TargetFunction(2, {0.0, 0.5, 1.5, 0.25}), std::invalid_argument);
    EXPECT_THROW(TargetFunction(2, {0.0, -0.1, 0.5, 0.25}), std::invalid_argument);
}

TEST(VoltageBenchmark, TruthIsStableAcrossFineGrids) {
    const VoltageBenchmark bench;
    const double t15 = [&] {
        const GriddedDistribution g = bench.distribution(15);
        return brute_force_expectation(g.dist, bench.target(15));
    }();
    const double t16 = bench.reference_truth();
    EXPECT_GT(t16, 0.01);
    EXPECT_NEAR(t15, t16, 1e-6 * t16);
}

}  // namespace
