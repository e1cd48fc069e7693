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

#include "qcoord/vqc.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace qcoord;

VqcSpec small_spec(std::size_t n, std::size_t layers, Entanglement ent = Entanglement::Ring) {
    VqcSpec s;
    s.n_qubits = n;
    s.n_layers = layers;
    s.entanglement = ent;
    s.n_outputs = n;
    return s;
}

TEST(EncodeAngles, ZeroWindowIsIdentityPreparation) {
    const Circuit c = encode_angles({0.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(c.depth(), 1u);
    const StateVector s = run_circuit(c, StateVector(4));
    EXPECT_NEAR(s.probability(0), 1.0, 1e-12);
}

TEST(EncodeAngles, UnitValueFlipsItsQubit) {
    const Circuit c = encode_angles({1.0, 0.0, 0.0, 0.0});
    const StateVector s = run_circuit(c, StateVector(4));
    EXPECT_NEAR(expectation_z(s, 0), -1.0, 1e-12);
}

TEST(EncodeAngles, HalfValueSitsOnEquator) {
    const Circuit c = encode_angles({0.5, 0.5});
    const StateVector s = run_circuit(c, StateVector(2));
    EXPECT_NEAR(expectation_z(s, 0), 0.0, 1e-10);
}

TEST(EncodeAngles, RejectsOutOfRange) {
    EXPECT_THROW(encode_angles({0.5, 1.2}), std::invalid_argument);
    EXPECT_THROW(encode_angles({-0.1}), std::invalid_argument);
}

TEST(VqcForward, ZeroParametersGiveAllOnes) {
    const VqcSpec spec = small_spec(4, 3, Entanglement::Skip);
    const ParameterVector theta(spec.parameter_count(), 0.0);
    const std::vector<double> out = vqc_forward(spec, theta, {0.0, 0.0, 0.0, 0.0});
    for (double v : out) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(VqcForward, OutputsStayInUnitInterval) {
    Rng rng(22);
    const VqcSpec spec = small_spec(3, 2);
    for (int rep = 0; rep < 20; ++rep) {
        ParameterVector theta(spec.parameter_count());
        for (double& t : theta) t = rng.uniform(-M_PI, M_PI);
        std::vector<double> input = {rng.uniform(), rng.uniform(), rng.uniform()};
        for (double v : vqc_forward(spec, theta, input)) {
            EXPECT_GE(v, -1.0 - 1e-12);
            EXPECT_LE(v, 1.0 + 1e-12);
        }
    }
}

TEST(VqcForward, TwoQubitHandOracle) {
    // theta = (pi/2, 0), input = 0, single ring CNOT: state is the Bell pair
    // (|00> + |11>)/sqrt(2), so <Z0> = <Z1> = 0.
    const VqcSpec spec = small_spec(2, 1);
    const std::vector<double> out = vqc_forward(spec, {M_PI / 2.0, 0.0}, {0.0, 0.0});
    EXPECT_NEAR(out[0], 0.0, 1e-12);
    EXPECT_NEAR(out[1], 0.0, 1e-12);
}

TEST(VqcForward, MatchesCircuitBuilder) {
    Rng rng(31);
    for (const Entanglement ent : {Entanglement::Ring, Entanglement::Skip}) {
        const VqcSpec spec = small_spec(4, 2, ent);
        ParameterVector theta(spec.parameter_count());
        for (double& t : theta) t = rng.uniform(-M_PI, M_PI);
        std::vector<double> input = {rng.uniform(), rng.uniform(), rng.uniform(),
                                     rng.uniform()};
        const std::vector<double> fast = vqc_forward(spec, theta, input);
        const Circuit c = build_vqc_circuit(spec, theta, input);
        const StateVector s = run_circuit(c, StateVector(4));
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_NEAR(fast[k], expectation_z(s, k), 1e-12);
    }
}

TEST(VqcForward, RejectsLengthMismatch) {
    const VqcSpec spec = small_spec(3, 2);
    EXPECT_THROW(vqc_forward(spec, ParameterVector(5, 0.0), {0.0, 0.0, 0.0}),
                 std::invalid_argument);
    EXPECT_THROW(vqc_forward(spec, ParameterVector(6, 0.0), {0.0, 0.0}),
                 std::invalid_argument);
}

TEST(ParameterShift, SingleQubitAnalyticGradient) {
    // <Z> = cos(theta); gradient is -sin(theta) exactly.
    VqcSpec spec = small_spec(1, 1);
    for (const double theta : {0.0, 0.3, -1.2, 2.4}) {
        const std::vector<double> grad = parameter_shift_grad(spec, {theta}, {0.0}, 0);
        EXPECT_NEAR(grad[0], -std::sin(theta), 1e-12);
    }
}

TEST(ParameterShift, UnusedParameterHasZeroGradient) {
    // With output = <Z0> and a single layer on 2 disconnected qubits
    // (skip entanglement leaves n=2 without CNOTs), theta on qubit 1 is
    // irrelevant to output 0.
    VqcSpec spec = small_spec(2, 1, Entanglement::Skip);
    const std::vector<double> grad = parameter_shift_grad(spec, {0.7, 0.4}, {0.1, 0.9}, 0);
    EXPECT_NEAR(grad[1], 0.0, 1e-12);
}

TEST(ParameterShift, MatchesCentralFiniteDifferences) {
    Rng rng(404);
    const double h = 1e-4;
    for (int rep = 0; rep < 10; ++rep) {
        VqcSpec spec = small_spec(4, 3, rep % 2 ? Entanglement::Ring : Entanglement::Skip);
        ParameterVector theta(spec.parameter_count());
        for (double& t : theta) t = rng.uniform(-M_PI, M_PI);
        std::vector<double> input(4);
        for (double& x : input) x = rng.uniform();
        const std::size_t out_idx = rng.uniform_index(4);
        const std::vector<double> grad = parameter_shift_grad(spec, theta, input, out_idx);
        for (std::size_t j = 0; j < theta.size(); ++j) {
            ParameterVector tp = theta, tm = theta;
            tp[j] += h;
            tm[j] -= h;
            const double fd = (vqc_forward(spec, tp, input)[out_idx] -
                               vqc_forward(spec, tm, input)[out_idx]) /
                              (2.0 * h);
            EXPECT_NEAR(grad[j], fd, 1e-6);
        }
    }
}

TEST(ParameterShift, RejectsNonFiniteParameters) {
    VqcSpec spec = small_spec(2, 1);
    EXPECT_THROW(parameter_shift_grad(spec, {std::nan(""), 0.0}, {0.0, 0.0}, 0),
                 std::invalid_argument);
}

TEST(VqcEvaluator, InputJacobianMatchesFiniteDifferences) {
    Rng rng(77);
    VqcSpec spec = small_spec(3, 2);
    ParameterVector theta(spec.parameter_count());
    for (double& t : theta) t = rng.uniform(-M_PI, M_PI);
    std::vector<double> input = {0.2, 0.55, 0.8};
    VqcEvaluator eval(spec);
    std::vector<double> jac(spec.n_outputs * spec.n_qubits);
    eval.input_jacobian(input.data(), theta.data(), jac.data());
    const double h = 1e-5;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> xp = input, xm = input;
        xp[i] += h;
        xm[i] -= h;
        const std::vector<double> fp = vqc_forward(spec, theta, xp);
        const std::vector<double> fm = vqc_forward(spec, theta, xm);
        for (std::size_t k = 0; k < 3; ++k)
            EXPECT_NEAR(jac[k * 3 + i], (fp[k] - fm[k]) / (2.0 * h), 1e-6);
    }
}

TEST(VqcEvaluator, NoiseZeroMatchesNoiseless) {
    VqcSpec spec = small_spec(3, 2);
    ParameterVector theta(spec.parameter_count(), 0.4);
    std::vector<double> input = {0.3, 0.6, 0.9};
    Rng rng(5);
    VqcEvaluator eval(spec);
    const std::vector<double> clean = eval.forward(input, theta);
    const std::vector<double> zero_noise = eval.forward(input, theta, 0.0, &rng);
    for (std::size_t k = 0; k < clean.size(); ++k) EXPECT_EQ(clean[k], zero_noise[k]);
}

}  // namespace
