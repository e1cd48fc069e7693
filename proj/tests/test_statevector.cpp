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

#include "qcoord/statevector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qcoord/circuit.hpp"

namespace {

using namespace qcoord;

// Dense 2^n-dim matrix-vector oracle used to cross-check the strided kernels
// on small registers, independent of the simulator's apply path.
std::vector<cplx> dense_apply_1q(const std::vector<cplx>& amps, std::size_t n_qubits,
                                 const std::array<cplx, 4>& u, std::uint32_t target) {
    std::vector<cplx> out(amps.size());
    const std::uint64_t tbit = 1ULL << target;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & tbit)
            out[i] = u[2] * amps[i & ~tbit] + u[3] * amps[i];
        else
            out[i] = u[0] * amps[i] + u[1] * amps[i | tbit];
    }
    return out;
}

TEST(StateVector, InitialStateIsAllZeros) {
    StateVector s(3);
    EXPECT_EQ(s.dim(), 8u);
    EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-15);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(StateVector, HadamardOnZero) {
    StateVector s(1);
    apply_in_place(s, make_h(0));
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(s[0].real(), r, 1e-15);
    EXPECT_NEAR(s[1].real(), r, 1e-15);
}

TEST(StateVector, CnotTruthTable) {
    // |10> with control = qubit 1 flips qubit 0 -> |11>.
    StateVector s = StateVector::basis(2, 0b10);
    apply_in_place(s, make_cnot(1, 0));
    EXPECT_NEAR(std::norm(s[0b11]), 1.0, 1e-15);
}

TEST(StateVector, RyPiFlipsToOne) {
    // Hand oracle: RY(pi) = [[0,-1],[1,0]], so RY(pi)|0> = |1>.
    StateVector s(1);
    apply_in_place(s, make_ry(0, M_PI));
    EXPECT_NEAR(std::norm(s[1]), 1.0, 1e-12);
}

TEST(StateVector, MatchesDenseOracleOnRandomStates) {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 3;
        std::vector<cplx> amps(8);
        double norm = 0.0;
        for (auto& a : amps) {
            a = cplx{rng.normal(), rng.normal()};
            norm += std::norm(a);
        }
        norm = std::sqrt(norm);
        for (auto& a : amps) a /= norm;

        const GateKind kinds[] = {GateKind::H, GateKind::X, GateKind::Z,
                                  GateKind::P, GateKind::RY, GateKind::RZ};
        const GateKind kind = kinds[rng.uniform_index(6)];
        const auto target = static_cast<std::uint32_t>(rng.uniform_index(3));
        const double angle = rng.uniform(-M_PI, M_PI);

        StateVector s = StateVector::from_amplitudes(n, amps);
        Gate g{kind, target, angle, {}};
        apply_in_place(s, g);
        const auto expected = dense_apply_1q(amps, n, gate_matrix(kind, angle), target);
        for (std::size_t i = 0; i < expected.size(); ++i)
            EXPECT_LT(std::abs(s[i] - expected[i]), 1e-12);
    }
}

TEST(StateVector, ControlValueZeroActsOnUnsetBit) {
    StateVector s = StateVector::basis(2, 0b00);
    Gate g = make_x(1);
    g.controls.push_back(Control{0, false});
    apply_in_place(s, g);  // control qubit 0 is |0> -> fires
    EXPECT_NEAR(std::norm(s[0b10]), 1.0, 1e-15);

    StateVector t = StateVector::basis(2, 0b01);
    apply_in_place(t, g);  // control qubit 0 is |1> -> no-op
    EXPECT_NEAR(std::norm(t[0b01]), 1.0, 1e-15);
}

TEST(StateVector, GateMatricesAreUnitary) {
    Rng rng(11);
    for (const GateKind kind : {GateKind::H, GateKind::X, GateKind::Z, GateKind::P,
                                GateKind::RY, GateKind::RZ}) {
        for (int rep = 0; rep < 8; ++rep) {
            const double angle = rng.uniform(-2.0 * M_PI, 2.0 * M_PI);
            const auto u = gate_matrix(kind, angle);
            // U^dag U
            const cplx e00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
            const cplx e01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
            const cplx e10 = std::conj(u[1]) * u[0] + std::conj(u[3]) * u[2];
            const cplx e11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
            EXPECT_LT(std::abs(e00 - 1.0), 1e-12);
            EXPECT_LT(std::abs(e01), 1e-12);
            EXPECT_LT(std::abs(e10), 1e-12);
            EXPECT_LT(std::abs(e11 - 1.0), 1e-12);
        }
    }
}

TEST(StateVector, ApplyGateRejectsBadInput) {
    StateVector s(2);
    EXPECT_THROW(apply_in_place(s, make_h(2)), std::out_of_range);
    EXPECT_THROW(apply_in_place(s, make_ry(0, std::nan(""))), std::invalid_argument);
    EXPECT_THROW(apply_in_place(s, make_cnot(0, 0)), std::invalid_argument);
}

TEST(Expectation, PauliZBasics) {
    StateVector zero(1);
    EXPECT_NEAR(expectation_z(zero, 0), 1.0, 1e-15);

    StateVector plus = apply_gate(StateVector(1), make_h(0));
    EXPECT_NEAR(expectation_z(plus, 0), 0.0, 1e-12);

    // Weighted observable on RY(pi/2)|0>: hand oracle gives <Z> = 0.
    StateVector rot = apply_gate(StateVector(1), make_ry(0, M_PI / 2.0));
    const Observable obs{{ObservableTerm{0, 2.0}}};
    EXPECT_NEAR(expectation(rot, obs), 0.0, 1e-10);
}

TEST(Expectation, BoundedByWeightSum) {
    Rng rng(3);
    Circuit c(3);
    for (int i = 0; i < 30; ++i) {
        const auto q = static_cast<std::uint32_t>(rng.uniform_index(3));
        c.ry(q, rng.uniform(-M_PI, M_PI));
        const auto t = static_cast<std::uint32_t>((q + 1 + rng.uniform_index(2)) % 3);
        c.cnot(q, t);
    }
    const StateVector s = run_circuit(c, StateVector(3));
    const Observable obs{{{0, 0.7}, {1, -1.3}, {2, 2.0}}};
    const double w = 0.7 + 1.3 + 2.0;
    const double e = expectation(s, obs);
    EXPECT_LE(std::abs(e), w + 1e-12);
}

TEST(Probability, MarginalsSumToOne) {
    Circuit bell(2);
    bell.h(0);
    bell.cnot(0, 1);
    const StateVector s = run_circuit(bell, StateVector(2));
    EXPECT_NEAR(probability_of(s, 0, 1), 0.5, 1e-12);
    EXPECT_NEAR(probability_of(s, 0, 0) + probability_of(s, 0, 1), 1.0, 1e-12);

    StateVector one = StateVector::basis(1, 1);
    EXPECT_NEAR(probability_of(one, 0, 1), 1.0, 1e-15);
    EXPECT_THROW(probability_of(one, 3, 1), std::out_of_range);
}

TEST(Sample, PointMassAndDeterminism) {
    StateVector s(2);
    const auto hist = sample(s, 100, 42);
    ASSERT_EQ(hist.size(), 1u);
    EXPECT_EQ(hist.at(0), 100u);

    Circuit c(2);
    c.h(0);
    c.h(1);
    const StateVector u = run_circuit(c, StateVector(2));
    const auto h1 = sample(u, 5000, 9);
    const auto h2 = sample(u, 5000, 9);
    EXPECT_EQ(h1, h2);
    EXPECT_THROW(sample(u, 0, 1), std::invalid_argument);
}

TEST(Sample, UniformCountsWithinBinomialBound) {
    Circuit c(2);
    c.h(0);
    c.h(1);
    const StateVector u = run_circuit(c, StateVector(2));
    const std::uint64_t shots = 1000000;
    const auto hist = sample(u, shots, 1234);
    const double sigma = std::sqrt(static_cast<double>(shots) * 0.25 * 0.75);
    for (std::uint64_t i = 0; i < 4; ++i) {
        const double count = static_cast<double>(hist.at(i));
        EXPECT_NEAR(count, 250000.0, 3.0 * sigma);
    }
}

TEST(Depolarize, LevelZeroIsIdentityAndNormPreserved) {
    Circuit c(3);
    c.h(0);
    c.cnot(0, 1);
    c.ry(2, 0.7);
    const StateVector s = run_circuit(c, StateVector(3));
    const StateVector same = depolarize(s, 0.0, 5);
    for (std::uint64_t i = 0; i < s.dim(); ++i) EXPECT_EQ(s[i], same[i]);

    const StateVector noisy = depolarize(s, 0.1, 5);
    EXPECT_NEAR(noisy.norm(), 1.0, 1e-14);
    EXPECT_THROW(depolarize(s, 1.5, 1), std::invalid_argument);
}

TEST(Depolarize, FullNoiseAveragesToMinusOneThird) {
    // Pauli-twirl oracle: X,Y flip <Z> to -1, Z keeps +1; the average over a
    // uniform Pauli choice is -1/3.
    const int reps = 10000;
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
        StateVector s(1);
        const StateVector noisy = depolarize(s, 1.0, static_cast<std::uint64_t>(r) + 1);
        acc += expectation_z(noisy, 0);
    }
    EXPECT_NEAR(acc / reps, -1.0 / 3.0, 0.05);
}

TEST(StateVector, NormPreservedOverLongRandomCircuit) {
    Rng rng(2026);
    StateVector s(8);
    for (int i = 0; i < 20000; ++i) {
        const auto q = static_cast<std::uint32_t>(rng.uniform_index(8));
        switch (rng.uniform_index(5)) {
            case 0: apply_in_place(s, make_h(q)); break;
            case 1: apply_in_place(s, make_ry(q, rng.uniform(-M_PI, M_PI))); break;
            case 2: apply_in_place(s, make_rz(q, rng.uniform(-M_PI, M_PI))); break;
            case 3: apply_in_place(s, make_x(q)); break;
            default: {
                const auto c = static_cast<std::uint32_t>((q + 1 + rng.uniform_index(7)) % 8);
                apply_in_place(s, make_cnot(c, q));
                break;
            }
        }
    }
    EXPECT_NEAR(s.norm(), 1.0, 1e-9);
}

TEST(RunCircuit, LinearityOnSuperposedInput) {
    // run_circuit(C, a x1 + b x2) = a run(x1) + b run(x2); the mixed input is
    // normalized before the run and the norm factor restored afterwards.
    Rng rng(17);
    Circuit c(3);
    for (int i = 0; i < 12; ++i) {
        c.ry(static_cast<std::uint32_t>(rng.uniform_index(3)), rng.uniform(-M_PI, M_PI));
        const auto a = static_cast<std::uint32_t>(rng.uniform_index(3));
        const auto b = static_cast<std::uint32_t>((a + 1 + rng.uniform_index(2)) % 3);
        c.cnot(a, b);
    }
    const StateVector y1 = run_circuit(c, StateVector::basis(3, 1));
    const StateVector y2 = run_circuit(c, StateVector::basis(3, 6));
    const cplx alpha{0.6, 0.3};
    const cplx beta{-0.2, 0.7};
    std::vector<cplx> mixed(8, cplx{0, 0});
    mixed[1] = alpha;
    mixed[6] = beta;
    double norm = 0.0;
    for (const cplx& a : mixed) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (cplx& a : mixed) a /= norm;
    const StateVector ymix = run_circuit(c, StateVector::from_amplitudes(3, mixed));
    for (std::uint64_t i = 0; i < 8; ++i) {
        const cplx expected = (alpha * y1[i] + beta * y2[i]) / norm;
        EXPECT_LT(std::abs(ymix[i] - expected), 1e-10);
    }
}

}  // namespace
