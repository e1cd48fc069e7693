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

#include <variant>

#include "qcoord/amplitude_estimation.hpp"
#include "qcoord/monte_carlo.hpp"
#include "qcoord/rotation_oracle.hpp"
#include "qcoord/state_prep.hpp"

namespace qcoord {

struct McChoice {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
};

struct QaeChoice {
    int circuit = 2;  // 1: linear-approx oracle, 2: exact oracle
    std::size_t n_qubits = 7;
    QaeConfig config;
};

using EstimatorChoice = std::variant<McChoice, QaeChoice>;

inline RotationOracle build_oracle(const DiscreteDistribution& dist, const TargetFunction& f,
                                   int circuit_variant) {
    const Circuit prep = prepare_distribution(dist);
    if (circuit_variant == 1) return build_circuit1(prep, f);
    detail::require(circuit_variant == 2, "circuit variant must be 1 or 2");
    return build_circuit2(prep, f);
}

// Uniform entry point for the benchmark harness and the coordination loop:
// estimates sum_i f(i) p_i with the chosen backend.
inline EstimateResult estimate_expectation(const DiscreteDistribution& dist,
                                           const TargetFunction& f,
                                           const EstimatorChoice& estimator,
                                           std::optional<double> truth = std::nullopt) {
    detail::require(dist.n_qubits() == f.n_qubits(),
                    "distribution and target function sizes differ");
    if (const auto* mc = std::get_if<McChoice>(&estimator))
        return mc_estimate(dist, f, mc->samples, mc->seed, truth);
    const auto& qae = std::get<QaeChoice>(estimator);
    detail::require(qae.n_qubits == dist.n_qubits(),
                    "QAE qubit count does not match the distribution");
    const RotationOracle oracle = build_oracle(dist, f, qae.circuit);
    return qae_estimate(oracle, qae.config, truth);
}

}  // namespace qcoord
