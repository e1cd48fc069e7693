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

#include "qcoord/circuit.hpp"
#include "qcoord/distribution.hpp"

namespace qcoord {

// n Hadamards: p_i = 1/2^n for every basis state. Depth 1.
inline Circuit prepare_uniform(std::size_t n_qubits) {
    detail::require(n_qubits >= 1, "prepare_uniform needs n >= 1");
    Circuit c(n_qubits);
    for (std::uint32_t q = 0; q < n_qubits; ++q) c.h(q);
    return c;
}

// Conditional-rotation binary tree (Grover-Rudolph): one RY on the top bit,
// then per level one multi-controlled RY per branch, angles set by the
// conditional mass split of that branch. Running the circuit on |0...0> gives
// amplitude sqrt(p_i) on basis state i. Zero-mass branches contribute no gate.
inline Circuit prepare_distribution(const DiscreteDistribution& dist) {
    const std::size_t n = dist.n_qubits();
    const std::size_t count = dist.size();
    Circuit c(n);

    // prefix[i] = sum of masses[0..i)
    std::vector<double> prefix(count + 1, 0.0);
    for (std::size_t i = 0; i < count; ++i) prefix[i + 1] = prefix[i] + dist.mass(i);
    const auto block_mass = [&](std::size_t begin, std::size_t len) {
        return prefix[begin + len] - prefix[begin];
    };

    for (std::size_t level = 0; level < n; ++level) {
        const std::uint32_t qubit = static_cast<std::uint32_t>(n - 1 - level);
        const std::size_t branches = std::size_t{1} << level;
        const std::size_t block = count >> level;  // indices per branch
        for (std::size_t v = 0; v < branches; ++v) {
            const std::size_t begin = v * block;
            const double m0 = block_mass(begin, block / 2);
            const double m1 = block_mass(begin + block / 2, block / 2);
            const double total = m0 + m1;
            if (total <= 0.0) continue;
            const double theta = 2.0 * std::atan2(std::sqrt(m1), std::sqrt(m0));
            if (theta == 0.0) continue;
            std::vector<Control> controls;
            controls.reserve(level);
            for (std::size_t b = 0; b < level; ++b) {
                const std::uint32_t cq = static_cast<std::uint32_t>(n - 1 - b);
                const bool value = ((v >> (level - 1 - b)) & 1U) != 0;
                controls.push_back(Control{cq, value});
            }
            if (controls.empty())
                c.ry(qubit, theta);
            else
                c.mcry(std::move(controls), qubit, theta);
        }
    }
    return c;
}

}  // namespace qcoord
