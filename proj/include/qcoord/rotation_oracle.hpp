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
#include <utility>
#include <vector>

#include "qcoord/circuit.hpp"
#include "qcoord/distribution.hpp"

namespace qcoord {

enum class OracleVariant { LinearApprox, Exact };

// Rotation block F plus the state-preparation circuit it follows. `rotation`
// maps |i>|0> -> sqrt(1-f(i))|i>|0> + sqrt(f(i))|i>|1> (exactly for Exact, via
// sin^2(a*i+b) for LinearApprox); `full` = preparation followed by rotation,
// the operator handed to amplitude estimation.
struct RotationOracle {
    OracleVariant variant = OracleVariant::Exact;
    std::size_t index_qubits = 0;  // n
    std::size_t total_qubits = 0;  // n+1 (LinearApprox) or 2n+1 (Exact)
    std::uint32_t ancilla = 0;
    Circuit rotation;
    Circuit full;
    double a = 0.0;  // LinearApprox coefficients
    double b = 0.0;
};

// Ordinary least squares fit of arcsin(sqrt(f(i))) ~ a*i + b over the full
// index range.
inline std::pair<double, double> fit_linear_approx(const TargetFunction& f) {
    const std::size_t count = f.size();
    double sum_g = 0.0;
    double sum_ig = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double g = std::asin(std::sqrt(f(i)));
        sum_g += g;
        sum_ig += static_cast<double>(i) * g;
    }
    const double nn = static_cast<double>(count);
    const double mean_i = (nn - 1.0) / 2.0;
    const double var_i = (nn * nn - 1.0) / 12.0;  // population variance of 0..N-1
    if (count == 1) return {0.0, sum_g};
    const double mean_g = sum_g / nn;
    const double cov = sum_ig / nn - mean_i * mean_g;
    const double a = cov / var_i;
    const double b = mean_g - a * mean_i;
    return {a, b};
}

// Circuit-1: one ancilla RY(2b) plus a controlled RY(2a*2^j) per index qubit.
// On basis |i> the rotations compose to angle 2(a*i + b), so the ancilla reads
// P(1 | i) = sin^2(a*i + b).
inline RotationOracle build_circuit1(const Circuit& prep, double a, double b) {
    const std::size_t n = prep.n_qubits();
    const double max_angle =
        std::abs(a) * (static_cast<double>((std::size_t{1} << n) - 1)) + std::abs(b);
    detail::require(max_angle <= M_PI / 2.0 + 1e-12,
                    "circuit-1 requires |a|(N-1)+|b| <= pi/2");

    RotationOracle oracle;
    oracle.variant = OracleVariant::LinearApprox;
    oracle.index_qubits = n;
    oracle.total_qubits = n + 1;
    oracle.ancilla = static_cast<std::uint32_t>(n);
    oracle.a = a;
    oracle.b = b;

    Circuit rot(n + 1);
    rot.ry(oracle.ancilla, 2.0 * b);
    for (std::uint32_t j = 0; j < n; ++j)
        rot.cry(j, oracle.ancilla, 2.0 * a * static_cast<double>(std::uint64_t{1} << j));
    oracle.rotation = rot;

    Circuit full(n + 1);
    full.append(prep);
    full.append(rot);
    oracle.full = std::move(full);
    return oracle;
}

inline RotationOracle build_circuit1(const Circuit& prep, const TargetFunction& f) {
    const auto [a, b] = fit_linear_approx(f);
    return build_circuit1(prep, a, b);
}

// Circuit-2: a reversal register initialized to |1...1> and kept bitwise
// negated via CNOT pairing, then 2^n multi-controlled RY(2 asin(sqrt(f(i))))
// gates, each conditioned on the unique all-ones original/reversal pattern of
// basis i. P(1 | i) = f(i) to float precision. Qubit layout: originals
// 0..n-1, reversals n..2n-1, ancilla 2n.
inline RotationOracle build_circuit2(const Circuit& prep, const TargetFunction& f,
                                     std::size_t max_index_qubits = 10) {
    const std::size_t n = prep.n_qubits();
    detail::require(f.n_qubits() == n, "target function size does not match preparation");
    detail::require(n <= max_index_qubits, "circuit-2 index register exceeds the qubit cap");

    RotationOracle oracle;
    oracle.variant = OracleVariant::Exact;
    oracle.index_qubits = n;
    oracle.total_qubits = 2 * n + 1;
    oracle.ancilla = static_cast<std::uint32_t>(2 * n);

    Circuit rot(2 * n + 1);
    for (std::uint32_t j = 0; j < n; ++j) rot.x(static_cast<std::uint32_t>(n) + j);
    for (std::uint32_t j = 0; j < n; ++j) rot.cnot(j, static_cast<std::uint32_t>(n) + j);
    const std::size_t count = f.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double theta = 2.0 * std::asin(std::sqrt(f(i)));
        std::vector<Control> controls;
        controls.reserve(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            const bool bit = ((i >> j) & 1U) != 0;
            // bit set: control on the original; bit clear: on the reversal.
            controls.push_back(Control{bit ? j : static_cast<std::uint32_t>(n) + j, true});
        }
        rot.mcry(std::move(controls), oracle.ancilla, theta);
    }
    oracle.rotation = rot;

    Circuit full(2 * n + 1);
    full.append(prep);
    full.append(rot);
    oracle.full = std::move(full);
    return oracle;
}

}  // namespace qcoord
