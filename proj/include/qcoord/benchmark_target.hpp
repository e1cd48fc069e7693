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

#include <algorithm>
#include <cmath>

#include "qcoord/distribution.hpp"

namespace qcoord {

// Canonical estimation benchmark: a truncated-Gaussian voltage distribution
// and the rectified-overvoltage target f(v) = min(1, [v - v_bar]_+ / cap).
// The same continuous setup is discretized at any qubit count, so estimator
// error can be compared across n against one reference truth. v_bar sits at a
// dyadic fraction (6/16) of the grid span: every register of 4+ qubits puts
// the rectifier kink on a bin edge, and the discretization error decays
// cleanly with resolution instead of oscillating with kink alignment.
struct VoltageBenchmark {
    double v_lo = 0.95;
    double v_hi = 1.11;
    double mean = 1.02;
    double sigma = 0.02;
    double v_bar = 1.01;  // = v_lo + (6/16) (v_hi - v_lo)
    double cap = 0.16;

    double f_of_voltage(double v) const {
        return std::min(1.0, std::max(0.0, v - v_bar) / cap);
    }

    GriddedDistribution distribution(std::size_t n_qubits) const {
        return discretized_gaussian_on_grid(n_qubits, mean, sigma, v_lo, v_hi);
    }

    TargetFunction target(std::size_t n_qubits) const {
        const GriddedDistribution g = distribution(n_qubits);
        std::vector<double> values(g.grid.size());
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = f_of_voltage(g.grid[i]);
        return TargetFunction(n_qubits, std::move(values));
    }

    // High-resolution discretization standing in for the continuous truth.
    double reference_truth(std::size_t reference_qubits = 16) const {
        const GriddedDistribution g = distribution(reference_qubits);
        return brute_force_expectation(g.dist, target(reference_qubits));
    }
};

}  // namespace qcoord
