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
#include <functional>
#include <numeric>
#include <vector>

#include "qcoord/common.hpp"

namespace qcoord {

// Probability mass over N = 2^n points.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::size_t n_qubits, std::vector<double> masses)
        : n_qubits_(n_qubits), masses_(std::move(masses)) {
        detail::require(n_qubits_ >= 1, "distribution needs at least one qubit");
        detail::require(masses_.size() == (std::size_t{1} << n_qubits_),
                        "mass count must be 2^n_qubits");
        double sum = 0.0;
        for (double m : masses_) {
            detail::require(m >= 0.0, "masses must be nonnegative");
            sum += m;
        }
        detail::require(std::abs(sum - 1.0) <= 1e-12, "masses must sum to 1");
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t size() const { return masses_.size(); }
    const std::vector<double>& masses() const { return masses_; }
    double mass(std::size_t i) const { return masses_[i]; }

private:
    std::size_t n_qubits_;
    std::vector<double> masses_;
};

// f : {0, ..., 2^n - 1} -> [0, 1], tabulated. The range check runs over every
// point at construction.
class TargetFunction {
public:
    TargetFunction(std::size_t n_qubits, std::vector<double> values)
        : n_qubits_(n_qubits), values_(std::move(values)) {
        detail::require(values_.size() == (std::size_t{1} << n_qubits_),
                        "value count must be 2^n_qubits");
        for (double v : values_)
            detail::require(v >= 0.0 && v <= 1.0, "target function values must lie in [0, 1]");
    }

    TargetFunction(std::size_t n_qubits, const std::function<double(std::size_t)>& eval)
        : TargetFunction(n_qubits, tabulate(n_qubits, eval)) {}

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t size() const { return values_.size(); }
    double operator()(std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    static std::vector<double> tabulate(std::size_t n,
                                        const std::function<double(std::size_t)>& eval) {
        std::vector<double> v(std::size_t{1} << n);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval(i);
        return v;
    }

    std::size_t n_qubits_;
    std::vector<double> values_;
};

// Exact expectation by direct summation; the classical oracle every estimator
// is checked against.
inline double brute_force_expectation(const DiscreteDistribution& dist,
                                      const TargetFunction& f) {
    detail::require(dist.n_qubits() == f.n_qubits(),
                    "distribution and target function sizes differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) acc += dist.mass(i) * f(i);
    return acc;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Gaussian over the bin index axis, truncated to the index range and
// renormalized. Bin i covers [i, i+1).
inline DiscreteDistribution discretized_gaussian_by_index(std::size_t n_qubits, double mean,
                                                          double sigma) {
    const std::size_t count = std::size_t{1} << n_qubits;
    std::vector<double> masses(count);
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double lo = (static_cast<double>(i) - mean) / sigma;
        const double hi = (static_cast<double>(i) + 1.0 - mean) / sigma;
        masses[i] = normal_cdf(hi) - normal_cdf(lo);
        sum += masses[i];
    }
    detail::require(sum > 0.0, "gaussian mass vanished on the index range");
    for (double& m : masses) m /= sum;
    // Remove the last-digit drift so the sum-to-one invariant holds exactly.
    double drift = -1.0;
    for (double m : masses) drift += m;
    masses[count / 2] -= drift;
    return DiscreteDistribution(n_qubits, std::move(masses));
}

// Gaussian over a real value grid [lo, hi] split into 2^n equal bins; returns
// masses plus bin centers.
struct GriddedDistribution {
    DiscreteDistribution dist;
    std::vector<double> grid;  // bin centers
};

inline GriddedDistribution discretized_gaussian_on_grid(std::size_t n_qubits, double mean,
                                                        double sigma, double lo, double hi) {
    detail::require(hi > lo, "grid bounds must satisfy hi > lo");
    const std::size_t count = std::size_t{1} << n_qubits;
    const double width = (hi - lo) / static_cast<double>(count);
    std::vector<double> masses(count);
    std::vector<double> centers(count);
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double a = lo + width * static_cast<double>(i);
        const double b = a + width;
        centers[i] = a + 0.5 * width;
        masses[i] = normal_cdf((b - mean) / sigma) - normal_cdf((a - mean) / sigma);
        sum += masses[i];
    }
    detail::require(sum > 0.0, "gaussian mass vanished on the grid");
    for (double& m : masses) m /= sum;
    double drift = -1.0;
    for (double m : masses) drift += m;
    masses[count / 2] -= drift;
    return GriddedDistribution{DiscreteDistribution(n_qubits, std::move(masses)),
                               std::move(centers)};
}

}  // namespace qcoord
