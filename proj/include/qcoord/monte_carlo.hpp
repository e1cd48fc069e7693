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
#include <vector>

#include "qcoord/amplitude_estimation.hpp"
#include "qcoord/distribution.hpp"

namespace qcoord {

// Classical baseline: draw i ~ dist, average f(i). Queries = sample count.
inline EstimateResult mc_estimate(const DiscreteDistribution& dist, const TargetFunction& f,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::optional<double> truth = std::nullopt) {
    detail::require(samples >= 1, "mc_estimate needs samples >= 1");
    detail::require(dist.n_qubits() == f.n_qubits(),
                    "distribution and target function sizes differ");
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist.mass(i);
        cdf[i] = acc;
    }
    Rng rng(seed);
    double sum = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            it == cdf.end() ? dist.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        sum += f(idx);
    }
    EstimateResult result;
    result.value = sum / static_cast<double>(samples);
    result.oracle_queries = samples;
    result.circuit_depth = 0;
    detail::fill_relative_error(result, truth);
    return result;
}

}  // namespace qcoord
