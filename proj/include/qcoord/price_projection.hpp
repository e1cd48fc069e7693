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
#include <numeric>
#include <vector>

#include "qcoord/common.hpp"

namespace qcoord {

// Price series with box bounds and a pinned horizon mean.
struct PriceSignal {
    std::vector<double> values;
    std::vector<double> lower;
    std::vector<double> upper;
    double target_mean = 0.0;

    void validate() const {
        detail::require(!values.empty(), "price signal is empty");
        detail::require(values.size() == lower.size() && values.size() == upper.size(),
                        "bound series must match the horizon");
        double mean = 0.0;
        for (std::size_t t = 0; t < values.size(); ++t) {
            detail::require(values[t] >= lower[t] - 1e-9 && values[t] <= upper[t] + 1e-9,
                            "price outside its bounds");
            mean += values[t];
        }
        mean /= static_cast<double>(values.size());
        detail::require(std::abs(mean - target_mean) <= 1e-9,
                        "price mean deviates from the target");
    }
};

// Alternating projection onto the box and the mean hyperplane: clip, shift
// the mean, repeat to a fixed point. Both constraint sets are convex and
// intersect whenever mean(lower) <= target <= mean(upper), so the iteration
// converges; the cap guards the loop.
inline std::vector<double> project_prices(std::vector<double> raw,
                                          const std::vector<double>& lower,
                                          const std::vector<double>& upper,
                                          double target_mean) {
    const std::size_t T = raw.size();
    detail::require(T >= 1, "cannot project an empty series");
    detail::require(lower.size() == T && upper.size() == T, "bound series length mismatch");
    double lo_mean = 0.0, hi_mean = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        detail::require(lower[t] <= upper[t], "bounds must satisfy lower <= upper");
        lo_mean += lower[t];
        hi_mean += upper[t];
    }
    lo_mean /= static_cast<double>(T);
    hi_mean /= static_cast<double>(T);
    detail::require(target_mean >= lo_mean - 1e-12 && target_mean <= hi_mean + 1e-12,
                    "target mean is infeasible for the bounds");

    constexpr int kMaxRounds = 100;
    constexpr double kTol = 1e-9;
    for (int round = 0; round < kMaxRounds; ++round) {
        double worst_clip = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const double clipped = std::clamp(raw[t], lower[t], upper[t]);
            worst_clip = std::max(worst_clip, std::abs(clipped - raw[t]));
            raw[t] = clipped;
        }
        double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(T);
        const double shift = target_mean - mean;
        for (double& v : raw) v += shift;
        if (worst_clip <= kTol && std::abs(shift) <= kTol) {
            // One final clip keeps the box exact; the residual mean error is
            // below tolerance.
            for (std::size_t t = 0; t < T; ++t) raw[t] = std::clamp(raw[t], lower[t], upper[t]);
            return raw;
        }
    }
    // The alternating pass can stall when many entries saturate. The fixed
    // point has the water-filling form clip(raw + mu), and the clipped mean
    // is monotone in mu, so a bisection finishes the job exactly.
    double mu_lo = -1.0, mu_hi = 1.0;
    const auto clipped_mean = [&](double mu) {
        double mean = 0.0;
        for (std::size_t t = 0; t < T; ++t)
            mean += std::clamp(raw[t] + mu, lower[t], upper[t]);
        return mean / static_cast<double>(T);
    };
    while (clipped_mean(mu_lo) > target_mean) mu_lo *= 2.0;
    while (clipped_mean(mu_hi) < target_mean) mu_hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (mu_lo + mu_hi);
        (clipped_mean(mid) < target_mean ? mu_lo : mu_hi) = mid;
    }
    const double mu = 0.5 * (mu_lo + mu_hi);
    for (std::size_t t = 0; t < T; ++t) raw[t] = std::clamp(raw[t] + mu, lower[t], upper[t]);
    return raw;
}

inline PriceSignal make_price_signal(std::vector<double> raw, std::vector<double> lower,
                                     std::vector<double> upper, double target_mean) {
    PriceSignal p;
    p.values = project_prices(std::move(raw), lower, upper, target_mean);
    p.lower = std::move(lower);
    p.upper = std::move(upper);
    p.target_mean = target_mean;
    p.validate();
    return p;
}

}  // namespace qcoord
