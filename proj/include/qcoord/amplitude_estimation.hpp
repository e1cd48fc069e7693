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
#include <cstdint>
#include <optional>
#include <vector>

#include "qcoord/circuit.hpp"
#include "qcoord/grover.hpp"
#include "qcoord/rotation_oracle.hpp"

namespace qcoord {

enum class QaeMethod { MLQAE, Canonical };

struct QaeConfig {
    QaeMethod method = QaeMethod::MLQAE;
    // Grover powers sampled by MLQAE; default 0 followed by doubling.
    std::vector<std::uint32_t> grover_powers = {0, 1, 2, 4, 8, 16, 32, 64};
    std::uint32_t shots_per_power = 100;
    // When set, shot histograms are replaced by their expected counts, so the
    // estimate isolates circuit and discretization error from shot noise.
    bool exact_expected_counts = false;
    std::uint32_t phase_qubits = 5;  // canonical QAE register
    std::uint64_t seed = 0;

    void validate() const {
        detail::require(!grover_powers.empty(), "grover power schedule must be nonempty");
        for (std::size_t i = 1; i < grover_powers.size(); ++i)
            detail::require(grover_powers[i] > grover_powers[i - 1],
                            "grover power schedule must be strictly increasing");
        detail::require(shots_per_power >= 1, "shots_per_power must be >= 1");
    }
};

struct EstimateResult {
    double value = 0.0;                        // estimate of a in [0, 1]
    std::uint64_t oracle_queries = 0;          // M^Q (or MC sample count)
    std::size_t circuit_depth = 0;             // deepest executed circuit
    std::optional<double> relative_error_pct;  // |est - truth| / truth * 100
};

namespace detail {

inline void fill_relative_error(EstimateResult& r, std::optional<double> truth) {
    if (truth && *truth != 0.0)
        r.relative_error_pct = std::abs(r.value - *truth) / std::abs(*truth) * 100.0;
}

}  // namespace detail

// Ancilla P(1) after Q^k A |0...0> for each scheduled k. The schedule is
// increasing, so Q is applied incrementally; the simulation cost scales with
// max(k), not sum(k).
inline std::vector<double> grover_power_probabilities(const Circuit& a_circuit,
                                                      std::uint32_t ancilla,
                                                      const std::vector<std::uint32_t>& powers) {
    const Circuit q = build_grover(a_circuit, ancilla);
    StateVector state(a_circuit.n_qubits());
    run_in_place(a_circuit, state);
    std::vector<double> probs;
    probs.reserve(powers.size());
    std::uint32_t applied = 0;
    for (std::uint32_t k : powers) {
        while (applied < k) {
            run_in_place(q, state);
            ++applied;
        }
        probs.push_back(probability_of(state, ancilla, 1));
    }
    return probs;
}

namespace detail {

inline double mlqae_log_likelihood(double theta, const std::vector<std::uint32_t>& powers,
                                   const std::vector<double>& hits, double shots) {
    double ll = 0.0;
    for (std::size_t j = 0; j < powers.size(); ++j) {
        const double s = std::sin(static_cast<double>(2 * powers[j] + 1) * theta);
        double p = s * s;
        p = std::min(1.0 - 1e-15, std::max(1e-15, p));
        ll += hits[j] * std::log(p) + (shots - hits[j]) * std::log1p(-p);
    }
    return ll;
}

// Dense grid over [0, pi/2] followed by golden-section refinement inside the
// winning cell.
inline double mlqae_maximize(const std::vector<std::uint32_t>& powers,
                             const std::vector<double>& hits, double shots) {
    constexpr int kGridPoints = 10000;
    constexpr int kRefineSteps = 36;
    const double hi = M_PI / 2.0;
    double best_theta = 0.0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kGridPoints; ++i) {
        const double theta = hi * static_cast<double>(i) / kGridPoints;
        const double ll = mlqae_log_likelihood(theta, powers, hits, shots);
        if (ll > best_ll) {
            best_ll = ll;
            best_theta = theta;
        }
    }
    detail::require(std::isfinite(best_ll), "MLQAE likelihood vanished on the whole grid");
    const double step = hi / kGridPoints;
    double lo_t = std::max(0.0, best_theta - step);
    double hi_t = std::min(hi, best_theta + step);
    const double inv_phi = 0.6180339887498949;
    double x1 = hi_t - inv_phi * (hi_t - lo_t);
    double x2 = lo_t + inv_phi * (hi_t - lo_t);
    double f1 = mlqae_log_likelihood(x1, powers, hits, shots);
    double f2 = mlqae_log_likelihood(x2, powers, hits, shots);
    for (int it = 0; it < kRefineSteps; ++it) {
        if (f1 < f2) {
            lo_t = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo_t + inv_phi * (hi_t - lo_t);
            f2 = mlqae_log_likelihood(x2, powers, hits, shots);
        } else {
            hi_t = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi_t - inv_phi * (hi_t - lo_t);
            f1 = mlqae_log_likelihood(x1, powers, hits, shots);
        }
    }
    return 0.5 * (lo_t + hi_t);
}

inline std::size_t grover_sequence_depth(const Circuit& a_circuit, std::uint32_t ancilla,
                                         std::uint32_t max_power) {
    DepthTracker t(a_circuit.n_qubits());
    for (const Gate& g : a_circuit.gates()) t.add(g);
    if (max_power > 0) {
        const Circuit q = build_grover(a_circuit, ancilla);
        for (std::uint32_t k = 0; k < max_power; ++k)
            for (const Gate& g : q.gates()) t.add(g);
    }
    return t.depth();
}

}  // namespace detail

// Maximum-likelihood QAE: samples the ancilla after Q^k A for each scheduled
// power and maximizes the joint binomial likelihood over theta in [0, pi/2].
inline EstimateResult mlqae_estimate(const Circuit& a_circuit, std::uint32_t ancilla,
                                     const QaeConfig& config,
                                     std::optional<double> truth = std::nullopt) {
    config.validate();
    const std::vector<double> probs =
        grover_power_probabilities(a_circuit, ancilla, config.grover_powers);

    const double shots = static_cast<double>(config.shots_per_power);
    std::vector<double> hits(probs.size());
    Rng rng(config.seed);
    for (std::size_t j = 0; j < probs.size(); ++j) {
        if (config.exact_expected_counts)
            hits[j] = shots * probs[j];
        else
            hits[j] = static_cast<double>(rng.binomial(config.shots_per_power, probs[j]));
    }

    const double theta = detail::mlqae_maximize(config.grover_powers, hits, shots);
    EstimateResult result;
    const double s = std::sin(theta);
    result.value = s * s;
    for (std::uint32_t k : config.grover_powers)
        result.oracle_queries += static_cast<std::uint64_t>(config.shots_per_power) *
                                 (2ULL * static_cast<std::uint64_t>(k) + 1ULL);
    result.circuit_depth =
        detail::grover_sequence_depth(a_circuit, ancilla, config.grover_powers.back());
    detail::fill_relative_error(result, truth);
    return result;
}

inline EstimateResult mlqae_estimate(const RotationOracle& oracle, const QaeConfig& config,
                                     std::optional<double> truth = std::nullopt) {
    return mlqae_estimate(oracle.full, oracle.ancilla, config, truth);
}

// Textbook phase-estimation QAE: an m-qubit register controls Q^(2^j), an
// inverse QFT follows, and the modal register value y gives
// a = sin^2(pi y / 2^m).
inline EstimateResult canonical_qae_estimate(const Circuit& a_circuit, std::uint32_t ancilla,
                                             const QaeConfig& config,
                                             std::optional<double> truth = std::nullopt) {
    const std::uint32_t m = config.phase_qubits;
    detail::require(m >= 1, "canonical QAE needs at least one phase qubit");
    const std::size_t n_state = a_circuit.n_qubits();
    const std::size_t n_total = n_state + m;
    detail::require(n_total <= 28, "phase register exceeds the simulator qubit budget");

    StateVector state(n_total);
    DepthTracker depth(n_total);

    const auto apply_widened = [&](const Gate& g, std::optional<std::uint32_t> extra_control) {
        Gate wide = g;
        if (extra_control) wide.controls.push_back(Control{*extra_control, true});
        apply_in_place(state, wide);
        depth.add(wide);
    };

    for (const Gate& g : a_circuit.gates()) apply_widened(g, std::nullopt);
    for (std::uint32_t j = 0; j < m; ++j) {
        const Gate h = make_h(static_cast<std::uint32_t>(n_state) + j);
        apply_in_place(state, h);
        depth.add(h);
    }
    const Circuit q = build_grover(a_circuit, ancilla);
    for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint32_t control = static_cast<std::uint32_t>(n_state) + j;
        const std::uint64_t reps = std::uint64_t{1} << j;
        for (std::uint64_t r = 0; r < reps; ++r)
            for (const Gate& g : q.gates()) apply_widened(g, control);
    }

    // Inverse QFT on the phase register (qubit n_state + j holds bit j of y).
    const auto pq = [&](std::uint32_t j) { return static_cast<std::uint32_t>(n_state) + j; };
    for (std::uint32_t i = 0; i < m / 2; ++i) {
        const std::uint32_t a = pq(i), b = pq(m - 1 - i);
        for (const Gate& g : {make_cnot(a, b), make_cnot(b, a), make_cnot(a, b)}) {
            apply_in_place(state, g);
            depth.add(g);
        }
    }
    for (std::uint32_t j = 0; j < m; ++j) {
        for (std::uint32_t k = 0; k < j; ++k) {
            const double phi = -M_PI / static_cast<double>(std::uint64_t{1} << (j - k));
            const Gate g = make_mcp({Control{pq(k), true}}, pq(j), phi);
            apply_in_place(state, g);
            depth.add(g);
        }
        const Gate h = make_h(pq(j));
        apply_in_place(state, h);
        depth.add(h);
    }

    // Modal outcome of the phase register marginal.
    const std::uint64_t modal_count = std::uint64_t{1} << m;
    std::vector<double> marginal(modal_count, 0.0);
    const std::uint64_t dim = state.dim();
    for (std::uint64_t i = 0; i < dim; ++i)
        marginal[i >> n_state] += std::norm(state[i]);
    std::uint64_t y = 0;
    for (std::uint64_t v = 1; v < modal_count; ++v)
        if (marginal[v] > marginal[y]) y = v;

    EstimateResult result;
    const double s = std::sin(M_PI * static_cast<double>(y) / static_cast<double>(modal_count));
    result.value = s * s;
    result.oracle_queries = 2 * (modal_count - 1) + 1;  // A-applications
    result.circuit_depth = depth.depth();
    detail::fill_relative_error(result, truth);
    return result;
}

inline EstimateResult canonical_qae_estimate(const RotationOracle& oracle,
                                             const QaeConfig& config,
                                             std::optional<double> truth = std::nullopt) {
    return canonical_qae_estimate(oracle.full, oracle.ancilla, config, truth);
}

inline EstimateResult qae_estimate(const RotationOracle& oracle, const QaeConfig& config,
                                   std::optional<double> truth = std::nullopt) {
    if (config.method == QaeMethod::Canonical)
        return canonical_qae_estimate(oracle, config, truth);
    return mlqae_estimate(oracle, config, truth);
}

}  // namespace qcoord
