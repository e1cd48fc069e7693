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

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "qcoord/benchmark_target.hpp"
#include "qcoord/estimators.hpp"
#include "qcoord/text_io.hpp"

namespace qcoord {

// One row of the estimation benchmark: Monte Carlo over sample counts against
// amplitude estimation over qubit counts and both oracle circuits.
struct BenchmarkRow {
    std::string method;       // "mc" or "qae"
    std::string variant;      // "-", "circuit1", "circuit2"
    std::uint64_t n_or_samples = 0;
    double estimate = 0.0;
    double truth = 0.0;
    double rel_error_pct = 0.0;
    std::uint64_t queries = 0;
    std::size_t depth = 0;
    double sim_runtime_s = 0.0;
    double est_quantum_runtime_us = 0.0;
    std::string status = "ok";
};

struct BenchmarkSettings {
    std::vector<std::uint64_t> mc_samples = {100, 1000, 10000, 100000, 1000000};
    std::size_t qubits_min = 5;
    std::size_t qubits_max = 10;
    QaeConfig qae_config;  // exact expected counts by default, set below
    std::uint64_t seed = 0;
    RuntimeModel runtime_model;

    BenchmarkSettings() { qae_config.exact_expected_counts = true; }
};

inline std::vector<BenchmarkRow> run_benchmark(const VoltageBenchmark& bench,
                                               const BenchmarkSettings& settings) {
    std::vector<BenchmarkRow> rows;
    const double truth = bench.reference_truth();

    const auto timed = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        EstimateResult r = fn();
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::pair<EstimateResult, double>(std::move(r), dt);
    };

    // Monte Carlo sweep on a fine reference discretization.
    {
        const std::size_t n_ref = 14;
        const GriddedDistribution g = bench.distribution(n_ref);
        const TargetFunction f = bench.target(n_ref);
        for (std::size_t i = 0; i < settings.mc_samples.size(); ++i) {
            BenchmarkRow row;
            row.method = "mc";
            row.variant = "-";
            row.n_or_samples = settings.mc_samples[i];
            row.truth = truth;
            try {
                auto [r, dt] = timed([&] {
                    return mc_estimate(g.dist, f, settings.mc_samples[i],
                                       settings.seed + i, truth);
                });
                row.estimate = r.value;
                row.rel_error_pct = r.relative_error_pct.value_or(0.0);
                row.queries = r.oracle_queries;
                row.depth = 0;
                row.sim_runtime_s = dt;
                row.est_quantum_runtime_us = 0.0;
            } catch (const std::exception& e) {
                row.status = std::string("failed: ") + e.what();
            }
            rows.push_back(row);
        }
    }

    for (const int circuit : {1, 2}) {
        for (std::size_t n = settings.qubits_min; n <= settings.qubits_max; ++n) {
            BenchmarkRow row;
            row.method = "qae";
            row.variant = circuit == 1 ? "circuit1" : "circuit2";
            row.n_or_samples = n;
            row.truth = truth;
            try {
                const GriddedDistribution g = bench.distribution(n);
                const TargetFunction f = bench.target(n);
                QaeChoice choice;
                choice.circuit = circuit;
                choice.n_qubits = n;
                choice.config = settings.qae_config;
                choice.config.seed = settings.seed + n;
                auto [r, dt] = timed([&] {
                    return estimate_expectation(g.dist, f, choice, truth);
                });
                row.estimate = r.value;
                row.rel_error_pct = r.relative_error_pct.value_or(0.0);
                row.queries = r.oracle_queries;
                row.depth = r.circuit_depth;
                row.sim_runtime_s = dt;
                row.est_quantum_runtime_us =
                    estimate_runtime(r.circuit_depth, settings.runtime_model) * 1e6;
            } catch (const std::exception& e) {
                row.status = std::string("failed: ") + e.what();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

inline void write_benchmark_table(std::ostream& os, const FileMetadata& meta,
                                  const std::vector<BenchmarkRow>& rows) {
    TableWriter table(os, meta,
                      {"method", "variant", "n_or_samples", "estimate", "truth",
                       "rel_error_pct", "queries", "depth", "sim_runtime_s",
                       "est_quantum_runtime_us", "status"});
    for (const BenchmarkRow& r : rows)
        table.row({r.method, r.variant, TableWriter::cell(std::uint64_t{r.n_or_samples}),
                   TableWriter::cell(r.estimate), TableWriter::cell(r.truth),
                   TableWriter::cell(r.rel_error_pct), TableWriter::cell(r.queries),
                   TableWriter::cell(r.depth), TableWriter::cell(r.sim_runtime_s),
                   TableWriter::cell(r.est_quantum_runtime_us), r.status});
}

}  // namespace qcoord
