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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoord/benchmark.hpp"
#include "qcoord/coordination.hpp"
#include "qcoord/model_io.hpp"
#include "qcoord/study_case.hpp"
#include "qcoord/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qcoord;

namespace {

struct GlobalOptions {
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string data_dir = std::string(QCOORD_SOURCE_DIR) + "/data";
};

std::string default_out_dir() {
    if (const char* env = std::getenv("QCOORD_OUT")) return env;
    return "qcoord_out";
}

// Every run leaves a resolved-config snapshot next to its outputs; the digest
// of that snapshot tags all result files.
std::uint64_t write_resolved_config(const GlobalOptions& g, const std::string& command,
                                    json args) {
    args["command"] = command;
    args["seed"] = g.seed;
    args["workers"] = g.workers;
    args["version"] = kVersion;
    const std::string text = args.dump(2) + "\n";
    fs::create_directories(g.out_dir);
    std::ofstream os(g.out_dir + "/resolved_config.json");
    detail::require(os.good(), "cannot write resolved config");
    os << text;
    return fnv1a64(text);
}

FileMetadata meta_for(const std::string& title, const GlobalOptions& g, std::uint64_t digest) {
    FileMetadata m;
    m.title = title;
    m.seed = g.seed;
    m.config_digest = digest;
    return m;
}

// ---------------------------------------------------------------------------
// gen-data
// ---------------------------------------------------------------------------

int cmd_gen_data(const GlobalOptions& g, std::size_t samples, std::size_t horizon) {
    StudyCase study;
    study.horizon = horizon;
    const std::uint64_t digest = write_resolved_config(
        g, "gen-data", json{{"samples", samples}, {"horizon", horizon}});

    std::ofstream manifest(g.out_dir + "/manifest.txt");
    detail::require(manifest.good(), "cannot write manifest");
    meta_for("dataset manifest", g, digest).write(manifest);
    manifest << "# columns: ec_type file rows digest\n";

    const EcType types[3] = {EcType::Residential, EcType::Commercial, EcType::Industrial};
    for (int i = 0; i < 3; ++i) {
        const EcGroundTruth truth = study.ec_truth(types[i]);
        const Dataset ds = generate_training_data(
            truth, samples, study.lower_bounds(), study.upper_bounds(),
            study.price_target_mean, g.seed + static_cast<std::uint64_t>(i));
        const std::string name = "ec_" + ec_type_code(types[i]) + ".dataset.txt";
        const std::string path = g.out_dir + "/" + name;
        write_dataset(path, ds);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(file_digest(path)));
        manifest << ec_type_code(types[i]) << ' ' << name << ' ' << ds.size() << ' ' << buf
                 << '\n';
        std::printf("wrote %s (%zu samples)\n", path.c_str(), ds.size());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

int cmd_train(const GlobalOptions& g, const std::string& dataset_path, const std::string& arch,
              TrainingConfig cfg, const std::string& evaluate_model) {
    const Dataset ds = read_dataset(dataset_path);
    cfg.seed = g.seed;
    const std::uint64_t digest = write_resolved_config(
        g, "train",
        json{{"dataset", dataset_path},
             {"arch", arch},
             {"epochs", cfg.epochs},
             {"batch_size", cfg.batch_size},
             {"learning_rate", cfg.learning_rate},
             {"noise_level", cfg.noise_level},
             {"evaluate_model", evaluate_model}});

    if (!evaluate_model.empty()) {
        // Re-evaluate a saved surrogate on this dataset's test split.
        const QTcnLstmModel model = load_model(evaluate_model);
        const std::size_t n_test = static_cast<std::size_t>(
            std::floor(cfg.test_fraction * static_cast<double>(ds.size())));
        const std::size_t begin = ds.size() - std::max<std::size_t>(n_test, 1);
        const double mse = evaluate_mse(model, ds, begin, ds.size());
        std::printf("test_mse %.17g\n", mse);
        return 0;
    }

    std::vector<double> trace;
    double test_mse = 0.0;
    json model_json;
    if (arch == "qtcnlstm") {
        QTcnLstmModel model = QTcnLstmModel::make_default(ds.horizon, g.seed);
        const TrainReport report = train(model, ds, cfg);
        trace = report.loss_trace;
        test_mse = report.test_mse;
        model_json = model_to_json(model);
        model_json["training"] = {{"noise_level", cfg.noise_level},
                                  {"epochs", cfg.epochs},
                                  {"seed", g.seed},
                                  {"final_train_mse", report.final_train_mse},
                                  {"test_mse", report.test_mse},
                                  {"dataset_digest", file_digest(dataset_path)}};
    } else {
        ClassicalNet net(ClassicalNet::arch_from_name(arch), ds.horizon, g.seed);
        const TrainReport report = net.train(ds, cfg);
        trace = report.loss_trace;
        test_mse = report.test_mse;
        model_json = classical_to_json(net);
        model_json["training"] = {{"noise_level", cfg.noise_level},
                                  {"epochs", cfg.epochs},
                                  {"seed", g.seed},
                                  {"final_train_mse", report.final_train_mse},
                                  {"test_mse", report.test_mse},
                                  {"dataset_digest", file_digest(dataset_path)}};
    }

    const std::string model_path = g.out_dir + "/model_" + arch + ".json";
    {
        std::ofstream os(model_path);
        detail::require(os.good(), "cannot write model file");
        os << model_json.dump(2) << "\n";
    }
    {
        std::ofstream os(g.out_dir + "/loss_trace.csv");
        detail::require(os.good(), "cannot write loss trace");
        TableWriter table(os, meta_for("training loss trace", g, digest),
                          {"epoch", "train_mse"});
        for (std::size_t e = 0; e < trace.size(); ++e)
            table.row({TableWriter::cell(e), TableWriter::cell(trace[e])});
    }
    std::printf("trained %s: final_train_mse %.6g test_mse %.6g -> %s\n", arch.c_str(),
                trace.back(), test_mse, model_path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

int cmd_estimate(const GlobalOptions& g, const std::string& estimator, std::size_t qubits,
                 std::uint64_t samples, std::uint32_t shots, const std::string& method,
                 bool exact_counts, bool dump_circuit) {
    const VoltageBenchmark bench;
    const double truth = bench.reference_truth();
    const std::uint64_t digest = write_resolved_config(
        g, "estimate",
        json{{"estimator", estimator},
             {"qubits", qubits},
             {"samples", samples},
             {"shots", shots},
             {"method", method},
             {"exact_counts", exact_counts}});

    EstimateResult result;
    std::size_t n_or_samples = 0;
    std::string variant = "-";
    if (estimator == "mc") {
        const std::size_t n_ref = 14;
        const GriddedDistribution dist = bench.distribution(n_ref);
        result = mc_estimate(dist.dist, bench.target(n_ref), samples, g.seed, truth);
        n_or_samples = samples;
    } else {
        detail::require(estimator == "qae1" || estimator == "qae2",
                        "estimator must be one of mc, qae1, qae2");
        QaeChoice choice;
        choice.circuit = estimator == "qae1" ? 1 : 2;
        choice.n_qubits = qubits;
        choice.config.method = method == "canonical" ? QaeMethod::Canonical : QaeMethod::MLQAE;
        choice.config.shots_per_power = shots;
        choice.config.exact_expected_counts = exact_counts;
        choice.config.seed = g.seed;
        const GriddedDistribution dist = bench.distribution(qubits);
        const TargetFunction f = bench.target(qubits);
        if (dump_circuit) {
            const RotationOracle oracle = build_oracle(dist.dist, f, choice.circuit);
            std::ofstream oa(g.out_dir + "/oracle_a.qc");
            write_circuit(oa, oracle.full);
            std::ofstream oq(g.out_dir + "/grover_q.qc");
            write_circuit(oq, build_grover(oracle));
            std::printf("dumped oracle_a.qc and grover_q.qc to %s\n", g.out_dir.c_str());
        }
        result = estimate_expectation(dist.dist, f, choice, truth);
        n_or_samples = qubits;
        variant = choice.circuit == 1 ? "circuit1" : "circuit2";
    }

    const double tq_us = result.circuit_depth > 0
                             ? estimate_runtime(result.circuit_depth) * 1e6
                             : 0.0;
    std::printf("method %s variant %s n_or_samples %zu\n", estimator.c_str(), variant.c_str(),
                n_or_samples);
    std::printf("estimate %.17g truth %.17g rel_error_pct %.6g\n", result.value, truth,
                result.relative_error_pct.value_or(0.0));
    std::printf("queries %llu depth %zu est_quantum_runtime_us %.6g\n",
                static_cast<unsigned long long>(result.oracle_queries), result.circuit_depth,
                tq_us);

    std::ofstream os(g.out_dir + "/estimate.txt");
    detail::require(os.good(), "cannot write estimate file");
    TableWriter table(os, meta_for("single estimation run", g, digest),
                      {"method", "variant", "n_or_samples", "estimate", "truth",
                       "rel_error_pct", "queries", "depth", "est_quantum_runtime_us"});
    table.row({estimator, variant, TableWriter::cell(n_or_samples),
               TableWriter::cell(result.value), TableWriter::cell(truth),
               TableWriter::cell(result.relative_error_pct.value_or(0.0)),
               TableWriter::cell(result.oracle_queries), TableWriter::cell(result.circuit_depth),
               TableWriter::cell(tq_us)});
    return 0;
}

// ---------------------------------------------------------------------------
// benchmark
// ---------------------------------------------------------------------------

int cmd_benchmark(const GlobalOptions& g, std::size_t qubits_min, std::size_t qubits_max,
                  std::uint32_t shots, bool sampled_counts) {
    BenchmarkSettings settings;
    settings.qubits_min = qubits_min;
    settings.qubits_max = qubits_max;
    settings.seed = g.seed;
    settings.qae_config.shots_per_power = shots;
    settings.qae_config.exact_expected_counts = !sampled_counts;
    const std::uint64_t digest = write_resolved_config(
        g, "benchmark",
        json{{"qubits_min", qubits_min},
             {"qubits_max", qubits_max},
             {"shots", shots},
             {"sampled_counts", sampled_counts}});

    const VoltageBenchmark bench;
    const std::vector<BenchmarkRow> rows = run_benchmark(bench, settings);
    std::ofstream os(g.out_dir + "/benchmark.csv");
    detail::require(os.good(), "cannot write benchmark table");
    write_benchmark_table(os, meta_for("estimation benchmark (Monte Carlo vs QAE)", g, digest),
                          rows);
    bool all_ok = true;
    for (const BenchmarkRow& r : rows) {
        std::printf("%-4s %-9s %8llu  est %.6f  err%% %8.4f  queries %10llu  depth %8zu\n",
                    r.method.c_str(), r.variant.c_str(),
                    static_cast<unsigned long long>(r.n_or_samples), r.estimate,
                    r.rel_error_pct, static_cast<unsigned long long>(r.queries), r.depth);
        all_ok = all_ok && r.status == "ok";
    }
    std::printf("wrote %s/benchmark.csv\n", g.out_dir.c_str());
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// coordinate
// ---------------------------------------------------------------------------

int cmd_coordinate(const GlobalOptions& g, const std::string& config_path,
                   std::string network_path, std::string dn_price_path, std::size_t n_scenarios,
                   std::size_t iters, const std::string& estimator, std::size_t qubits,
                   std::uint64_t mc_samples, std::vector<std::string> model_paths,
                   bool use_truth) {
    StudyCase study;
    json cfg_json;
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        detail::require(is.good(), "cannot open run config: " + config_path);
        is >> cfg_json;
        if (cfg_json.contains("network")) network_path = cfg_json["network"];
        if (cfg_json.contains("dn_price")) dn_price_path = cfg_json["dn_price"];
        if (cfg_json.contains("scenarios")) n_scenarios = cfg_json["scenarios"];
        if (cfg_json.contains("iterations")) iters = cfg_json["iterations"];
        if (cfg_json.contains("models"))
            model_paths = cfg_json["models"].get<std::vector<std::string>>();
        if (cfg_json.contains("use_truth")) use_truth = cfg_json["use_truth"];
    }
    if (network_path.empty()) network_path = g.data_dir + "/ieee33.net";
    if (dn_price_path.empty()) dn_price_path = g.data_dir + "/dn_price.csv";

    const std::uint64_t digest = write_resolved_config(
        g, "coordinate",
        json{{"network", network_path},
             {"dn_price", dn_price_path},
             {"scenarios", n_scenarios},
             {"iterations", iters},
             {"estimator", estimator},
             {"qubits", qubits},
             {"mc_samples", mc_samples},
             {"models", model_paths},
             {"use_truth", use_truth}});

    const NetworkCase net = read_network(network_path);
    const Topology topo = Topology::build(net);
    const ScenarioSet scenarios =
        generate_scenarios(net, n_scenarios, study.scenario_spec(), g.seed);

    CoordinationConfig config = study.coordination_config(dn_price_path);
    config.max_iters = iters;
    if (estimator == "mc") {
        config.estimator = McChoice{mc_samples, g.seed};
    } else if (estimator == "qae1" || estimator == "qae2") {
        QaeChoice choice;
        choice.circuit = estimator == "qae1" ? 1 : 2;
        choice.n_qubits = qubits;
        choice.config.exact_expected_counts = true;
        choice.config.seed = g.seed;
        config.estimator = choice;
    } else {
        throw std::invalid_argument("estimator must be one of mc, qae1, qae2");
    }

    std::vector<std::unique_ptr<PriceResponder>> responders;
    for (std::size_t e = 0; e < net.ecs.size(); ++e) {
        if (use_truth) {
            responders.push_back(
                std::make_unique<GroundTruthResponder>(study.ec_truth(net.ecs[e].second)));
        } else {
            detail::require(model_paths.size() == net.ecs.size(),
                            "one surrogate model per EC required (or --use-truth)");
            responders.push_back(
                std::make_unique<SurrogateResponder>(load_model(model_paths[e])));
        }
    }

    // Flat-price baseline for the improvement summary.
    const std::vector<double> flat(study.horizon, study.price_target_mean);
    std::vector<std::vector<double>> base_responses;
    for (auto& r : responders) base_responses.push_back(r->respond(flat));
    const EvaluatedScenarios base_ev =
        evaluate_scenarios(net, topo, scenarios, flat, base_responses, config.cost);
    const double base_penalty = base_ev.mean_voltage_penalty();

    const CoordinationResult result =
        run_coordination(net, topo, scenarios, responders, flat, config);
    const double reduction_pct =
        base_penalty > 0.0
            ? 100.0 * (base_penalty - result.mean_voltage_penalty) / base_penalty
            : 0.0;

    write_series_file(g.out_dir + "/prices.csv",
                      meta_for("baseline and optimized incentive price", g, digest),
                      {"t", "baseline", "optimized"}, {flat, result.prices});
    {
        std::vector<std::vector<double>> cols;
        std::vector<std::string> names = {"t"};
        for (std::size_t e = 0; e < responders.size(); ++e) {
            names.push_back("ec" + ec_type_code(net.ecs[e].second) + "_baseline");
            names.push_back("ec" + ec_type_code(net.ecs[e].second) + "_optimized");
            cols.push_back(base_responses[e]);
            cols.push_back(result.responses[e]);
        }
        write_series_file(g.out_dir + "/responses.csv",
                          meta_for("EC responses before/after coordination", g, digest), names,
                          cols);
    }
    {
        std::ofstream os(g.out_dir + "/iterations.csv");
        detail::require(os.good(), "cannot write iteration log");
        TableWriter table(os, meta_for("coordination iteration log", g, digest),
                          {"iter", "objective", "expectation_term", "cvar_term", "v_alpha",
                           "max_violation", "grad_norm", "estimator_queries"});
        for (const IterationRecord& r : result.log)
            table.row({TableWriter::cell(r.iter), TableWriter::cell(r.objective),
                       TableWriter::cell(r.expectation_term), TableWriter::cell(r.cvar_term),
                       TableWriter::cell(r.v_alpha), TableWriter::cell(r.max_violation),
                       TableWriter::cell(r.grad_norm),
                       TableWriter::cell(r.estimator_queries)});
    }
    {
        std::ofstream os(g.out_dir + "/summary.txt");
        detail::require(os.good(), "cannot write summary");
        meta_for("coordination summary", g, digest).write(os);
        os << "baseline_mean_voltage_penalty " << detail::format_double(base_penalty) << "\n";
        os << "optimized_mean_voltage_penalty "
           << detail::format_double(result.mean_voltage_penalty) << "\n";
        os << "penalty_reduction_pct " << detail::format_double(reduction_pct) << "\n";
        os << "final_objective " << detail::format_double(result.final_objective) << "\n";
        os << "v_alpha " << detail::format_double(result.v_alpha) << "\n";
        os << "iterations " << result.log.size() << "\n";
        os << "converged " << (result.converged ? 1 : 0) << "\n";
    }
    std::printf("voltage penalty: baseline %.6g -> optimized %.6g (-%.1f%%), objective %.6g\n",
                base_penalty, result.mean_voltage_penalty, reduction_pct,
                result.final_objective);
    std::printf("wrote prices.csv responses.csv iterations.csv summary.txt in %s\n",
                g.out_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// runtime
// ---------------------------------------------------------------------------

int cmd_runtime(const GlobalOptions& g, const std::string& circuit_path, std::size_t qubits,
                double t_prep_us, double t_gate_ns) {
    RuntimeModel model;
    model.t_prep_plus_meas = t_prep_us * 1e-6;
    model.t_gate = t_gate_ns * 1e-9;
    const std::uint64_t digest = write_resolved_config(
        g, "runtime",
        json{{"circuit", circuit_path},
             {"qubits", qubits},
             {"t_prep_us", t_prep_us},
             {"t_gate_ns", t_gate_ns}});

    std::ofstream os(g.out_dir + "/runtime.txt");
    detail::require(os.good(), "cannot write runtime table");
    TableWriter table(os, meta_for("ideal-hardware runtime estimates", g, digest),
                      {"circuit", "gates", "depth", "t_quantum_us"});
    const auto report = [&](const std::string& name, const Circuit& c) {
        const std::size_t d = c.depth();
        const double tq = estimate_runtime(d, model) * 1e6;
        std::printf("%-22s gates %8zu depth %8zu  T^Q %.4g us\n", name.c_str(), c.size(), d, tq);
        table.row({name, TableWriter::cell(c.size()), TableWriter::cell(d),
                   TableWriter::cell(tq)});
    };

    if (!circuit_path.empty()) {
        std::ifstream is(circuit_path);
        detail::require(is.good(), "cannot open circuit file: " + circuit_path);
        report(fs::path(circuit_path).filename().string(), read_circuit(is));
        return 0;
    }

    const VoltageBenchmark bench;
    const GriddedDistribution dist = bench.distribution(qubits);
    const TargetFunction f = bench.target(qubits);
    for (const int circuit : {1, 2}) {
        const RotationOracle oracle = build_oracle(dist.dist, f, circuit);
        report("circuit" + std::to_string(circuit) + "_A", oracle.full);
        report("circuit" + std::to_string(circuit) + "_Q", build_grover(oracle));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcoord: statevector quantum learning & estimation toolkit for "
                 "distribution-network / energy-community coordination studies"};
    app.require_subcommand(1);

    GlobalOptions g;
    g.out_dir = default_out_dir();
    app.add_option("--out", g.out_dir, "output directory (env QCOORD_OUT)");
    app.add_option("--seed", g.seed, "master random seed");
    app.add_option("--workers", g.workers,
                   "worker threads (does not change numerical results)");
    app.add_option("--data-dir", g.data_dir, "directory holding shipped data files");

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate incentive-response datasets");
    std::size_t gen_samples = 1024, gen_horizon = 96;
    gen->add_option("--samples", gen_samples, "samples per EC dataset");
    gen->add_option("--horizon", gen_horizon, "steps per day-ahead horizon");

    // train
    auto* tr = app.add_subcommand("train", "train a surrogate or classical baseline");
    std::string tr_dataset, tr_arch = "qtcnlstm", tr_eval;
    TrainingConfig tr_cfg;
    tr->add_option("--dataset", tr_dataset, "dataset file")->required();
    tr->add_option("--arch", tr_arch, "qtcnlstm|mlp|tcn|lstm|tcnlstm");
    tr->add_option("--epochs", tr_cfg.epochs, "training epochs");
    tr->add_option("--batch", tr_cfg.batch_size, "batch size");
    tr->add_option("--lr", tr_cfg.learning_rate, "Adam learning rate");
    tr->add_option("--noise", tr_cfg.noise_level, "depolarizing level during forward passes");
    tr->add_option("--evaluate-model", tr_eval, "skip training, evaluate this model file");

    // estimate
    auto* est = app.add_subcommand("estimate", "run one expectation estimation");
    std::string est_estimator = "qae2", est_method = "mlqae";
    std::size_t est_qubits = 7;
    std::uint64_t est_samples = 1000000;
    std::uint32_t est_shots = 100;
    bool est_exact = false, est_dump = false;
    est->add_option("--estimator", est_estimator, "mc|qae1|qae2");
    est->add_option("--qubits", est_qubits, "index qubits for QAE");
    est->add_option("--samples", est_samples, "Monte Carlo sample count");
    est->add_option("--shots", est_shots, "shots per Grover power (MLQAE)");
    est->add_option("--method", est_method, "mlqae|canonical");
    est->add_flag("--exact-counts", est_exact, "use expected counts instead of sampled shots");
    est->add_flag("--dump-circuit", est_dump, "write oracle and Grover circuits as text");

    // benchmark
    auto* ben = app.add_subcommand("benchmark", "MC vs QAE sweep (Table-style output)");
    std::size_t ben_min = 5, ben_max = 10;
    std::uint32_t ben_shots = 100;
    bool ben_sampled = false;
    ben->add_option("--qubits-min", ben_min, "smallest QAE register");
    ben->add_option("--qubits-max", ben_max, "largest QAE register");
    ben->add_option("--shots", ben_shots, "shots per Grover power");
    ben->add_flag("--sampled-counts", ben_sampled,
                  "sample shot histograms instead of expected counts");

    // coordinate
    auto* coo = app.add_subcommand("coordinate", "run the DN-EC coordination loop");
    std::string coo_config, coo_network, coo_price;
    std::size_t coo_scenarios = 256, coo_iters = 40, coo_qubits = 7;
    std::string coo_estimator = "mc";
    std::uint64_t coo_mc_samples = 0;
    std::vector<std::string> coo_models;
    bool coo_truth = false;
    coo->add_option("--config", coo_config, "JSON run config");
    coo->add_option("--network", coo_network, "network file");
    coo->add_option("--dn-price", coo_price, "upstream price series");
    coo->add_option("--scenarios", coo_scenarios, "scenario count");
    coo->add_option("--iters", coo_iters, "descent iterations");
    coo->add_option("--estimator", coo_estimator, "mc|qae1|qae2");
    coo->add_option("--qubits", coo_qubits, "QAE register size");
    coo->add_option("--samples", coo_mc_samples, "MC resamples (0 = exhaustive average)");
    coo->add_option("--models", coo_models, "surrogate model files (EC order: I, C, R)");
    coo->add_flag("--use-truth", coo_truth, "use ground-truth EC dispatch as responders");

    // runtime
    auto* run = app.add_subcommand("runtime", "depth and ideal-hardware runtime estimates");
    std::string run_circuit;
    std::size_t run_qubits = 7;
    double run_tprep = 1.0, run_tgate = 10.0;
    run->add_option("--circuit", run_circuit, "circuit text file (--dump-circuit output)");
    run->add_option("--qubits", run_qubits, "benchmark oracle size when no file given");
    run->add_option("--t-prep-us", run_tprep, "state preparation + measurement time [us]");
    run->add_option("--t-gate-ns", run_tgate, "per-layer gate time [ns]");

    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(g.out_dir);
        if (gen->parsed()) return cmd_gen_data(g, gen_samples, gen_horizon);
        if (tr->parsed()) return cmd_train(g, tr_dataset, tr_arch, tr_cfg, tr_eval);
        if (est->parsed())
            return cmd_estimate(g, est_estimator, est_qubits, est_samples, est_shots,
                                est_method, est_exact, est_dump);
        if (ben->parsed()) return cmd_benchmark(g, ben_min, ben_max, ben_shots, ben_sampled);
        if (coo->parsed())
            return cmd_coordinate(g, coo_config, coo_network, coo_price, coo_scenarios,
                                  coo_iters, coo_estimator, coo_qubits, coo_mc_samples,
                                  coo_models, coo_truth);
        if (run->parsed()) return cmd_runtime(g, run_circuit, run_qubits, run_tprep, run_tgate);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
