// Copyright 2026 The pqcreg developers
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

#include "pqcreg/runner.hpp"

#include "pqcreg/errors.hpp"
#include "pqcreg/fsutil.hpp"
#include "pqcreg/version.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace pqcreg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void config_error(const std::string &field,
                               const std::string &what) {
    throw Error(ErrorKind::Config, "config field \"" + field + "\": " + what);
}

void reject_unknown_keys(const json &obj, const std::string &where,
                         const std::set<std::string> &known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key())) {
            config_error(where.empty() ? it.key() : where + "." + it.key(),
                         "unknown key");
        }
    }
}

const json *maybe_block(const json &doc, const std::string &key) {
    if (!doc.contains(key)) {
        return nullptr;
    }
    if (!doc.at(key).is_object()) {
        config_error(key, "must be an object");
    }
    return &doc.at(key);
}

template <typename T>
T get_field(const json &obj, const std::string &where, const std::string &key,
            T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        config_error(where + "." + key, "has the wrong type");
    }
}

template <typename T>
T require_field(const json &obj, const std::string &where,
                const std::string &key) {
    if (!obj.contains(key)) {
        config_error(where + "." + key, "is required");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        config_error(where + "." + key, "has the wrong type");
    }
}

json metrics_to_json(const MetricsReport &m) {
    return json{{"r2_train", m.r2_train},   {"r2_test", m.r2_test},
                {"mae_train", m.mae_train}, {"mae_test", m.mae_test},
                {"mse_train", m.mse_train}, {"mse_test", m.mse_test}};
}

void write_json(const fs::path &path, const json &doc) {
    atomic_write_text(path, doc.dump(2) + "\n");
}

/// Checks n_qubits = redundancy x effective feature count once the raw
/// width is known; with PCA the check already ran at parse time.
void check_feature_arity(const RunConfig &config, std::size_t raw_features) {
    const std::size_t effective =
        config.pca_components ? *config.pca_components : raw_features;
    if (static_cast<std::size_t>(config.n_qubits) !=
        effective * static_cast<std::size_t>(config.redundancy)) {
        throw Error(ErrorKind::Config,
                    "n_qubits (" + std::to_string(config.n_qubits) +
                        ") must equal redundancy (" +
                        std::to_string(config.redundancy) +
                        ") x feature count (" + std::to_string(effective) +
                        ")");
    }
}

/// Failures from later pipeline stages carry a stage tag so a nonzero
/// exit can be located without a debugger.
template <typename Fn>
auto stage(const char *name, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error &e) {
        throw Error(e.kind(), std::string("[") + name + "] " + e.what());
    }
}

struct LoadedRun {
    Dataset raw;
    PreparedData prepared;
    TrainSetup setup;
};

LoadedRun load_and_prepare(const RunConfig &config) {
    LoadedRun out;
    out.raw = stage("load", [&] {
        return load_table(config.dataset_path, config.target_column);
    });
    check_feature_arity(config, out.raw.n_cols);

    PipelineOptions options;
    options.pca_components = config.pca_components;
    options.train_ratio = config.train_ratio;
    options.split_seed = config.split_seed;
    out.prepared =
        stage("prepare", [&] { return prepare_data(out.raw, options); });

    out.setup.n_qubits = config.n_qubits;
    out.setup.rud = config.rud;
    out.setup.ansatz_layers = config.ansatz_layers;
    out.setup.redundancy = config.redundancy;
    out.setup.spsa = config.spsa;
    return out;
}

json base_manifest(const char *command, const RunConfig &config) {
    json doc;
    doc["tool"] = "pqcreg";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["config"] = config_to_json(config);
    doc["seeds"] = {{"run", config.spsa.seed}, {"split", config.split_seed}};
    return doc;
}

std::string loss_history_csv(const TrainRecord &record) {
    std::ostringstream os;
    os << "iteration,loss\n";
    for (const auto &[it, loss] : record.loss_history) {
        os << it << "," << format_double(loss) << "\n";
    }
    return os.str();
}

} // namespace

json load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Config,
                    "cannot open config file \"" + path + "\"");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::Config,
                    "config file \"" + path + "\" is not valid JSON: " +
                        e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorKind::Config,
                    "config file \"" + path + "\" must hold a JSON object");
    }
    // A manifest is accepted anywhere a config is: re-running a manifest
    // reproduces the run it records.
    if (doc.contains("config") && doc.at("config").is_object()) {
        return doc.at("config");
    }
    return doc;
}

RunConfig parse_config(const json &doc) {
    if (!doc.is_object()) {
        throw Error(ErrorKind::Config, "config must be a JSON object");
    }
    reject_unknown_keys(doc, "",
                        {"dataset", "circuit", "pca", "split", "optimizer",
                         "ridge", "output_dir", "grid", "learning_curve"});

    RunConfig config;

    if (const json *dataset = maybe_block(doc, "dataset")) {
        reject_unknown_keys(*dataset, "dataset", {"path", "target"});
        config.dataset_path =
            require_field<std::string>(*dataset, "dataset", "path");
        config.target_column =
            get_field<std::string>(*dataset, "dataset", "target", "target");
    }

    if (const json *circuit = maybe_block(doc, "circuit")) {
        reject_unknown_keys(*circuit, "circuit",
                            {"encoder", "ansatz", "n_qubits", "rud",
                             "ansatz_layers", "redundancy"});
        config.encoder =
            get_field<std::string>(*circuit, "circuit", "encoder", "");
        config.ansatz =
            get_field<std::string>(*circuit, "circuit", "ansatz", "");
        config.n_qubits =
            require_field<int>(*circuit, "circuit", "n_qubits");
        config.rud = get_field<int>(*circuit, "circuit", "rud", 1);
        config.ansatz_layers =
            get_field<int>(*circuit, "circuit", "ansatz_layers", 1);
        config.redundancy =
            get_field<int>(*circuit, "circuit", "redundancy", 1);
    } else {
        config_error("circuit", "is required");
    }

    // Closed-set name validation happens before any data is loaded.
    if (!config.encoder.empty()) {
        (void)EncoderSpec::parse(config.encoder);
    }
    if (!config.ansatz.empty()) {
        (void)AnsatzSpec::parse(config.ansatz);
    }
    if (config.n_qubits < 1 || config.n_qubits > kMaxQubits) {
        config_error("circuit.n_qubits",
                     "must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (config.rud < 1 || config.rud > kMaxDepthKnob) {
        config_error("circuit.rud", "must be in [1, " +
                                        std::to_string(kMaxDepthKnob) + "]");
    }
    if (config.ansatz_layers < 1 || config.ansatz_layers > kMaxDepthKnob) {
        config_error("circuit.ansatz_layers",
                     "must be in [1, " + std::to_string(kMaxDepthKnob) + "]");
    }
    if (config.redundancy < 1) {
        config_error("circuit.redundancy", "must be >= 1");
    }

    if (const json *pca = maybe_block(doc, "pca")) {
        reject_unknown_keys(*pca, "pca", {"components"});
        const int components = require_field<int>(*pca, "pca", "components");
        if (components < 1) {
            config_error("pca.components", "must be >= 1");
        }
        config.pca_components = static_cast<std::size_t>(components);
        if (static_cast<std::size_t>(config.n_qubits) !=
            *config.pca_components *
                static_cast<std::size_t>(config.redundancy)) {
            config_error("circuit.n_qubits",
                         "must equal redundancy x pca.components");
        }
    }

    if (const json *split_block = maybe_block(doc, "split")) {
        reject_unknown_keys(*split_block, "split", {"train_ratio", "seed"});
        config.train_ratio =
            get_field<double>(*split_block, "split", "train_ratio", 0.8);
        config.split_seed =
            get_field<std::uint64_t>(*split_block, "split", "seed", 0);
    }
    if (!(config.train_ratio > 0.0) || config.train_ratio > 0.8 + 1e-12) {
        config_error("split.train_ratio", "must lie in (0, 0.8]");
    }

    if (const json *opt = maybe_block(doc, "optimizer")) {
        reject_unknown_keys(
            *opt, "optimizer",
            {"a", "c", "A", "alpha", "gamma", "iterations", "seed"});
        config.spsa.a = get_field<double>(*opt, "optimizer", "a", 1.0);
        config.spsa.c = get_field<double>(*opt, "optimizer", "c", 0.1);
        config.spsa.big_a = get_field<double>(*opt, "optimizer", "A", 0.0);
        config.spsa.alpha =
            get_field<double>(*opt, "optimizer", "alpha", 0.602);
        config.spsa.gamma =
            get_field<double>(*opt, "optimizer", "gamma", 0.101);
        config.spsa.iterations =
            get_field<int>(*opt, "optimizer", "iterations", 0);
        config.spsa.seed =
            get_field<std::uint64_t>(*opt, "optimizer", "seed", 0);
    } else {
        config.spsa.iterations = 0;
    }
    if (config.spsa.iterations == 0) {
        // Width-dependent default: 16+ qubit simulations get the reduced
        // budget.
        config.spsa.iterations = config.n_qubits >= 16 ? 250 : 1000;
    }
    config.spsa.validate();

    if (const json *ridge = maybe_block(doc, "ridge")) {
        reject_unknown_keys(*ridge, "ridge", {"lambda"});
        config.ridge_lambda =
            get_field<double>(*ridge, "ridge", "lambda", 1.0);
        if (config.ridge_lambda < 0.0) {
            config_error("ridge.lambda", "must be >= 0");
        }
    }

    config.output_dir =
        get_field<std::string>(doc, "", "output_dir", "pqcreg-out");

    if (const json *grid = maybe_block(doc, "grid")) {
        reject_unknown_keys(*grid, "grid", {"encoders", "ansatze"});
        config.grid_encoders = get_field<std::vector<std::string>>(
            *grid, "grid", "encoders", {});
        config.grid_ansatze = get_field<std::vector<std::string>>(
            *grid, "grid", "ansatze", {});
        for (const auto &name : config.grid_encoders) {
            (void)EncoderSpec::parse(name);
        }
        for (const auto &name : config.grid_ansatze) {
            (void)AnsatzSpec::parse(name);
        }
    }

    if (const json *lc = maybe_block(doc, "learning_curve")) {
        reject_unknown_keys(*lc, "learning_curve", {"ratios"});
        config.lc_ratios =
            get_field<std::vector<double>>(*lc, "learning_curve", "ratios",
                                           {});
        for (const double r : config.lc_ratios) {
            if (!(r > 0.0) || r > 0.8 + 1e-12) {
                config_error("learning_curve.ratios",
                             "every ratio must lie in (0, 0.8]");
            }
        }
    }

    if (config.dataset_path.empty()) {
        config_error("dataset.path", "is required");
    }
    return config;
}

json config_to_json(const RunConfig &config) {
    json doc;
    doc["dataset"] = {{"path", config.dataset_path},
                      {"target", config.target_column}};
    json circuit = {{"n_qubits", config.n_qubits},
                    {"rud", config.rud},
                    {"ansatz_layers", config.ansatz_layers},
                    {"redundancy", config.redundancy}};
    if (!config.encoder.empty()) {
        circuit["encoder"] = config.encoder;
    }
    if (!config.ansatz.empty()) {
        circuit["ansatz"] = config.ansatz;
    }
    doc["circuit"] = circuit;
    if (config.pca_components) {
        doc["pca"] = {{"components",
                       static_cast<int>(*config.pca_components)}};
    }
    doc["split"] = {{"train_ratio", config.train_ratio},
                    {"seed", config.split_seed}};
    doc["optimizer"] = {{"a", config.spsa.a},
                        {"c", config.spsa.c},
                        {"A", config.spsa.big_a},
                        {"alpha", config.spsa.alpha},
                        {"gamma", config.spsa.gamma},
                        {"iterations", config.spsa.iterations},
                        {"seed", config.spsa.seed}};
    doc["ridge"] = {{"lambda", config.ridge_lambda}};
    doc["output_dir"] = config.output_dir;
    if (!config.grid_encoders.empty() || !config.grid_ansatze.empty()) {
        doc["grid"] = {{"encoders", config.grid_encoders},
                       {"ansatze", config.grid_ansatze}};
    }
    if (!config.lc_ratios.empty()) {
        doc["learning_curve"] = {{"ratios", config.lc_ratios}};
    }
    return doc;
}

json run_train(const RunConfig &config, int workers) {
    if (config.encoder.empty() || config.ansatz.empty()) {
        throw Error(ErrorKind::Config,
                    "train needs circuit.encoder and circuit.ansatz");
    }
    const auto start = std::chrono::steady_clock::now();
    const auto enc = EncoderSpec::parse(config.encoder);
    const auto ans = AnsatzSpec::parse(config.ansatz);

    LoadedRun run = load_and_prepare(config);
    const SingleRunResult result = stage("train", [&] {
        return run_pqc(enc, ans, run.prepared, run.setup, config.spsa.seed,
                       workers);
    });

    const fs::path out_dir(config.output_dir);
    json doc = base_manifest("train", config);
    doc["dataset"] = {{"rows", run.raw.n_rows},
                      {"features_raw", run.raw.n_cols},
                      {"features_used", run.prepared.train_scaled.n_cols},
                      {"train_rows", run.prepared.train_scaled.n_rows},
                      {"test_rows", run.prepared.test_scaled.n_rows}};
    doc["clip_counts"] = {
        {"test_features", run.prepared.clipped_features_test},
        {"test_target", run.prepared.clipped_target_test}};
    doc["metrics"] = metrics_to_json(result.metrics);
    doc["loss_final"] = result.record.loss_history.back().second;
    doc["theta_digest"] = digest_hex(result.record.final_theta);
    doc["final_theta"] = result.record.final_theta;
    doc["train_wall_seconds"] = result.record.wall_time_seconds;
    doc["files"] = {{"loss_history", "loss_history.csv"},
                    {"parity_train", "parity_train.csv"},
                    {"parity_test", "parity_test.csv"}};

    stage("write", [&] {
        atomic_write_text(out_dir / "loss_history.csv",
                          loss_history_csv(result.record));
        parity_export(run.prepared.y_train_orig, result.yhat_train,
                      (out_dir / "parity_train.csv").string());
        parity_export(run.prepared.y_test_orig, result.yhat_test,
                      (out_dir / "parity_test.csv").string());
        return 0;
    });

    doc["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    stage("write", [&] {
        write_json(out_dir / "manifest.json", doc);
        return 0;
    });
    return doc;
}

json run_grid(const RunConfig &config, int workers) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::string> encoders =
        config.grid_encoders.empty() ? encoder_names() : config.grid_encoders;
    const std::vector<std::string> ansatze =
        config.grid_ansatze.empty() ? ansatz_names() : config.grid_ansatze;

    LoadedRun run = load_and_prepare(config);
    const GridResult grid = grid_sweep(encoders, ansatze, run.prepared,
                                       run.setup, workers);

    const fs::path out_dir(config.output_dir);
    json doc = base_manifest("grid", config);
    doc["encoders"] = encoders;
    doc["ansatze"] = ansatze;
    doc["clip_counts"] = {
        {"test_features", run.prepared.clipped_features_test},
        {"test_target", run.prepared.clipped_target_test}};

    json cells = json::array();
    std::ostringstream csv;
    csv << "encoder,ansatz,ok,seed,r2_train,r2_test,mae_train,mae_test,"
           "mse_train,mse_test,wall_seconds\n";
    std::size_t failures = 0;
    for (const auto &cell : grid.cells) {
        json c = {{"encoder", cell.encoder},
                  {"ansatz", cell.ansatz},
                  {"ok", cell.ok},
                  {"seed", cell.seed},
                  {"wall_seconds", cell.wall_seconds}};
        if (cell.ok) {
            c["metrics"] = metrics_to_json(cell.metrics);
            c["theta_digest"] = cell.theta_digest;
            csv << cell.encoder << "," << cell.ansatz << ",1," << cell.seed
                << "," << format_double(cell.metrics.r2_train) << ","
                << format_double(cell.metrics.r2_test) << ","
                << format_double(cell.metrics.mae_train) << ","
                << format_double(cell.metrics.mae_test) << ","
                << format_double(cell.metrics.mse_train) << ","
                << format_double(cell.metrics.mse_test) << ","
                << format_double(cell.wall_seconds) << "\n";
        } else {
            ++failures;
            c["error"] = cell.error;
            csv << cell.encoder << "," << cell.ansatz << ",0," << cell.seed
                << ",,,,,,," << format_double(cell.wall_seconds) << "\n";
        }
        cells.push_back(c);
        write_json(out_dir / "cells" /
                       (cell.encoder + "_" + cell.ansatz + ".json"),
                   c);
    }
    doc["cells"] = cells;
    doc["cell_count"] = grid.cells.size();
    doc["failed_cells"] = failures;
    doc["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    atomic_write_text(out_dir / "grid_summary.csv", csv.str());
    write_json(out_dir / "grid_results.json", doc);
    return doc;
}

json run_learning_curve(const RunConfig &config, int workers) {
    if (config.encoder.empty() || config.ansatz.empty()) {
        throw Error(ErrorKind::Config,
                    "learning-curve needs circuit.encoder and circuit.ansatz");
    }
    const auto start = std::chrono::steady_clock::now();
    const auto enc = EncoderSpec::parse(config.encoder);
    const auto ans = AnsatzSpec::parse(config.ansatz);
    const std::vector<double> ratios = config.lc_ratios.empty()
                                           ? default_learning_curve_ratios()
                                           : config.lc_ratios;

    Dataset raw = load_table(config.dataset_path, config.target_column);
    check_feature_arity(config, raw.n_cols);

    PipelineOptions options;
    options.pca_components = config.pca_components;
    options.train_ratio = config.train_ratio;
    options.split_seed = config.split_seed;

    TrainSetup setup;
    setup.n_qubits = config.n_qubits;
    setup.rud = config.rud;
    setup.ansatz_layers = config.ansatz_layers;
    setup.redundancy = config.redundancy;
    setup.spsa = config.spsa;

    const LearningCurveResult curve =
        learning_curve(raw, options, ratios, enc, ans, setup,
                       config.ridge_lambda, workers);

    json doc = base_manifest("learning-curve", config);
    doc["ratios"] = ratios;
    json points = json::array();
    std::ostringstream csv;
    csv << "ratio,n_train,pqc_r2_train,pqc_r2_test,pqc_mae_train,"
           "pqc_mae_test,ridge_r2_train,ridge_r2_test,ridge_mae_train,"
           "ridge_mae_test\n";
    for (const auto &point : curve.points) {
        points.push_back({{"ratio", point.ratio},
                          {"n_train", point.n_train},
                          {"pqc", metrics_to_json(point.pqc)},
                          {"ridge", metrics_to_json(point.ridge)},
                          {"theta_digest", point.theta_digest},
                          {"test_indices", point.test_indices},
                          {"wall_seconds", point.wall_seconds}});
        csv << format_double(point.ratio) << "," << point.n_train << ","
            << format_double(point.pqc.r2_train) << ","
            << format_double(point.pqc.r2_test) << ","
            << format_double(point.pqc.mae_train) << ","
            << format_double(point.pqc.mae_test) << ","
            << format_double(point.ridge.r2_train) << ","
            << format_double(point.ridge.r2_test) << ","
            << format_double(point.ridge.mae_train) << ","
            << format_double(point.ridge.mae_test) << "\n";
    }
    doc["points"] = points;
    doc["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    const fs::path out_dir(config.output_dir);
    atomic_write_text(out_dir / "learning_curve_summary.csv", csv.str());
    write_json(out_dir / "learning_curve.json", doc);
    return doc;
}

std::string describe_from_names(const std::string &encoder,
                                const std::string &ansatz, int n_qubits,
                                int rud, int ansatz_layers, int redundancy) {
    CircuitSpec spec;
    spec.encoder = EncoderSpec::parse(encoder);
    spec.ansatz = AnsatzSpec::parse(ansatz);
    spec.n_qubits = n_qubits;
    spec.rud = rud;
    spec.ansatz_layers = ansatz_layers;
    spec.redundancy = redundancy;
    spec.validate();
    return describe_circuit(spec);
}

void synth_to_file(const std::string &kind, std::size_t rows,
                   std::size_t features, std::uint64_t seed,
                   const std::string &path) {
    const Dataset ds =
        synth_dataset(synth_kind_from_string(kind), rows, features, seed);
    if (fs::path(path).has_parent_path()) {
        std::error_code ec;
        fs::create_directories(fs::path(path).parent_path(), ec);
    }
    save_table(ds, path, "target");
}

} // namespace pqcreg
