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

// Command-line front end. Everything computational goes through the
// shared-library C API; this file only handles flags, the config file,
// environment overrides, and output summaries.
//
// Exit codes: 0 success, 2 configuration error, 3 compute/runtime error.

#include "pqcreg.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

int exit_code_for(pqcreg_status status) {
    switch (status) {
    case PQCREG_OK:
        return kExitOk;
    case PQCREG_ERR_CONFIG:
        return kExitConfig;
    default:
        return kExitCompute;
    }
}

struct CommonOpts {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    int workers = 0;
};

void add_common(CLI::App *cmd, CommonOpts &opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file")
        ->required();
    cmd->add_option("--out", opts.out_dir,
                    "override the config's output directory");
    cmd->add_option("--seed", opts.seed, "override the run seed");
    cmd->add_option("--workers", opts.workers,
                    "worker count for sweeps and batches (0 = auto)");
}

/// Load the config file, unwrap a manifest if one was given, and fold in
/// the command line / environment overrides. Precedence: flag > env >
/// config file.
std::string resolve_config(const CommonOpts &opts, std::string &error) {
    std::ifstream in(opts.config_path);
    if (!in) {
        error = "cannot open config file \"" + opts.config_path + "\"";
        return "";
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        error = "config file is not valid JSON: " + std::string(e.what());
        return "";
    }
    if (doc.is_object() && doc.contains("config") &&
        doc.at("config").is_object()) {
        doc = doc.at("config");
    }
    if (!doc.is_object()) {
        error = "config file must hold a JSON object";
        return "";
    }

    if (const char *env_out = std::getenv("PQCREG_OUT")) {
        doc["output_dir"] = env_out;
    }
    if (opts.out_dir) {
        doc["output_dir"] = *opts.out_dir;
    }
    if (opts.seed) {
        doc["optimizer"]["seed"] = *opts.seed;
    }
    return doc.dump();
}

int resolve_workers(const CommonOpts &opts) {
    if (opts.workers > 0) {
        return opts.workers;
    }
    if (const char *env = std::getenv("PQCREG_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return parsed;
        }
    }
    return 0; // library picks an automatic count
}

int report_failure(pqcreg_status status) {
    std::cerr << "error: " << pqcreg_last_error() << "\n";
    return exit_code_for(status);
}

int run_with(pqcreg_status (*entry)(const char *, int, char **),
             const CommonOpts &opts) {
    std::string error;
    const std::string config = resolve_config(opts, error);
    if (config.empty()) {
        std::cerr << "error: " << error << "\n";
        return kExitConfig;
    }

    char *result_json = nullptr;
    const pqcreg_status status =
        entry(config.c_str(), resolve_workers(opts), &result_json);
    if (status != PQCREG_OK) {
        return report_failure(status);
    }

    try {
        const json result = json::parse(result_json);
        std::cout << "output_dir: "
                  << result.at("config").at("output_dir").get<std::string>()
                  << "\n";
        if (result.contains("metrics")) {
            const auto &m = result.at("metrics");
            std::cout << "r2_train: " << m.at("r2_train")
                      << "  r2_test: " << m.at("r2_test")
                      << "  mae_test: " << m.at("mae_test") << "\n";
        }
        if (result.contains("cell_count")) {
            std::cout << "cells: " << result.at("cell_count")
                      << "  failed: " << result.at("failed_cells") << "\n";
        }
        if (result.contains("points")) {
            std::cout << "ratios: " << result.at("points").size() << "\n";
        }
    } catch (const json::exception &) {
        std::cout << result_json << "\n";
    }
    pqcreg_string_free(result_json);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"pqcreg - statevector simulation toolkit for training and "
                 "benchmarking parametrized quantum circuits on regression "
                 "tasks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pqcreg_version()));

    CommonOpts train_opts, grid_opts, lc_opts;
    auto *train = app.add_subcommand("train", "train one circuit end to end");
    add_common(train, train_opts);
    auto *grid = app.add_subcommand(
        "grid", "sweep encoder x ansatz pairs, one training run per cell");
    add_common(grid, grid_opts);
    auto *lc = app.add_subcommand("learning-curve",
                                  "PQC vs ridge across training ratios");
    add_common(lc, lc_opts);

    std::string d_encoder, d_ansatz;
    int d_qubits = 5, d_rud = 1, d_layers = 1, d_redundancy = 1;
    auto *describe =
        app.add_subcommand("describe", "print a circuit's gate layout");
    describe->add_option("--encoder", d_encoder, "encoder name")->required();
    describe->add_option("--ansatz", d_ansatz, "ansatz name")->required();
    describe->add_option("--qubits", d_qubits, "qubit count");
    describe->add_option("--rud", d_rud, "re-upload depth");
    describe->add_option("--layers", d_layers, "ansatz layers");
    describe->add_option("--redundancy", d_redundancy, "qubits per feature");

    std::string s_kind = "cosine", s_out = "synth.csv";
    std::size_t s_rows = 200, s_features = 1;
    std::uint64_t s_seed = 0;
    auto *synth =
        app.add_subcommand("synth", "generate a synthetic dataset file");
    synth->add_option("--kind", s_kind,
                      "cosine | linear | wide-gaussian");
    synth->add_option("--rows", s_rows, "sample count");
    synth->add_option("--features", s_features, "feature count");
    synth->add_option("--seed", s_seed, "generator seed");
    synth->add_option("--out", s_out, "output file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (train->parsed()) {
        return run_with(&pqcreg_run_train, train_opts);
    }
    if (grid->parsed()) {
        return run_with(&pqcreg_run_grid, grid_opts);
    }
    if (lc->parsed()) {
        return run_with(&pqcreg_run_learning_curve, lc_opts);
    }
    if (describe->parsed()) {
        char *text = nullptr;
        const pqcreg_status status =
            pqcreg_circuit_describe(d_encoder.c_str(), d_ansatz.c_str(),
                                    d_qubits, d_rud, d_layers, d_redundancy,
                                    &text);
        if (status != PQCREG_OK) {
            return report_failure(status);
        }
        std::cout << text;
        pqcreg_string_free(text);
        return kExitOk;
    }
    if (synth->parsed()) {
        pqcreg_dataset *dataset = nullptr;
        pqcreg_status status = pqcreg_dataset_synth(s_kind.c_str(), s_rows,
                                                    s_features, s_seed,
                                                    &dataset);
        if (status != PQCREG_OK) {
            return report_failure(status);
        }
        status = pqcreg_dataset_save(dataset, s_out.c_str());
        pqcreg_dataset_free(dataset);
        if (status != PQCREG_OK) {
            return report_failure(status);
        }
        std::cout << "wrote " << s_rows << " rows x " << s_features
                  << " features to " << s_out << "\n";
        return kExitOk;
    }
    return kExitConfig;
}
