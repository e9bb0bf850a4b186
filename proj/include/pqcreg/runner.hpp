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

/**
 * @file
 * Run orchestration: JSON config parsing and validation, the train /
 * grid / learning-curve commands, and deterministic run manifests. A
 * manifest echoes its fully resolved config, so feeding a manifest file
 * back in reproduces the run bit-for-bit.
 */

#pragma once

#include "pqcreg/evaluation.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqcreg {

struct RunConfig {
    std::string dataset_path;
    std::string target_column{"target"};

    std::string encoder; // may stay empty for grid-only configs
    std::string ansatz;
    int n_qubits{0};
    int rud{1};
    int ansatz_layers{1};
    int redundancy{1};
    std::optional<std::size_t> pca_components;

    double train_ratio{0.8};
    std::uint64_t split_seed{0};

    SpsaConfig spsa; // spsa.seed is the run seed

    double ridge_lambda{1.0};
    std::string output_dir{"pqcreg-out"};

    std::vector<std::string> grid_encoders; // empty = all 14
    std::vector<std::string> grid_ansatze;  // empty = all 12
    std::vector<double> lc_ratios;          // empty = {0.1,0.3,0.5,0.7,0.8}
};

/// Read a JSON config file. A run manifest (an object with a "config"
/// key) is accepted too and unwrapped, so manifests can be re-run as-is.
[[nodiscard]] nlohmann::json load_config_file(const std::string &path);

/// Parse and validate a config document. Circuit names, depth knobs,
/// ratios, and optimizer settings are all checked here, before any
/// dataset is touched; unknown keys are rejected with field-level
/// messages. When optimizer.iterations is omitted it defaults by width:
/// 250 for n_qubits >= 16, else 1000.
[[nodiscard]] RunConfig parse_config(const nlohmann::json &doc);

/// Fully resolved echo of a config; parse_config(config_to_json(c)) == c.
[[nodiscard]] nlohmann::json config_to_json(const RunConfig &config);

/// Full pipeline: load -> split -> fit PCA/scaler on train -> assemble
/// PQC -> SPSA -> metrics. Writes manifest.json, loss_history.csv and
/// parity exports into output_dir and returns the manifest.
nlohmann::json run_train(const RunConfig &config, int workers = 0);

/// One training run per (encoder, ansatz) pair; failed cells are
/// recorded and the sweep continues. Writes grid_results.json, a flat
/// grid_summary.csv, and one mini-manifest per cell.
nlohmann::json run_grid(const RunConfig &config, int workers = 0);

/// PQC plus ridge baseline per training ratio against a fixed test
/// partition. Writes learning_curve.json and learning_curve_summary.csv.
nlohmann::json run_learning_curve(const RunConfig &config, int workers = 0);

/// Validate names and print the circuit report for the describe command.
[[nodiscard]] std::string describe_from_names(const std::string &encoder,
                                              const std::string &ansatz,
                                              int n_qubits, int rud,
                                              int ansatz_layers,
                                              int redundancy);

/// Generate a synthetic dataset and save it as a delimited table.
void synth_to_file(const std::string &kind, std::size_t rows,
                   std::size_t features, std::uint64_t seed,
                   const std::string &path);

} // namespace pqcreg
