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
 * Regression metrics, the closed-form ridge baseline, and the experiment
 * protocols: grid sweeps over encoder/ansatz pairs, learning curves with
 * a ratio-invariant test partition, and ansatz-layer/re-upload depth
 * scans.
 *
 * Metric units: predictions are made in scaled space and inverted before
 * scoring, so MAE/MSE are in the original target units. R^2 is invariant
 * under that affine change.
 */

#pragma once

#include "pqcreg/circuits.hpp"
#include "pqcreg/data.hpp"
#include "pqcreg/training.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pqcreg {

struct MetricsReport {
    double r2_train{0.0};
    double r2_test{0.0};
    double mae_train{0.0};
    double mae_test{0.0};
    double mse_train{0.0};
    double mse_test{0.0};
};

/// Coefficient of determination 1 - SS_res/SS_tot. Needs >= 2 samples
/// and Var(y) > 0 (a constant target raises a degenerate-target error
/// rather than returning NaN).
[[nodiscard]] double r2(std::span<const double> y,
                        std::span<const double> y_hat);

/// Mean absolute error.
[[nodiscard]] double mae(std::span<const double> y,
                         std::span<const double> y_hat);

[[nodiscard]] MetricsReport compute_metrics(std::span<const double> y_train,
                                            std::span<const double> yhat_train,
                                            std::span<const double> y_test,
                                            std::span<const double> yhat_test);

/// Short fingerprint of a parameter vector for result tables.
[[nodiscard]] std::string digest_hex(std::span<const double> values);

// ---------------------------------------------------------------------
// Ridge baseline.
// ---------------------------------------------------------------------

struct RidgeModel {
    std::vector<double> weights;
    double intercept{0.0};
};

/// Closed form (X^T X + lambda I)^-1 X^T y with an unregularized
/// intercept via column augmentation. lambda = 0 on a singular system is
/// rejected with advice to use lambda > 0.
[[nodiscard]] RidgeModel ridge_fit(const Dataset &train, double lambda);

[[nodiscard]] std::vector<double> ridge_predict(const RidgeModel &model,
                                                const Dataset &dataset);

[[nodiscard]] MetricsReport ridge_baseline(const Dataset &train,
                                           const Dataset &test, double lambda);

// ---------------------------------------------------------------------
// Prepared pipeline data shared by the protocols.
// ---------------------------------------------------------------------

struct PipelineOptions {
    std::optional<std::size_t> pca_components;
    double train_ratio{0.8};
    std::uint64_t split_seed{0};
};

/// Split -> (optional) PCA fit on train -> min-max scaling fit on train.
/// Targets are scaled alongside features; original-unit targets are kept
/// for metric reporting.
struct PreparedData {
    Dataset train_scaled;
    Dataset test_scaled;
    std::vector<double> y_train_orig;
    std::vector<double> y_test_orig;
    MinMaxScaler scaler;
    std::optional<PcaModel> pca;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::size_t clipped_features_test{0};
    std::size_t clipped_target_test{0};
};

[[nodiscard]] PreparedData prepare_data(const Dataset &raw,
                                        const PipelineOptions &options);

/// Structural and optimizer knobs shared by every run in a protocol.
/// spsa.seed acts as the run seed.
struct TrainSetup {
    int n_qubits{1};
    int rud{1};
    int ansatz_layers{1};
    int redundancy{1};
    SpsaConfig spsa;
};

struct SingleRunResult {
    MetricsReport metrics;
    TrainRecord record;
    std::vector<double> yhat_train; // original units
    std::vector<double> yhat_test;  // original units
};

/// Train one PQC on the prepared data with an explicit seed and score it
/// in original units.
[[nodiscard]] SingleRunResult run_pqc(const EncoderSpec &encoder,
                                      const AnsatzSpec &ansatz,
                                      const PreparedData &data,
                                      const TrainSetup &setup,
                                      std::uint64_t seed, int workers = 1);

// ---------------------------------------------------------------------
// Protocols.
// ---------------------------------------------------------------------

struct GridCell {
    std::string encoder;
    std::string ansatz;
    bool ok{false};
    std::string error;
    MetricsReport metrics{};
    double wall_seconds{0.0};
    std::string theta_digest;
    std::uint64_t seed{0};
};

struct GridResult {
    std::vector<GridCell> cells;
};

/// One independent training run per (encoder, ansatz) pair. Each cell
/// seed is derived from (run seed, encoder, ansatz) only; failed cells
/// record their error and the sweep continues.
[[nodiscard]] GridResult grid_sweep(const std::vector<std::string> &encoders,
                                    const std::vector<std::string> &ansatze,
                                    const PreparedData &data,
                                    const TrainSetup &setup, int workers = 1);

struct LearningCurvePoint {
    double ratio{0.0};
    std::size_t n_train{0};
    MetricsReport pqc;
    MetricsReport ridge;
    std::vector<std::size_t> test_indices;
    std::string theta_digest;
    double wall_seconds{0.0};
};

struct LearningCurveResult {
    std::vector<LearningCurvePoint> points;
};

inline const std::vector<double> &default_learning_curve_ratios() {
    static const std::vector<double> ratios = {0.1, 0.3, 0.5, 0.7, 0.8};
    return ratios;
}

/// PQC and ridge scores per training ratio. The split seed is held
/// fixed, so the test partition is identical across ratios and smaller
/// training sets are strict subsets of larger ones.
[[nodiscard]] LearningCurveResult
learning_curve(const Dataset &raw, const PipelineOptions &base,
               const std::vector<double> &ratios, const EncoderSpec &encoder,
               const AnsatzSpec &ansatz, const TrainSetup &setup,
               double ridge_lambda, int workers = 1);

struct DepthScanCell {
    int rud{1};
    int ansatz_layers{1};
    long total_params{0};
    bool ok{false};
    std::string error;
    MetricsReport metrics{};
    std::uint64_t seed{0};
};

struct DepthScanResult {
    std::vector<DepthScanCell> cells;
};

/// Sweep re-upload depth and ansatz-layer count over their cross
/// product (k outer, v inner).
[[nodiscard]] DepthScanResult
depth_scan(const PreparedData &data, const EncoderSpec &encoder,
           const AnsatzSpec &ansatz, const std::vector<int> &rud_values,
           const std::vector<int> &layer_values, const TrainSetup &base,
           int workers = 1);

/// Two-column (reference, predicted) delimited file with trailing
/// "# mean" / "# std" summary rows, for external parity plotting.
void parity_export(std::span<const double> y, std::span<const double> y_hat,
                   const std::string &path);

} // namespace pqcreg
