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
 * Dataset handling: delimited-table IO, [-1, 1] min-max scaling, PCA by
 * covariance eigendecomposition, deterministic splits, and synthetic
 * dataset generators for tests and benchmarks.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pqcreg {

/// Feature matrix (row-major N x d) plus target vector. All entries are
/// finite; immutable by convention after construction.
struct Dataset {
    std::size_t n_rows{0};
    std::size_t n_cols{0};
    std::vector<double> x; // n_rows * n_cols, row-major
    std::vector<double> y; // n_rows
    std::vector<std::string> feature_names;

    [[nodiscard]] double at(std::size_t row, std::size_t col) const {
        return x[row * n_cols + col];
    }
    double &at(std::size_t row, std::size_t col) {
        return x[row * n_cols + col];
    }
    [[nodiscard]] const double *row(std::size_t r) const {
        return x.data() + r * n_cols;
    }

    /// Enforces the type invariants (sizes, N >= 1, d >= 1, finiteness).
    void validate() const;
};

/// Comma-delimited text with a header row; the named column becomes the
/// target, all others become features in file order.
[[nodiscard]] Dataset load_table(const std::string &path,
                                 const std::string &target_column);

/// Inverse of load_table (17 significant digits, round-trips within
/// 1e-12).
void save_table(const Dataset &dataset, const std::string &path,
                const std::string &target_column = "target");

/// Per-column affine map onto [-1, 1], fit on training data only. The
/// target column gets the same treatment as the features.
struct MinMaxScaler {
    std::vector<double> x_min, x_max;
    double y_min{0.0}, y_max{0.0};

    static MinMaxScaler fit(const Dataset &train);

    struct Applied {
        Dataset data;
        std::size_t clipped_features{0};
        std::size_t clipped_target{0};
    };

    /// Scale a dataset; values outside [-1, 1] (possible for rows unseen
    /// at fit time) are clipped and counted.
    [[nodiscard]] Applied apply(const Dataset &dataset) const;

    /// Undo the scaling; exact inverse on non-constant columns.
    [[nodiscard]] Dataset invert(const Dataset &scaled) const;

    [[nodiscard]] double scale_target(double value) const;
    [[nodiscard]] double invert_target(double scaled) const;
    [[nodiscard]] std::vector<double>
    invert_target(const std::vector<double> &scaled) const;
};

/// Principal components of the training features: orthonormal rows in
/// descending explained-variance order, sign fixed so each component's
/// largest-magnitude entry is positive.
struct PcaModel {
    std::size_t d{0};
    std::size_t r{0};
    std::vector<double> mean;               // d
    std::vector<double> components;         // r x d, row-major
    std::vector<double> explained_variance; // r, nonincreasing
};

[[nodiscard]] PcaModel fit_pca(const Dataset &train, std::size_t components);

/// Project features: (x - mean) . components^T. Targets pass through.
[[nodiscard]] Dataset apply_pca(const PcaModel &model,
                                const Dataset &dataset);

/// Split recipe: the test share is pinned at 20%; the training share may
/// be anything in (0, 0.8]. The same seed always produces the same
/// permutation, so the test partition is identical for every train_ratio.
struct SplitSpec {
    double train_ratio{0.8};
    std::uint64_t seed{0};
};

inline constexpr double kTestRatio = 0.2;

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

[[nodiscard]] Split split(const Dataset &dataset, const SplitSpec &spec);

enum class SynthKind { Cosine, Linear, WideGaussian };

[[nodiscard]] SynthKind synth_kind_from_string(const std::string &name);
[[nodiscard]] const char *synth_kind_name(SynthKind kind);

/// Synthetic datasets with committed ground truths:
///  - cosine:        y = cos(sum_i x_i + 0.3), features uniform on [-1,1]
///  - linear:        y = sum_i (1 + i/10) x_i + 0.1
///  - wide-gaussian: y ~ Normal(90.7, 27.5^2), independent of X
[[nodiscard]] Dataset synth_dataset(SynthKind kind, std::size_t n_rows,
                                    std::size_t n_features,
                                    std::uint64_t seed);

} // namespace pqcreg
