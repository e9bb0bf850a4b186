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

#include "pqcreg/data.hpp"

#include "pqcreg/errors.hpp"
#include "pqcreg/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pqcreg {

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back("");
    }
    return cells;
}

double parse_cell(const std::string &cell, std::size_t file_row,
                  const std::string &column) {
    double value = 0.0;
    const char *first = cell.data();
    const char *last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorKind::Io, "non-numeric cell \"" + cell +
                                       "\" at row " +
                                       std::to_string(file_row) +
                                       ", column \"" + column + "\"");
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// floor(n * ratio) with a tiny slack so that exact-intent products like
/// 100 * 0.2 do not land just below the integer.
std::size_t floor_share(std::size_t n, double ratio) {
    return static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * ratio + 1e-9));
}

} // namespace

void Dataset::validate() const {
    if (n_rows < 1 || n_cols < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "dataset needs at least one row and one feature");
    }
    if (x.size() != n_rows * n_cols || y.size() != n_rows ||
        feature_names.size() != n_cols) {
        throw Error(ErrorKind::InvalidArgument,
                    "dataset buffers are inconsistent with its shape");
    }
    for (const double v : x) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::InvalidArgument,
                        "dataset contains a non-finite feature value");
        }
    }
    for (const double v : y) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::InvalidArgument,
                        "dataset contains a non-finite target value");
        }
    }
}

Dataset load_table(const std::string &path, const std::string &target_column) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open \"" + path + "\" for reading");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::Io, "\"" + path + "\" is empty");
    }
    const auto header = split_line(line);
    if (header.empty()) {
        throw Error(ErrorKind::Io, "\"" + path + "\" has an empty header row");
    }

    std::size_t target_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == target_column) {
            target_idx = i;
            break;
        }
    }
    if (target_idx == header.size()) {
        throw Error(ErrorKind::Io, "target column \"" + target_column +
                                       "\" not found in \"" + path + "\"");
    }
    if (header.size() < 2) {
        throw Error(ErrorKind::Io,
                    "\"" + path + "\" has no feature columns");
    }

    Dataset ds;
    ds.n_cols = header.size() - 1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != target_idx) {
            ds.feature_names.push_back(header[i]);
        }
    }

    std::size_t file_row = 1;
    while (std::getline(in, line)) {
        ++file_row;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::Io,
                        "row " + std::to_string(file_row) + " of \"" + path +
                            "\" has " + std::to_string(cells.size()) +
                            " cells, header has " +
                            std::to_string(header.size()));
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const double value = parse_cell(cells[i], file_row, header[i]);
            if (i == target_idx) {
                ds.y.push_back(value);
            } else {
                ds.x.push_back(value);
            }
        }
        ++ds.n_rows;
    }
    if (ds.n_rows == 0) {
        throw Error(ErrorKind::Io, "\"" + path + "\" has no data rows");
    }
    ds.validate();
    return ds;
}

void save_table(const Dataset &dataset, const std::string &path,
                const std::string &target_column) {
    dataset.validate();
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open \"" + path + "\" for writing");
    }
    for (const auto &name : dataset.feature_names) {
        out << name << ",";
    }
    out << target_column << "\n";
    for (std::size_t i = 0; i < dataset.n_rows; ++i) {
        for (std::size_t j = 0; j < dataset.n_cols; ++j) {
            out << format_double(dataset.at(i, j)) << ",";
        }
        out << format_double(dataset.y[i]) << "\n";
    }
    if (!out.good()) {
        throw Error(ErrorKind::Io, "failed writing \"" + path + "\"");
    }
}

// ---------------------------------------------------------------------
// Scaling.
// ---------------------------------------------------------------------

namespace {

double scale_value(double v, double lo, double hi) {
    if (hi <= lo) {
        return 0.0; // constant column
    }
    return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

double invert_value(double s, double lo, double hi) {
    if (hi <= lo) {
        return lo;
    }
    return (s + 1.0) / 2.0 * (hi - lo) + lo;
}

} // namespace

MinMaxScaler MinMaxScaler::fit(const Dataset &train) {
    train.validate();
    MinMaxScaler scaler;
    scaler.x_min.assign(train.n_cols, 0.0);
    scaler.x_max.assign(train.n_cols, 0.0);
    for (std::size_t j = 0; j < train.n_cols; ++j) {
        double lo = train.at(0, j);
        double hi = train.at(0, j);
        for (std::size_t i = 1; i < train.n_rows; ++i) {
            lo = std::min(lo, train.at(i, j));
            hi = std::max(hi, train.at(i, j));
        }
        scaler.x_min[j] = lo;
        scaler.x_max[j] = hi;
    }
    scaler.y_min = *std::min_element(train.y.begin(), train.y.end());
    scaler.y_max = *std::max_element(train.y.begin(), train.y.end());
    return scaler;
}

MinMaxScaler::Applied MinMaxScaler::apply(const Dataset &dataset) const {
    if (dataset.n_cols != x_min.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "scaler was fit on a different feature count");
    }
    Applied result;
    result.data = dataset;
    for (std::size_t i = 0; i < dataset.n_rows; ++i) {
        for (std::size_t j = 0; j < dataset.n_cols; ++j) {
            double s = scale_value(dataset.at(i, j), x_min[j], x_max[j]);
            if (s < -1.0 || s > 1.0) {
                s = std::clamp(s, -1.0, 1.0);
                ++result.clipped_features;
            }
            result.data.at(i, j) = s;
        }
        double t = scale_value(dataset.y[i], y_min, y_max);
        if (t < -1.0 || t > 1.0) {
            t = std::clamp(t, -1.0, 1.0);
            ++result.clipped_target;
        }
        result.data.y[i] = t;
    }
    return result;
}

Dataset MinMaxScaler::invert(const Dataset &scaled) const {
    if (scaled.n_cols != x_min.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "scaler was fit on a different feature count");
    }
    Dataset out = scaled;
    for (std::size_t i = 0; i < scaled.n_rows; ++i) {
        for (std::size_t j = 0; j < scaled.n_cols; ++j) {
            out.at(i, j) = invert_value(scaled.at(i, j), x_min[j], x_max[j]);
        }
        out.y[i] = invert_value(scaled.y[i], y_min, y_max);
    }
    return out;
}

double MinMaxScaler::scale_target(double value) const {
    return scale_value(value, y_min, y_max);
}

double MinMaxScaler::invert_target(double scaled) const {
    return invert_value(scaled, y_min, y_max);
}

std::vector<double>
MinMaxScaler::invert_target(const std::vector<double> &scaled) const {
    std::vector<double> out(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        out[i] = invert_value(scaled[i], y_min, y_max);
    }
    return out;
}

// ---------------------------------------------------------------------
// PCA.
// ---------------------------------------------------------------------

PcaModel fit_pca(const Dataset &train, std::size_t components) {
    train.validate();
    if (train.n_rows < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "PCA needs at least two training rows");
    }
    if (components < 1 ||
        components > std::min(train.n_rows, train.n_cols)) {
        throw Error(ErrorKind::InvalidArgument,
                    "PCA component count " + std::to_string(components) +
                        " outside [1, min(N, d)] = [1, " +
                        std::to_string(std::min(train.n_rows, train.n_cols)) +
                        "]");
    }

    const auto n = static_cast<Eigen::Index>(train.n_rows);
    const auto d = static_cast<Eigen::Index>(train.n_cols);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        X(train.x.data(), n, d);

    const Eigen::RowVectorXd mean = X.colwise().mean();
    const Eigen::MatrixXd centered = X.rowwise() - mean;
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(n - 1);

    // Symmetric eigendecomposition; Eigen returns eigenvalues ascending.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) {
        throw Error(ErrorKind::Compute, "PCA eigendecomposition failed");
    }

    PcaModel model;
    model.d = train.n_cols;
    model.r = components;
    model.mean.assign(mean.data(), mean.data() + d);
    model.components.resize(components * train.n_cols);
    model.explained_variance.resize(components);

    for (std::size_t k = 0; k < components; ++k) {
        const auto src = d - 1 - static_cast<Eigen::Index>(k);
        Eigen::VectorXd v = eig.eigenvectors().col(src);
        // Sign convention: largest-magnitude entry positive.
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) {
            v = -v;
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            model.components[k * train.n_cols +
                             static_cast<std::size_t>(j)] = v(j);
        }
        model.explained_variance[k] = eig.eigenvalues()(src);
    }
    return model;
}

Dataset apply_pca(const PcaModel &model, const Dataset &dataset) {
    if (dataset.n_cols != model.d) {
        throw Error(ErrorKind::InvalidArgument,
                    "PCA model was fit on a different feature count");
    }
    Dataset out;
    out.n_rows = dataset.n_rows;
    out.n_cols = model.r;
    out.y = dataset.y;
    out.x.resize(dataset.n_rows * model.r);
    for (std::size_t k = 0; k < model.r; ++k) {
        out.feature_names.push_back("pc" + std::to_string(k + 1));
    }
    for (std::size_t i = 0; i < dataset.n_rows; ++i) {
        for (std::size_t k = 0; k < model.r; ++k) {
            double acc = 0.0;
            for (std::size_t j = 0; j < model.d; ++j) {
                acc += (dataset.at(i, j) - model.mean[j]) *
                       model.components[k * model.d + j];
            }
            out.at(i, k) = acc;
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// Splitting.
// ---------------------------------------------------------------------

Split split(const Dataset &dataset, const SplitSpec &spec) {
    dataset.validate();
    if (!(spec.train_ratio > 0.0) || spec.train_ratio > 0.8 + 1e-12) {
        throw Error(ErrorKind::InvalidArgument,
                    "train_ratio must be in (0, 0.8], got " +
                        std::to_string(spec.train_ratio));
    }
    const std::size_t n_test = floor_share(dataset.n_rows, kTestRatio);
    const std::size_t n_train = floor_share(dataset.n_rows, spec.train_ratio);
    if (n_test < 1 || n_train < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "too few rows (" + std::to_string(dataset.n_rows) +
                        ") for a " + std::to_string(spec.train_ratio) +
                        "/" + std::to_string(kTestRatio) + " split");
    }

    // Seeded Fisher-Yates; the permutation depends only on (seed, N), so
    // the leading test block is identical for every train_ratio.
    std::vector<std::size_t> perm(dataset.n_rows);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        perm[i] = i;
    }
    const rng::KeyedStream stream(spec.seed, rng::Stream::SplitPermutation);
    std::uint64_t ctr = 0;
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(stream.u64(ctr++) % (i + 1));
        std::swap(perm[i], perm[j]);
    }

    auto take = [&](std::size_t begin, std::size_t count) {
        Dataset out;
        out.n_rows = count;
        out.n_cols = dataset.n_cols;
        out.feature_names = dataset.feature_names;
        out.x.reserve(count * dataset.n_cols);
        out.y.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t r = perm[begin + i];
            out.x.insert(out.x.end(), dataset.row(r),
                         dataset.row(r) + dataset.n_cols);
            out.y.push_back(dataset.y[r]);
        }
        return out;
    };

    Split result;
    result.test = take(0, n_test);
    result.train = take(n_test, n_train);
    result.test_indices.assign(perm.begin(),
                               perm.begin() + static_cast<long>(n_test));
    result.train_indices.assign(
        perm.begin() + static_cast<long>(n_test),
        perm.begin() + static_cast<long>(n_test + n_train));
    return result;
}

// ---------------------------------------------------------------------
// Synthetic datasets.
// ---------------------------------------------------------------------

SynthKind synth_kind_from_string(const std::string &name) {
    if (name == "cosine") {
        return SynthKind::Cosine;
    }
    if (name == "linear") {
        return SynthKind::Linear;
    }
    if (name == "wide-gaussian") {
        return SynthKind::WideGaussian;
    }
    throw Error(ErrorKind::Config,
                "unknown synthetic dataset kind \"" + name +
                    "\"; legal kinds are: cosine, linear, wide-gaussian");
}

const char *synth_kind_name(SynthKind kind) {
    switch (kind) {
    case SynthKind::Cosine:
        return "cosine";
    case SynthKind::Linear:
        return "linear";
    case SynthKind::WideGaussian:
        return "wide-gaussian";
    }
    return "?";
}

Dataset synth_dataset(SynthKind kind, std::size_t n_rows,
                      std::size_t n_features, std::uint64_t seed) {
    if (n_rows < 10) {
        throw Error(ErrorKind::InvalidArgument,
                    "synthetic datasets need at least 10 rows");
    }
    if (n_features < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "synthetic datasets need at least 1 feature");
    }

    Dataset ds;
    ds.n_rows = n_rows;
    ds.n_cols = n_features;
    ds.x.resize(n_rows * n_features);
    ds.y.resize(n_rows);
    for (std::size_t j = 0; j < n_features; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j + 1));
    }

    const rng::KeyedStream fx(seed, rng::Stream::SynthFeatures);
    const rng::KeyedStream fy(seed, rng::Stream::SynthTargets);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (std::size_t j = 0; j < n_features; ++j) {
            ds.at(i, j) = fx.uniform(i * n_features + j, -1.0, 1.0);
        }
    }

    switch (kind) {
    case SynthKind::Cosine:
        for (std::size_t i = 0; i < n_rows; ++i) {
            double arg = 0.3;
            for (std::size_t j = 0; j < n_features; ++j) {
                arg += ds.at(i, j);
            }
            ds.y[i] = std::cos(arg);
        }
        break;
    case SynthKind::Linear:
        for (std::size_t i = 0; i < n_rows; ++i) {
            double value = 0.1;
            for (std::size_t j = 0; j < n_features; ++j) {
                value += (1.0 + 0.1 * static_cast<double>(j)) * ds.at(i, j);
            }
            ds.y[i] = value;
        }
        break;
    case SynthKind::WideGaussian:
        for (std::size_t i = 0; i < n_rows; ++i) {
            ds.y[i] = 90.7 + 27.5 * fy.normal(i);
        }
        break;
    }
    return ds;
}

} // namespace pqcreg
