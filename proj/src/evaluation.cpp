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

#include "pqcreg/evaluation.hpp"

#include "pqcreg/errors.hpp"
#include "pqcreg/fsutil.hpp"
#include "pqcreg/parallel.hpp"
#include "pqcreg/rng.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace pqcreg {

namespace {

void check_lengths(std::span<const double> y, std::span<const double> y_hat,
                   const char *what) {
    if (y.size() != y_hat.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + " length mismatch: " +
                        std::to_string(y.size()) + " vs " +
                        std::to_string(y_hat.size()));
    }
    if (y.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + " requires at least one sample");
    }
}

double mean_of(std::span<const double> v) {
    double acc = 0.0;
    for (const double x : v) {
        acc += x;
    }
    return acc / static_cast<double>(v.size());
}

/// Population standard deviation (N in the denominator).
double std_of(std::span<const double> v) {
    const double m = mean_of(v);
    double acc = 0.0;
    for (const double x : v) {
        acc += (x - m) * (x - m);
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

double r2(std::span<const double> y, std::span<const double> y_hat) {
    check_lengths(y, y_hat, "r2");
    if (y.size() < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "r2 requires at least two samples");
    }
    const double y_mean = mean_of(y);
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
        ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
    }
    if (ss_tot <= 0.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "r2 undefined: target variance is zero");
    }
    return 1.0 - ss_res / ss_tot;
}

double mae(std::span<const double> y, std::span<const double> y_hat) {
    check_lengths(y, y_hat, "mae");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        acc += std::abs(y[i] - y_hat[i]);
    }
    return acc / static_cast<double>(y.size());
}

MetricsReport compute_metrics(std::span<const double> y_train,
                              std::span<const double> yhat_train,
                              std::span<const double> y_test,
                              std::span<const double> yhat_test) {
    MetricsReport report;
    report.r2_train = r2(y_train, yhat_train);
    report.r2_test = r2(y_test, yhat_test);
    report.mae_train = mae(y_train, yhat_train);
    report.mae_test = mae(y_test, yhat_test);
    report.mse_train = mse_loss(y_train, yhat_train);
    report.mse_test = mse_loss(y_test, yhat_test);
    return report;
}

std::string digest_hex(std::span<const double> values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const double v : values) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------
// Ridge.
// ---------------------------------------------------------------------

RidgeModel ridge_fit(const Dataset &train, double lambda) {
    train.validate();
    if (lambda < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "lambda must be >= 0");
    }
    const auto n = static_cast<Eigen::Index>(train.n_rows);
    const auto d = static_cast<Eigen::Index>(train.n_cols);

    Eigen::MatrixXd G(n, d + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            G(i, j) = train.at(static_cast<std::size_t>(i),
                               static_cast<std::size_t>(j));
        }
        G(i, d) = 1.0; // intercept column, left unregularized
    }
    Eigen::Map<const Eigen::VectorXd> y(train.y.data(), n);

    Eigen::MatrixXd A = G.transpose() * G;
    for (Eigen::Index j = 0; j < d; ++j) {
        A(j, j) += lambda;
    }
    const Eigen::VectorXd b = G.transpose() * y;

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) {
        throw Error(ErrorKind::Compute,
                    "ridge normal equations are singular; use lambda > 0");
    }
    const Eigen::VectorXd w = lu.solve(b);

    RidgeModel model;
    model.weights.assign(w.data(), w.data() + d);
    model.intercept = w(d);
    return model;
}

std::vector<double> ridge_predict(const RidgeModel &model,
                                  const Dataset &dataset) {
    if (dataset.n_cols != model.weights.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "ridge model was fit on a different feature count");
    }
    std::vector<double> out(dataset.n_rows, model.intercept);
    for (std::size_t i = 0; i < dataset.n_rows; ++i) {
        for (std::size_t j = 0; j < dataset.n_cols; ++j) {
            out[i] += model.weights[j] * dataset.at(i, j);
        }
    }
    return out;
}

MetricsReport ridge_baseline(const Dataset &train, const Dataset &test,
                             double lambda) {
    const RidgeModel model = ridge_fit(train, lambda);
    const auto yhat_train = ridge_predict(model, train);
    const auto yhat_test = ridge_predict(model, test);
    return compute_metrics(train.y, yhat_train, test.y, yhat_test);
}

// ---------------------------------------------------------------------
// Pipeline preparation.
// ---------------------------------------------------------------------

PreparedData prepare_data(const Dataset &raw, const PipelineOptions &options) {
    Split parts = split(raw, SplitSpec{options.train_ratio,
                                       options.split_seed});

    PreparedData out;
    out.train_indices = std::move(parts.train_indices);
    out.test_indices = std::move(parts.test_indices);
    out.y_train_orig = parts.train.y;
    out.y_test_orig = parts.test.y;

    Dataset train = std::move(parts.train);
    Dataset test = std::move(parts.test);
    if (options.pca_components) {
        out.pca = fit_pca(train, *options.pca_components);
        train = apply_pca(*out.pca, train);
        test = apply_pca(*out.pca, test);
    }

    out.scaler = MinMaxScaler::fit(train);
    auto train_applied = out.scaler.apply(train);
    auto test_applied = out.scaler.apply(test);
    out.clipped_features_test = test_applied.clipped_features;
    out.clipped_target_test = test_applied.clipped_target;
    out.train_scaled = std::move(train_applied.data);
    out.test_scaled = std::move(test_applied.data);
    return out;
}

SingleRunResult run_pqc(const EncoderSpec &encoder, const AnsatzSpec &ansatz,
                        const PreparedData &data, const TrainSetup &setup,
                        std::uint64_t seed, int workers) {
    CircuitSpec spec;
    spec.n_qubits = setup.n_qubits;
    spec.encoder = encoder;
    spec.ansatz = ansatz;
    spec.rud = setup.rud;
    spec.ansatz_layers = setup.ansatz_layers;
    spec.redundancy = setup.redundancy;
    const CircuitTemplate tmpl = assemble_pqc(spec);

    if (static_cast<std::size_t>(tmpl.n_features) !=
        data.train_scaled.n_cols) {
        throw Error(ErrorKind::Config,
                    "circuit expects " + std::to_string(tmpl.n_features) +
                        " features but the prepared data has " +
                        std::to_string(data.train_scaled.n_cols));
    }

    SpsaConfig config = setup.spsa;
    config.seed = seed;
    SingleRunResult result;
    result.record = spsa_minimize(tmpl, data.train_scaled, config, workers);

    const auto scaled_train = predict_batch(tmpl, result.record.final_theta,
                                            data.train_scaled, workers);
    const auto scaled_test = predict_batch(tmpl, result.record.final_theta,
                                           data.test_scaled, workers);
    result.yhat_train = data.scaler.invert_target(scaled_train);
    result.yhat_test = data.scaler.invert_target(scaled_test);
    result.metrics = compute_metrics(data.y_train_orig, result.yhat_train,
                                     data.y_test_orig, result.yhat_test);
    return result;
}

// ---------------------------------------------------------------------
// Protocols.
// ---------------------------------------------------------------------

GridResult grid_sweep(const std::vector<std::string> &encoders,
                      const std::vector<std::string> &ansatze,
                      const PreparedData &data, const TrainSetup &setup,
                      int workers) {
    if (encoders.empty() || ansatze.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    "grid sweep needs nonempty encoder and ansatz lists");
    }

    GridResult result;
    result.cells.resize(encoders.size() * ansatze.size());
    for (std::size_t e = 0; e < encoders.size(); ++e) {
        for (std::size_t a = 0; a < ansatze.size(); ++a) {
            auto &cell = result.cells[e * ansatze.size() + a];
            cell.encoder = encoders[e];
            cell.ansatz = ansatze[a];
            cell.seed =
                rng::derive_seed(setup.spsa.seed, encoders[e], ansatze[a]);
        }
    }

    // Cells are independent jobs; each writes only its own slot.
    parallel_for(result.cells.size(), workers, [&](std::size_t idx) {
        auto &cell = result.cells[idx];
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto enc = EncoderSpec::parse(cell.encoder);
            const auto ans = AnsatzSpec::parse(cell.ansatz);
            const auto run = run_pqc(enc, ans, data, setup, cell.seed, 1);
            cell.metrics = run.metrics;
            cell.theta_digest = digest_hex(run.record.final_theta);
            cell.ok = true;
        } catch (const std::exception &e) {
            cell.ok = false;
            cell.error = e.what();
        }
        cell.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
    });
    return result;
}

LearningCurveResult learning_curve(const Dataset &raw,
                                   const PipelineOptions &base,
                                   const std::vector<double> &ratios,
                                   const EncoderSpec &encoder,
                                   const AnsatzSpec &ansatz,
                                   const TrainSetup &setup,
                                   double ridge_lambda, int workers) {
    if (ratios.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    "learning curve needs at least one ratio");
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        if (!(ratios[i] > ratios[i - 1])) {
            throw Error(ErrorKind::InvalidArgument,
                        "learning-curve ratios must be strictly increasing");
        }
    }

    LearningCurveResult result;
    result.points.resize(ratios.size());
    parallel_for(ratios.size(), workers, [&](std::size_t idx) {
        const auto start = std::chrono::steady_clock::now();
        PipelineOptions options = base;
        options.train_ratio = ratios[idx];
        const PreparedData data = prepare_data(raw, options);

        auto &point = result.points[idx];
        point.ratio = ratios[idx];
        point.n_train = data.train_scaled.n_rows;
        point.test_indices = data.test_indices;

        const auto run =
            run_pqc(encoder, ansatz, data, setup, setup.spsa.seed, 1);
        point.pqc = run.metrics;
        point.theta_digest = digest_hex(run.record.final_theta);

        // Ridge sees the same scaled features but fits original-unit
        // targets, so its metrics come out in original units directly.
        Dataset ridge_train = data.train_scaled;
        ridge_train.y = data.y_train_orig;
        Dataset ridge_test = data.test_scaled;
        ridge_test.y = data.y_test_orig;
        point.ridge = ridge_baseline(ridge_train, ridge_test, ridge_lambda);

        point.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
    });
    return result;
}

DepthScanResult depth_scan(const PreparedData &data,
                           const EncoderSpec &encoder,
                           const AnsatzSpec &ansatz,
                           const std::vector<int> &rud_values,
                           const std::vector<int> &layer_values,
                           const TrainSetup &base, int workers) {
    if (rud_values.empty() || layer_values.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    "depth scan needs nonempty depth lists");
    }
    DepthScanResult result;
    result.cells.resize(rud_values.size() * layer_values.size());
    for (std::size_t i = 0; i < rud_values.size(); ++i) {
        for (std::size_t j = 0; j < layer_values.size(); ++j) {
            auto &cell = result.cells[i * layer_values.size() + j];
            cell.rud = rud_values[i];
            cell.ansatz_layers = layer_values[j];
            cell.seed = rng::derive_seed(
                base.spsa.seed, encoder.name + "#k" + std::to_string(cell.rud),
                ansatz.name + "#v" + std::to_string(cell.ansatz_layers));
        }
    }

    parallel_for(result.cells.size(), workers, [&](std::size_t idx) {
        auto &cell = result.cells[idx];
        try {
            TrainSetup setup = base;
            setup.rud = cell.rud;
            setup.ansatz_layers = cell.ansatz_layers;
            cell.total_params =
                static_cast<long>(cell.rud) * cell.ansatz_layers *
                ansatz_param_count(ansatz.kind, setup.n_qubits);
            const auto run = run_pqc(encoder, ansatz, data, setup,
                                     cell.seed, 1);
            cell.metrics = run.metrics;
            cell.ok = true;
        } catch (const std::exception &e) {
            cell.ok = false;
            cell.error = e.what();
        }
    });
    return result;
}

void parity_export(std::span<const double> y, std::span<const double> y_hat,
                   const std::string &path) {
    check_lengths(y, y_hat, "parity_export");
    std::ostringstream os;
    os << "reference,predicted\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
        os << format_double(y[i]) << "," << format_double(y_hat[i]) << "\n";
    }
    os << "# mean," << format_double(mean_of(y)) << ","
       << format_double(mean_of(y_hat)) << "\n";
    os << "# std," << format_double(std_of(y)) << ","
       << format_double(std_of(y_hat)) << "\n";
    atomic_write_text(path, os.str());
}

} // namespace pqcreg
