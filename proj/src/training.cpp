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

#include "pqcreg/training.hpp"

#include "pqcreg/errors.hpp"
#include "pqcreg/parallel.hpp"

#include <chrono>
#include <cmath>

namespace pqcreg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dataset_for_template(const CircuitTemplate &tmpl,
                                const Dataset &dataset) {
    dataset.validate();
    if (static_cast<int>(dataset.n_cols) != tmpl.n_features) {
        throw Error(ErrorKind::InvalidArgument,
                    "dataset has " + std::to_string(dataset.n_cols) +
                        " features, template expects " +
                        std::to_string(tmpl.n_features));
    }
}

/// Loss gradient of the per-sample squared error, chained through MSE:
/// dL/dtheta_j = (2/N) sum_i (f_i - y_i) df_i/dtheta_j.
double chain_rule(const std::vector<double> &predictions,
                  const std::vector<double> &dpredictions,
                  std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        acc += (predictions[i] - y[i]) * dpredictions[i];
    }
    return 2.0 * acc / static_cast<double>(y.size());
}

} // namespace

void SpsaConfig::validate() const {
    if (!(a > 0.0) || !(c > 0.0)) {
        throw Error(ErrorKind::Config, "SPSA gains a and c must be > 0");
    }
    if (big_a < 0.0) {
        throw Error(ErrorKind::Config, "SPSA stability constant A must be >= 0");
    }
    if (!(alpha > 0.0) || alpha > 1.0 || !(gamma > 0.0) || gamma > 1.0) {
        throw Error(ErrorKind::Config,
                    "SPSA exponents alpha and gamma must lie in (0, 1]");
    }
    if (iterations < 1) {
        throw Error(ErrorKind::Config, "SPSA needs at least one iteration");
    }
}

double mse_loss(std::span<const double> y, std::span<const double> y_hat) {
    if (y.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    "mse_loss requires at least one sample");
    }
    if (y.size() != y_hat.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "mse_loss length mismatch: " + std::to_string(y.size()) +
                        " targets vs " + std::to_string(y_hat.size()) +
                        " predictions");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - y_hat[i];
        acc += d * d;
    }
    return acc / static_cast<double>(y.size());
}

std::vector<double> predict_batch(const CircuitTemplate &tmpl,
                                  std::span<const double> theta,
                                  const Dataset &dataset, int workers) {
    if (dataset.n_rows == 0) {
        return {};
    }
    check_dataset_for_template(tmpl, dataset);
    std::vector<double> out(dataset.n_rows);
    parallel_for(dataset.n_rows, workers, [&](std::size_t i) {
        out[i] = evaluate(
            tmpl, theta,
            std::span<const double>(dataset.row(i), dataset.n_cols));
    });
    return out;
}

double dataset_loss(const CircuitTemplate &tmpl, std::span<const double> theta,
                    const Dataset &dataset, int workers) {
    const auto predictions = predict_batch(tmpl, theta, dataset, workers);
    return mse_loss(dataset.y, predictions);
}

ParameterVector random_initial_theta(int count, std::uint64_t seed) {
    const rng::KeyedStream stream(seed, rng::Stream::ThetaInit);
    ParameterVector theta(static_cast<std::size_t>(count));
    for (std::size_t j = 0; j < theta.size(); ++j) {
        theta[j] = stream.uniform(j, -kPi, kPi);
    }
    return theta;
}

TrainRecord spsa_minimize(const CircuitTemplate &tmpl, const Dataset &dataset,
                          const SpsaConfig &config, int workers) {
    config.validate();
    check_dataset_for_template(tmpl, dataset);
    const auto start = std::chrono::steady_clock::now();

    const auto p = static_cast<std::size_t>(tmpl.total_params);
    ParameterVector theta = random_initial_theta(tmpl.total_params,
                                                 config.seed);
    const rng::KeyedStream delta_stream(config.seed, rng::Stream::SpsaDelta);

    TrainRecord record;
    record.loss_history.reserve(static_cast<std::size_t>(config.iterations));

    ParameterVector shifted(p);
    std::vector<double> delta(p);
    for (int t = 0; t < config.iterations; ++t) {
        const double a_t =
            config.a / std::pow(config.big_a + t + 1.0, config.alpha);
        const double c_t = config.c / std::pow(t + 1.0, config.gamma);

        for (std::size_t j = 0; j < p; ++j) {
            delta[j] = delta_stream.sign(
                static_cast<std::uint64_t>(t) * p + j);
        }

        for (std::size_t j = 0; j < p; ++j) {
            shifted[j] = theta[j] + c_t * delta[j];
        }
        const double loss_plus = dataset_loss(tmpl, shifted, dataset, workers);
        for (std::size_t j = 0; j < p; ++j) {
            shifted[j] = theta[j] - c_t * delta[j];
        }
        const double loss_minus = dataset_loss(tmpl, shifted, dataset, workers);
        if (!std::isfinite(loss_plus) || !std::isfinite(loss_minus)) {
            throw Error(ErrorKind::Compute,
                        "non-finite loss in SPSA probe at iteration " +
                            std::to_string(t));
        }

        // Delta components are +-1, so elementwise 1/Delta equals Delta.
        const double slope = (loss_plus - loss_minus) / (2.0 * c_t);
        for (std::size_t j = 0; j < p; ++j) {
            theta[j] -= a_t * slope * delta[j];
        }

        const double loss = dataset_loss(tmpl, theta, dataset, workers);
        if (!std::isfinite(loss)) {
            throw Error(ErrorKind::Compute,
                        "non-finite loss after SPSA update at iteration " +
                            std::to_string(t));
        }
        record.loss_history.emplace_back(t, loss);
    }

    record.final_theta = std::move(theta);
    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return record;
}

ParameterVector parameter_shift_gradient(const CircuitTemplate &tmpl,
                                         std::span<const double> theta,
                                         const Dataset &dataset, int workers) {
    check_dataset_for_template(tmpl, dataset);
    if (static_cast<int>(theta.size()) != tmpl.total_params) {
        throw Error(ErrorKind::InvalidArgument,
                    "parameter vector length does not match template");
    }

    // Locate each parameter's gate kind (each index is used exactly once).
    std::vector<GateKind> kinds(theta.size(), GateKind::RY);
    std::vector<bool> seen(theta.size(), false);
    for (const auto &slot : tmpl.slots) {
        if (slot.binding == Slot::Binding::Param) {
            kinds[static_cast<std::size_t>(slot.param)] = slot.kind;
            seen[static_cast<std::size_t>(slot.param)] = true;
        }
    }
    for (std::size_t j = 0; j < seen.size(); ++j) {
        if (!seen[j]) {
            throw Error(ErrorKind::InvalidArgument,
                        "parameter " + std::to_string(j) +
                            " is not bound to any slot");
        }
    }

    const auto base = predict_batch(tmpl, theta, dataset, 1);
    ParameterVector grad(theta.size(), 0.0);

    parallel_for(theta.size(), workers, [&](std::size_t j) {
        ParameterVector probe(theta.begin(), theta.end());
        auto predict_at = [&](double angle) {
            probe[j] = angle;
            return predict_batch(tmpl, probe, dataset, 1);
        };

        std::vector<double> df(dataset.n_rows, 0.0);
        switch (kinds[j]) {
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::RX: {
            const auto plus = predict_at(theta[j] + kPi / 2);
            const auto minus = predict_at(theta[j] - kPi / 2);
            for (std::size_t i = 0; i < df.size(); ++i) {
                df[i] = (plus[i] - minus[i]) / 2.0;
            }
            break;
        }
        case GateKind::CRZ:
        case GateKind::CRX: {
            // Four-term rule for generators with eigenvalues {0, +-1/2}:
            // f' = c+ [f(x+pi/2) - f(x-pi/2)] - c- [f(x+3pi/2) - f(x-3pi/2)]
            // with c+- = (sqrt(2) +- 1) / (4 sqrt(2)).
            const double root2 = std::sqrt(2.0);
            const double c_near = (root2 + 1.0) / (4.0 * root2);
            const double c_far = (root2 - 1.0) / (4.0 * root2);
            const auto p1 = predict_at(theta[j] + kPi / 2);
            const auto m1 = predict_at(theta[j] - kPi / 2);
            const auto p3 = predict_at(theta[j] + 3 * kPi / 2);
            const auto m3 = predict_at(theta[j] - 3 * kPi / 2);
            for (std::size_t i = 0; i < df.size(); ++i) {
                df[i] = c_near * (p1[i] - m1[i]) - c_far * (p3[i] - m3[i]);
            }
            break;
        }
        default:
            throw Error(ErrorKind::InvalidArgument,
                        std::string("parameter-shift rule unavailable for ") +
                            gate_name(kinds[j]) + " slots");
        }
        grad[j] = chain_rule(base, df, dataset.y);
    });
    return grad;
}

ParameterVector finite_difference_gradient(const CircuitTemplate &tmpl,
                                           std::span<const double> theta,
                                           const Dataset &dataset, double h,
                                           int workers) {
    if (!(h > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "finite-difference step must be > 0");
    }
    check_dataset_for_template(tmpl, dataset);
    if (static_cast<int>(theta.size()) != tmpl.total_params) {
        throw Error(ErrorKind::InvalidArgument,
                    "parameter vector length does not match template");
    }

    ParameterVector grad(theta.size(), 0.0);
    parallel_for(theta.size(), workers, [&](std::size_t j) {
        ParameterVector probe(theta.begin(), theta.end());
        probe[j] = theta[j] + h;
        const double plus = dataset_loss(tmpl, probe, dataset, 1);
        probe[j] = theta[j] - h;
        const double minus = dataset_loss(tmpl, probe, dataset, 1);
        grad[j] = (plus - minus) / (2.0 * h);
    });
    return grad;
}

} // namespace pqcreg
