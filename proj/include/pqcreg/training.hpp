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
 * Loss, batch prediction, SPSA minimization, and two independent gradient
 * routes (parameter-shift and central finite differences) used to verify
 * each other.
 *
 * Determinism contract: every random draw (initial angles, SPSA
 * perturbations) is a pure function of (seed, iteration, index) through a
 * counter-based stream, so a fixed seed reproduces a run bit-for-bit no
 * matter how the per-sample work is scheduled.
 */

#pragma once

#include "pqcreg/circuits.hpp"
#include "pqcreg/data.hpp"
#include "pqcreg/rng.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pqcreg {

/// Trainable angles in circuit order; length = template total_params.
using ParameterVector = std::vector<double>;

/// Standard SPSA gain schedule:
///   a_t = a / (A + t + 1)^alpha,   c_t = c / (t + 1)^gamma.
struct SpsaConfig {
    double a{1.0};
    double c{0.1};
    double big_a{0.0}; // stability constant A
    double alpha{0.602};
    double gamma{0.101};
    int iterations{1000};
    std::uint64_t seed{0};

    void validate() const;
};

struct TrainRecord {
    ParameterVector final_theta;
    /// One (iteration, loss-after-update) entry per iteration.
    std::vector<std::pair<int, double>> loss_history;
    double wall_time_seconds{0.0};
};

/// Mean squared error (1/N) sum (y_i - yhat_i)^2.
[[nodiscard]] double mse_loss(std::span<const double> y,
                              std::span<const double> y_hat);

/// Elementwise evaluate() over the dataset rows; order-preserving and
/// identical for any worker count.
[[nodiscard]] std::vector<double> predict_batch(const CircuitTemplate &tmpl,
                                                std::span<const double> theta,
                                                const Dataset &dataset,
                                                int workers = 1);

/// MSE of the template's predictions against dataset targets.
[[nodiscard]] double dataset_loss(const CircuitTemplate &tmpl,
                                  std::span<const double> theta,
                                  const Dataset &dataset, int workers = 1);

/// Initial angles: independent uniform on [-pi, pi) from the run seed.
[[nodiscard]] ParameterVector random_initial_theta(int count,
                                                   std::uint64_t seed);

/// The +-1 perturbation component used at iteration t for parameter j, as
/// consumed by spsa_minimize (exposed so tests can audit the stream).
[[nodiscard]] inline double spsa_perturbation(std::uint64_t seed,
                                              std::uint64_t iteration,
                                              std::uint64_t n_params,
                                              std::uint64_t j) {
    const rng::KeyedStream stream(seed, rng::Stream::SpsaDelta);
    return stream.sign(iteration * n_params + j);
}

/// Minimize the dataset MSE with SPSA. Aborts with a diagnostic naming
/// the iteration if the loss turns non-finite.
[[nodiscard]] TrainRecord spsa_minimize(const CircuitTemplate &tmpl,
                                        const Dataset &dataset,
                                        const SpsaConfig &config,
                                        int workers = 1);

/// Exact loss gradient via the parameter-shift rule, chained through the
/// MSE. Plain rotations use the two-term +-pi/2 rule; controlled
/// rotations need the four-term rule (their generator also has a zero
/// eigenvalue, which makes the two-term rule inexact).
[[nodiscard]] ParameterVector
parameter_shift_gradient(const CircuitTemplate &tmpl,
                         std::span<const double> theta, const Dataset &dataset,
                         int workers = 1);

/// Central finite differences on the loss, the second gradient route.
[[nodiscard]] ParameterVector
finite_difference_gradient(const CircuitTemplate &tmpl,
                           std::span<const double> theta,
                           const Dataset &dataset, double h = 1e-4,
                           int workers = 1);

} // namespace pqcreg
