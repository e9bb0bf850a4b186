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
 * Counter-based keyed random streams.
 *
 * Every random draw in the library is a pure function of
 * (seed, stream id, counter), so results are bit-reproducible across
 * platforms and independent of the order in which parallel workers
 * consume them. The generator is the SplitMix64 finalizer applied to a
 * keyed counter, which is plenty for sampling duties here (there is no
 * cryptographic requirement).
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace pqcreg::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer (Steele/Lea/Flood mixing constants).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream identifiers; keep values stable, they are part of the
/// reproducibility contract.
enum class Stream : std::uint64_t {
    ThetaInit = 1,
    SpsaDelta = 2,
    SplitPermutation = 3,
    SynthFeatures = 4,
    SynthTargets = 5,
};

/// A stateless random stream: draw i is mix64(key + i*golden).
class KeyedStream {
  public:
    KeyedStream(std::uint64_t seed, Stream stream) noexcept
        : key_(mix64(mix64(seed + kGolden) ^
                     (static_cast<std::uint64_t>(stream) *
                      0xda942042e4dd58b5ULL))) {}

    [[nodiscard]] std::uint64_t u64(std::uint64_t counter) const noexcept {
        return mix64(key_ + counter * kGolden);
    }

    /// Uniform double in [0, 1).
    [[nodiscard]] double uniform01(std::uint64_t counter) const noexcept {
        return static_cast<double>(u64(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    [[nodiscard]] double uniform(std::uint64_t counter, double lo,
                                 double hi) const noexcept {
        return lo + (hi - lo) * uniform01(counter);
    }

    /// Exactly +1 or -1, from the top (best mixed) bit.
    [[nodiscard]] double sign(std::uint64_t counter) const noexcept {
        return (u64(counter) >> 63) ? 1.0 : -1.0;
    }

    /// Standard normal via Box-Muller; consumes counters 2i and 2i+1.
    [[nodiscard]] double normal(std::uint64_t i) const noexcept {
        // Shift into (0,1] so the log never sees zero.
        const double u1 =
            (static_cast<double>(u64(2 * i) >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01(2 * i + 1);
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

  private:
    std::uint64_t key_;
};

/// FNV-1a over a byte string; used for deriving per-job seeds from names.
inline constexpr std::uint64_t fnv1a(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Deterministic per-cell seed for sweeps: depends only on the run seed
/// and the two job labels.
inline std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view a,
                                 std::string_view b) noexcept {
    std::uint64_t h = fnv1a(a);
    h = h * 0x100000001b3ULL ^ fnv1a(b);
    return mix64(run_seed ^ h);
}

} // namespace pqcreg::rng
