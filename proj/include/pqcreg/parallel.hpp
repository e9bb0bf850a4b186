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

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pqcreg {

/// Resolve a worker-count request: 0 means "auto" (hardware concurrency,
/// capped at 8), anything else is clamped to at least 1.
inline int resolve_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned cap = hw == 0 ? 1 : (hw > 8 ? 8 : hw);
    return static_cast<int>(cap);
}

/// Run body(i) for i in [0, count). Each index is claimed exactly once;
/// callers must make body(i) write only to slot i of any shared output so
/// the result is independent of scheduling. The first exception thrown by
/// any worker is rethrown on the calling thread.
inline void parallel_for(std::size_t count, int workers,
                         const std::function<void(std::size_t)> &body) {
    if (count == 0) {
        return;
    }
    const auto nthreads =
        static_cast<std::size_t>(resolve_workers(workers));
    if (nthreads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t spawn = nthreads < count ? nthreads : count;
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) {
        pool.emplace_back(worker);
    }
    for (auto &th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace pqcreg
