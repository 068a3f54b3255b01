// Copyright 2026 The cycledom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLEDOM_SRC_PARALLEL_HPP
#define CYCLEDOM_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cycledom::detail {

/// Runs fn(k) for k in [0, count) on up to `workers` threads. Callers write
/// results into slot k, so the outcome never depends on scheduling.
template <typename Fn>
void parallel_for(int count, int workers, Fn &&fn) {
    workers = std::clamp(workers, 1, std::max(count, 1));
    if (workers == 1) {
        for (int k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int k = next++; k < count; k = next++) {
                    try {
                        fn(k);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace cycledom::detail

#endif  // CYCLEDOM_SRC_PARALLEL_HPP
