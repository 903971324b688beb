// Copyright 2026 The supaq Authors
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

#ifndef SUPAQ_PARALLEL_H
#define SUPAQ_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace supaq {

/// Worker count: SUPAQ_THREADS if set and positive, else hardware concurrency.
size_t thread_count();

/// Overrides thread_count() for the current process; 0 restores the environment default.
void set_thread_count(size_t n);

namespace detail {
/// True on parallel_map worker threads; nested calls there run serially.
bool &in_worker();
}  // namespace detail

/// Runs fn(i) for i in [0, n). Results land in index order, so output is
/// independent of scheduling. The first exception thrown is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(size_t n, Fn &&fn) {
    std::vector<T> out(n);
    size_t workers = detail::in_worker() ? 1 : std::min(thread_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            detail::in_worker() = true;
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= n) {
                    return;
                }
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace supaq

#endif
