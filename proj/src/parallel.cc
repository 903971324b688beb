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

#include "supaq/parallel.h"

#include <cstdlib>
#include <string>

namespace supaq {

namespace {
std::atomic<size_t> g_override{0};
}

size_t thread_count() {
    size_t o = g_override.load();
    if (o > 0) {
        return o;
    }
    if (const char *env = std::getenv("SUPAQ_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) {
                return static_cast<size_t>(v);
            }
        } catch (...) {
        }
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

namespace detail {
bool &in_worker() {
    thread_local bool flag = false;
    return flag;
}
}  // namespace detail

void set_thread_count(size_t n) {
    g_override.store(n);
}

}  // namespace supaq
