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

#ifndef SUPAQ_RNG_H
#define SUPAQ_RNG_H

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace supaq {

/// Seeded generator with platform-independent draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the standard. The
/// std distributions are not, so the real-valued draws are derived from the raw bits here;
/// this keeps every seeded run byte-reproducible across standard libraries.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next_u64() {
        return engine_();
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Standard normal via Box–Muller.
    double normal();

    /// Uniform index in [0, n). n must be positive.
    size_t index(size_t n);

    /// Derives an independent stream seed from a base seed and a path of integers.
    static uint64_t derive(uint64_t seed, std::initializer_list<uint64_t> path);

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

/// splitmix64 finalizer.
uint64_t mix64(uint64_t x);

}  // namespace supaq

#endif
