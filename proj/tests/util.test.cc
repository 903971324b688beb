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

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"
#include "supaq/linalg.h"
#include "supaq/optimize.h"
#include "supaq/parallel.h"
#include "supaq/rng.h"

using namespace supaq;

TEST(rng, deterministic_streams) {
    Rng a(5), b(5), c(6);
    for (int i = 0; i < 10; ++i) {
        uint64_t x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
    }
    EXPECT_EQ(Rng::derive(1, {2, 3}), Rng::derive(1, {2, 3}));
    EXPECT_NE(Rng::derive(1, {2, 3}), Rng::derive(1, {3, 2}));
    EXPECT_NE(Rng::derive(1, {2}), Rng::derive(2, {2}));
}

TEST(rng, ranges) {
    Rng r(7);
    double mean = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double u = r.uniform();
        ASSERT_GE(u, 0);
        ASSERT_LT(u, 1);
        ASSERT_LT(r.index(7), 7u);
        double g = r.normal();
        mean += g;
        sq += g * g;
    }
    EXPECT_NEAR(mean / n, 0, 0.05);
    EXPECT_NEAR(sq / n, 1, 0.05);
}

TEST(parallel_map, ordered_results_and_errors) {
    for (size_t threads : {1u, 4u}) {
        set_thread_count(threads);
        auto v = parallel_map<int>(100, [](size_t i) { return static_cast<int>(i * i); });
        for (size_t i = 0; i < v.size(); ++i) {
            EXPECT_EQ(v[i], static_cast<int>(i * i));
        }
        EXPECT_THROW(parallel_map<int>(10,
                                       [](size_t i) -> int {
                                           if (i == 3) {
                                               throw std::runtime_error("boom");
                                           }
                                           return 0;
                                       }),
                     std::runtime_error);
    }
    set_thread_count(3);
    EXPECT_EQ(thread_count(), 3u);
    set_thread_count(0);
    EXPECT_GE(thread_count(), 1u);
}

TEST(parallel_map, nested_calls_run_inline) {
    set_thread_count(4);
    auto v = parallel_map<int>(8, [](size_t i) {
        auto inner = parallel_map<int>(4, [i](size_t j) { return static_cast<int>(i + j); });
        return inner[3];
    });
    set_thread_count(0);
    for (size_t i = 0; i < v.size(); ++i) {
        EXPECT_EQ(v[i], static_cast<int>(i + 3));
    }
}

TEST(nelder_mead, maximizes_a_concave_quadratic) {
    auto f = [](const std::vector<double> &x) {
        return -(x[0] - 1) * (x[0] - 1) - 4 * (x[1] + 2) * (x[1] + 2) - (x[2] - 0.5) * (x[2] - 0.5);
    };
    NelderMeadOptions opt;
    opt.max_evals = 5000;
    auto r = nelder_mead_maximize(f, {0, 0, 0}, opt);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1, 1e-4);
    EXPECT_NEAR(r.x[1], -2, 1e-4);
    EXPECT_NEAR(r.x[2], 0.5, 1e-4);
    EXPECT_LE(r.evals, 5000u);
}

TEST(nelder_mead, rosenbrock_and_budget) {
    auto f = [](const std::vector<double> &x) {
        return -(100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2));
    };
    NelderMeadOptions opt;
    opt.max_evals = 20000;
    opt.value_tol = 1e-16;
    auto r = nelder_mead_maximize(f, {-1.2, 1}, opt);
    EXPECT_NEAR(r.x[0], 1, 1e-3);
    EXPECT_NEAR(r.x[1], 1, 1e-3);

    NelderMeadOptions tiny;
    tiny.max_evals = 10;
    auto t = nelder_mead_maximize(f, {-1.2, 1}, tiny);
    EXPECT_FALSE(t.converged);
    EXPECT_LE(t.evals, 12u);
    EXPECT_GE(t.value, f({-1.2, 1}));
}

TEST(nelder_mead, non_finite_values_are_avoided) {
    auto f = [](const std::vector<double> &x) { return x[0] > 1 ? std::nan("") : -(x[0] - 1) * (x[0] - 1); };
    auto r = nelder_mead_maximize(f, {-3}, NelderMeadOptions{});
    EXPECT_NEAR(r.x[0], 1, 1e-3);
}

TEST(linalg, kron_and_inner) {
    CMatrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    CMatrix k = kron(a, b);
    EXPECT_EQ(k.rows(), 4);
    EXPECT_EQ(k(0, 1), Complex(1, 0));
    EXPECT_EQ(k(3, 2), Complex(4, 0));
    EXPECT_NEAR(hs_inner(a, a), 30, 1e-15);
    EXPECT_EQ(xlog2x(0), 0);
    EXPECT_NEAR(xlog2x(0.5), -0.5, 1e-15);
}
