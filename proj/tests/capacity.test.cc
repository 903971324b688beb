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

#include "supaq/capacity.h"

#include <cmath>

#include "gtest/gtest.h"
#include "supaq/errors.h"
#include "supaq/parallel.h"
#include "test_util.h"

using namespace supaq;
using supaq::testkit::binary_entropy;

namespace {

OptimizerConfig quick(uint64_t seed = 0) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_evals = 1500;
    cfg.seed = seed;
    return cfg;
}

Ensemble orthogonal_pair() {
    return Ensemble({DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}, {0.5, 0.5});
}

Ensemble random_ensemble(size_t dim, size_t n, Rng &rng, bool pure) {
    std::vector<DensityMatrix> states;
    std::vector<double> p;
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        states.push_back(pure ? random_pure_state(dim, rng) : random_mixed_state(dim, rng));
        p.push_back(rng.uniform() + 0.05);
        total += p.back();
    }
    for (double &x : p) {
        x /= total;
    }
    return Ensemble(std::move(states), std::move(p));
}

/// Holevo quantity of depolarizing(p) for antipodal pure inputs with weights (q, 1−q).
double antipodal_chi(double p, double q) {
    double shrink = 1 - p;
    return binary_entropy((1 + shrink * (2 * q - 1)) / 2) - binary_entropy((1 + shrink) / 2);
}

std::string fingerprint(const CapacityResult &r) {
    std::string s;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g|%zu|", r.value, r.iterations);
    s += buf;
    for (size_t i = 0; i < r.ensemble.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g;", r.ensemble.probs()[i]);
        s += buf;
    }
    return s;
}

}  // namespace

TEST(holevo_quantity, examples) {
    Rng rng(1);
    Ensemble single({random_mixed_state(2, rng)}, {1.0});
    EXPECT_NEAR(holevo_quantity(depolarizing(0.3), single), 0, 1e-12);
    EXPECT_NEAR(holevo_quantity(identity_channel(2), orthogonal_pair()), 1, 1e-12);
    EXPECT_NEAR(holevo_quantity(depolarizing(0.25), orthogonal_pair()), 1 - binary_entropy(0.125), 1e-12);
    EXPECT_NEAR(1 - binary_entropy(0.125), 0.456435556800403, 1e-12);
    EXPECT_THROW(holevo_quantity(identity_channel(3), orthogonal_pair()), DimensionError);
}

TEST(holevo_quantity, relative_entropy_identity) {
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        Ensemble e = random_ensemble(2, 1 + static_cast<size_t>(t % 4), rng, t % 2 == 0);
        KrausChannel ch = t % 3 == 0 ? depolarizing(rng.uniform()) : erasure(rng.uniform());
        EXPECT_LE(std::abs(holevo_relative_entropy_form(ch, e) - holevo_quantity(ch, e)), 1e-9);
        double chi = holevo_quantity(ch, e);
        EXPECT_GE(chi, -1e-12);
        EXPECT_LE(chi, std::log2(static_cast<double>(ch.dim_out())) + 1e-12);
    }
}

TEST(holevo_capacity, examples) {
    CapacityResult id = holevo_capacity(identity_channel(2), quick());
    EXPECT_NEAR(id.value, 1, 1e-4);
    EXPECT_TRUE(id.converged);

    double oracle = 0;
    for (int i = 0; i <= 1000; ++i) {
        oracle = std::max(oracle, antipodal_chi(0.25, i / 1000.0));
    }
    EXPECT_NEAR(oracle, 1 - binary_entropy(0.125), 1e-12);
    CapacityResult dep = holevo_capacity(depolarizing(0.25), quick());
    EXPECT_NEAR(dep.value, oracle, 1e-3);
    EXPECT_TRUE(dep.converged);

    CapacityResult full = holevo_capacity(depolarizing(1), quick());
    EXPECT_NEAR(full.value, 0, 1e-9);
    EXPECT_NEAR(holevo_quantity(depolarizing(0.25), dep.ensemble), dep.value, 1e-12);
}

TEST(coherent_information, examples) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        DensityMatrix rho = random_mixed_state(2, rng);
        EXPECT_NEAR(coherent_information(identity_channel(2), rho), von_neumann_entropy(rho), 1e-12);
        EXPECT_LE(std::abs(coherent_information(erasure(0.5), rho)), 1e-12);
    }
    EXPECT_NEAR(coherent_information(erasure(0.25), DensityMatrix::maximally_mixed(2)), 0.5, 1e-12);
    for (double eps : {0.0, 0.1, 0.4, 0.7}) {
        EXPECT_NEAR(coherent_information(erasure(eps), DensityMatrix::maximally_mixed(2)), 1 - 2 * eps, 1e-12);
    }
    EXPECT_THROW(coherent_information(erasure(0.25), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST(holevo_difference, examples) {
    Rng rng(4);
    Ensemble single({random_mixed_state(2, rng)}, {1.0});
    EXPECT_NEAR(holevo_difference(depolarizing(0.2), single), 0, 1e-12);
    EXPECT_NEAR(holevo_difference(identity_channel(2), orthogonal_pair()), 1, 1e-12);
    for (int i = 0; i < 20; ++i) {
        Ensemble e = random_ensemble(2, 3, rng, i % 2 == 0);
        EXPECT_LE(std::abs(holevo_difference(erasure(0.5), e)), 1e-12);
    }
}

TEST(private_info, examples) {
    Rng rng(5);
    Ensemble single({random_mixed_state(2, rng)}, {1.0});
    EXPECT_NEAR(private_info(depolarizing(0.2), single), 0, 1e-12);
    EXPECT_NEAR(private_info(identity_channel(2), orthogonal_pair()), 1, 1e-12);
    for (int i = 0; i < 20; ++i) {
        EXPECT_LE(std::abs(private_info(erasure(0.5), random_ensemble(2, 4, rng, false))), 1e-12);
    }
}

TEST(erasure_zero_law, single_and_two_uses) {
    Rng rng(6);
    KrausChannel e1 = erasure(0.5);
    KrausChannel e2 = tensor_power(e1, 2);
    for (int i = 0; i < 100; ++i) {
        EXPECT_LE(std::abs(coherent_information(e1, random_mixed_state(2, rng))), 1e-12);
        EXPECT_LE(std::abs(coherent_information(e2, random_mixed_state(4, rng))), 1e-12);
        EXPECT_LE(std::abs(holevo_difference(e1, random_ensemble(2, 3, rng, true))), 1e-12);
        EXPECT_LE(std::abs(holevo_difference(e2, random_ensemble(4, 3, rng, true))), 1e-12);
        EXPECT_LE(std::abs(private_info(e1, random_ensemble(2, 3, rng, false))), 1e-12);
        EXPECT_LE(std::abs(private_info(e2, random_ensemble(4, 3, rng, false))), 1e-12);
    }
}

TEST(quantum_capacity_lb, examples) {
    CapacityResult id = quantum_capacity_lb(identity_channel(2), quick());
    EXPECT_NEAR(id.value, 1, 1e-6);
    EXPECT_LT((mix(id.ensemble).matrix() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-3);

    CapacityResult er = quantum_capacity_lb(erasure(0.5), quick());
    EXPECT_LE(std::abs(er.value), 1e-12);

    CapacityResult quarter = quantum_capacity_lb(erasure(0.25), quick());
    EXPECT_NEAR(quarter.value, 0.5, 1e-6);
    EXPECT_LT((mix(quarter.ensemble).matrix() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(quantum_capacity_lb, private_search_dominates_coherent) {
    for (const auto &ch : {depolarizing(0.05), depolarizing(0.15), erasure(0.3), identity_channel(2)}) {
        CapacityResult c = max_coherent_information(ch, quick());
        CapacityResult p = max_private_info(ch, quick());
        EXPECT_GE(p.value, c.value - 1e-6) << ch.name();
        // The achiever's holevo_difference is the reported value.
        EXPECT_NEAR(holevo_difference(ch, p.ensemble), p.value, 1e-9);
        EXPECT_NEAR(holevo_difference(ch, c.ensemble), c.value, 1e-9);
    }
}

TEST(quantum_capacity_lb, bounds_hold) {
    for (const auto &ch : {depolarizing(0.4), erasure(0.1, 3), depolarizing(1)}) {
        CapacityResult r = quantum_capacity_lb(ch, quick());
        EXPECT_GE(r.value, -1e-9);
        EXPECT_LE(r.value, std::log2(static_cast<double>(ch.dim_out())) + 1e-9);
    }
}

TEST(finite_n_capacity, examples) {
    CapacityResult id2 = finite_n_capacity(identity_channel(2), 2, quick());
    EXPECT_NEAR(id2.value, 1, 1e-6);
    EXPECT_EQ(id2.ensemble.dim(), 4u);

    CapacityResult er2 = finite_n_capacity(erasure(0.5), 2, quick());
    EXPECT_LE(std::abs(er2.value), 1e-12);

    double p = 0.1;
    double hashing = 1 - (-(1 - 3 * p / 4) * std::log2(1 - 3 * p / 4) - 3 * (p / 4) * std::log2(p / 4));
    EXPECT_NEAR(hashing, 0.49681626831867, 1e-9);
    CapacityResult dep1 = finite_n_capacity(depolarizing(p), 1, quick());
    EXPECT_GE(dep1.value, hashing - 1e-6);
}

TEST(finite_n_capacity, two_uses_never_below_one) {
    for (const auto &ch : {depolarizing(0.1), erasure(0.3)}) {
        OptimizerConfig cfg = quick();
        cfg.restarts = 2;
        cfg.max_evals = 600;
        double one = finite_n_capacity(ch, 1, cfg).value;
        double two = finite_n_capacity(ch, 2, cfg).value;
        EXPECT_GE(two, one - 1e-6) << ch.name();
    }
}

TEST(finite_n_capacity, unsupported_cases) {
    EXPECT_THROW(finite_n_capacity(erasure(0.5), 3, quick()), UnsupportedError);
    EXPECT_THROW(finite_n_capacity(identity_channel(5), 2, quick()), UnsupportedError);
}

TEST(superball_radius, examples) {
    std::vector<double> a{0.5}, b{0, 0}, c{0.02, 0.0}, none, neg{-0.1};
    EXPECT_EQ(superball_radius(a), 0.5);
    EXPECT_EQ(superball_radius(b), 0);
    EXPECT_NEAR(superball_radius(c), 0.01, 1e-15);
    EXPECT_THROW(superball_radius(none), ParameterError);
    EXPECT_THROW(superball_radius(neg), ParameterError);
}

TEST(optimizer_config, validation) {
    OptimizerConfig bad = quick();
    bad.restarts = 0;
    EXPECT_THROW(holevo_capacity(identity_channel(2), bad), ParameterError);
    EXPECT_THROW(quantum_capacity_lb(identity_channel(2), bad), ParameterError);
}

TEST(capacity, more_restarts_never_lower_the_value) {
    for (const auto &ch : {depolarizing(0.3), depolarizing(0.05)}) {
        double prev = -1;
        for (int restarts : {1, 2, 4, 8}) {
            OptimizerConfig cfg = quick(9);
            cfg.restarts = restarts;
            cfg.max_evals = 300;
            double h = holevo_capacity(ch, cfg).value;
            EXPECT_GE(h, prev) << restarts;
            prev = h;
        }
        prev = -1;
        for (int restarts : {1, 3, 6}) {
            OptimizerConfig cfg = quick(9);
            cfg.restarts = restarts;
            cfg.max_evals = 300;
            double q = quantum_capacity_lb(ch, cfg).value;
            EXPECT_GE(q, prev - 1e-15) << restarts;
            prev = q;
        }
    }
}

TEST(capacity, deterministic_across_thread_counts) {
    std::vector<std::string> runs;
    for (size_t threads : {1u, 3u, 8u}) {
        set_thread_count(threads);
        runs.push_back(fingerprint(holevo_capacity(depolarizing(0.2), quick(4))) +
                       fingerprint(quantum_capacity_lb(depolarizing(0.1), quick(4))));
    }
    set_thread_count(0);
    EXPECT_EQ(runs[0], runs[1]);
    EXPECT_EQ(runs[0], runs[2]);
}
