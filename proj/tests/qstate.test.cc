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

#include "supaq/qstate.h"

#include <cmath>

#include "gtest/gtest.h"
#include "supaq/errors.h"
#include "test_util.h"

using namespace supaq;
using supaq::testkit::binary_entropy;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST(qstate, bloch_to_density_examples) {
    EXPECT_TRUE(bloch_to_density({0, 0, 0}).matrix().isApprox(CMatrix::Identity(2, 2) / 2.0, 1e-15));
    EXPECT_TRUE(bloch_to_density({0, 0, 1}).matrix().isApprox(mat2(1, 0, 0, 0), 1e-15));
    EXPECT_TRUE(bloch_to_density({0.5, 0, 0}).matrix().isApprox(mat2(0.5, 0.25, 0.25, 0.5), 1e-15));
    EXPECT_THROW(bloch_to_density({0.8, 0.8, 0}), InvalidStateError);
}

TEST(qstate, density_to_bloch_examples) {
    auto near = [](BlochVector v, double x, double y, double z) {
        return std::abs(v.x - x) < 1e-15 && std::abs(v.y - y) < 1e-15 && std::abs(v.z - z) < 1e-15;
    };
    EXPECT_TRUE(near(density_to_bloch(DensityMatrix::maximally_mixed(2)), 0, 0, 0));
    EXPECT_TRUE(near(density_to_bloch(DensityMatrix::basis(2, 0)), 0, 0, 1));
    EXPECT_TRUE(near(density_to_bloch(DensityMatrix(mat2(0.5, 0.25, 0.25, 0.5))), 0.5, 0, 0));
    EXPECT_THROW(density_to_bloch(DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST(qstate, bloch_round_trip) {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        DensityMatrix rho = random_qubit(rng);
        BlochVector b = density_to_bloch(rho);
        EXPECT_LT((bloch_to_density(b).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(qstate, von_neumann_entropy_examples) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::basis(2, 0)), 0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(2)), 1, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(bloch_to_density({0.5, 0, 0})), 0.8112781244591328, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(bloch_to_density({0.5, 0, 0})), binary_entropy(0.75), 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(8)), 3, 1e-12);
}

TEST(qstate, relative_entropy_examples) {
    Rng rng(3);
    DensityMatrix rho = random_mixed_state(3, rng);
    EXPECT_NEAR(relative_entropy(rho, rho), 0, 1e-12);
    EXPECT_NEAR(relative_entropy(DensityMatrix::basis(2, 0), DensityMatrix::maximally_mixed(2)), 1, 1e-12);
    double d = relative_entropy(bloch_to_density({0.5, 0, 0}), bloch_to_density({0, 0, 0.5}));
    EXPECT_NEAR(d, 0.396240625180289, 1e-9);
    EXPECT_NEAR(d, testkit::qubit_divergence({0.5, 0, 0}, {0, 0, 0.5}), 1e-12);
}

TEST(qstate, relative_entropy_support_violation_is_infinite) {
    EXPECT_TRUE(std::isinf(relative_entropy(DensityMatrix::maximally_mixed(2), DensityMatrix::basis(2, 0))));
    EXPECT_NEAR(relative_entropy(DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 0)), 0, 1e-12);
    EXPECT_THROW(relative_entropy(DensityMatrix::basis(2, 0), DensityMatrix::basis(3, 0)), DimensionError);
}

TEST(qstate, relative_entropy_bloch_examples) {
    EXPECT_NEAR(relative_entropy_bloch({0.3, -0.2, 0.4}, {0.3, -0.2, 0.4}), 0, 1e-12);
    double spectral = relative_entropy(bloch_to_density({0, 0, 0.9}), DensityMatrix::maximally_mixed(2));
    EXPECT_NEAR(relative_entropy_bloch({0, 0, 0.9}, {0, 0, 0}), spectral, 1e-12);
    EXPECT_NEAR(relative_entropy_bloch({0.5, 0, 0}, {0, 0, 0.5}), 0.396240625180289, 1e-9);
    EXPECT_THROW(relative_entropy_bloch({0, 0, 0.2}, {0, 0, 1}), SingularInputError);
}

TEST(qstate, relative_entropy_bloch_matches_spectral) {
    Rng rng(17);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        DensityMatrix a = random_qubit(rng, 0.999);
        DensityMatrix b = random_qubit(rng, 0.999);
        BlochVector va = density_to_bloch(a), vb = density_to_bloch(b);
        worst = std::max(worst, std::abs(relative_entropy_bloch(va, vb) - relative_entropy(a, b)));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(qstate, bregman_examples) {
    Rng rng(5);
    DensityMatrix rho = random_mixed_state(2, rng);
    EXPECT_NEAR(bregman_divergence(rho, rho), 0, 1e-12);
    EXPECT_NEAR(bregman_divergence(DensityMatrix::basis(2, 0), DensityMatrix::maximally_mixed(2)), 1, 1e-12);
    EXPECT_THROW(bregman_divergence(rho, DensityMatrix::basis(2, 0)), SingularInputError);
}

TEST(qstate, bregman_equals_spectral) {
    Rng rng(23);
    MuSimilarDomain dom;
    for (int i = 0; i < 1000; ++i) {
        size_t dim = 2 + static_cast<size_t>(i % 3);
        DensityMatrix a = random_mixed_state(dim, rng);
        DensityMatrix b = clamp_to_domain(random_mixed_state(dim, rng), dom);
        ASSERT_NEAR(bregman_divergence(a, b), relative_entropy(a, b), 1e-9) << "pair " << i;
    }
}

TEST(qstate, klein_inequality) {
    Rng rng(29);
    for (int i = 0; i < 1000; ++i) {
        DensityMatrix a = random_mixed_state(2 + static_cast<size_t>(i % 2), rng);
        DensityMatrix b = random_mixed_state(a.dim(), rng);
        double d = relative_entropy(a, b);
        ASSERT_GE(d, 0) << "pair " << i;
        double gap = (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
        if (gap > 1e-6) {
            ASSERT_GT(d, 0);
        }
        ASSERT_NEAR(relative_entropy(a, a), 0, 1e-12);
    }
}

TEST(qstate, divergence_is_asymmetric) {
    DensityMatrix rho = bloch_to_density({0, 0, 0.99});
    DensityMatrix sigma = DensityMatrix::maximally_mixed(2);
    EXPECT_GT(std::abs(relative_entropy(rho, sigma) - relative_entropy(sigma, rho)), 0.1);
}

TEST(qstate, divergence_linear_in_generator) {
    Rng rng(31);
    BregmanGenerator f = BregmanGenerator::negative_entropy();
    for (double lambda : {0.0, 0.5, 2.0, 7.25}) {
        BregmanGenerator g = f.plus(f.scaled(lambda));
        for (int i = 0; i < 50; ++i) {
            DensityMatrix a = random_mixed_state(3, rng);
            DensityMatrix b = random_mixed_state(3, rng);
            EXPECT_NEAR(bregman_divergence(a, b, g),
                        bregman_divergence(a, b, f) + lambda * bregman_divergence(a, b, f), 1e-9);
        }
    }
}

TEST(qstate, mix_examples) {
    Rng rng(37);
    DensityMatrix rho = random_mixed_state(2, rng);
    EXPECT_TRUE(mix(Ensemble({rho}, {1.0})).matrix().isApprox(rho.matrix(), 1e-14));
    Ensemble half({DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}, {0.5, 0.5});
    EXPECT_TRUE(mix(half).matrix().isApprox(CMatrix::Identity(2, 2) / 2.0, 1e-15));
    Ensemble skew({DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}, {0.3, 0.7});
    EXPECT_TRUE(mix(skew).matrix().isApprox(mat2(0.3, 0, 0, 0.7), 1e-15));
}

TEST(qstate, construction_rejects_invalid_matrices) {
    EXPECT_THROW(DensityMatrix(mat2(0.6, 0, 0, 0.6)), InvalidStateError);
    EXPECT_THROW(DensityMatrix(mat2(1.2, 0, 0, -0.2)), InvalidStateError);
    EXPECT_THROW(DensityMatrix(mat2(0.5, 0.3, 0.1, 0.5)), InvalidStateError);
    CMatrix rect(2, 3);
    rect.setZero();
    EXPECT_THROW(DensityMatrix{rect}, Error);
    // Hermitian defect below tolerance is symmetrized away.
    DensityMatrix ok(mat2(0.5, Complex(0.1, 1e-12), 0.1, 0.5));
    EXPECT_EQ(ok.matrix()(0, 1), std::conj(ok.matrix()(1, 0)));
}

TEST(qstate, ensemble_validation) {
    EXPECT_THROW(Ensemble({DensityMatrix::basis(2, 0)}, {0.9}), ParameterError);
    EXPECT_THROW(Ensemble({DensityMatrix::basis(2, 0), DensityMatrix::basis(3, 0)}, {0.5, 0.5}), DimensionError);
    EXPECT_THROW(Ensemble({}, {}), ParameterError);
    EXPECT_THROW(Ensemble({DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}, {1.5, -0.5}), ParameterError);
}

TEST(qstate, log2_requires_full_rank) {
    EXPECT_THROW(DensityMatrix::basis(2, 0).log2(), SingularInputError);
    CMatrix l = DensityMatrix::maximally_mixed(2).log2();
    EXPECT_TRUE(l.isApprox(-CMatrix::Identity(2, 2), 1e-14));
}

TEST(qstate, divergence_target_matches_relative_entropy) {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        DensityMatrix a = random_mixed_state(3, rng);
        DensityMatrix b = random_mixed_state(3, rng);
        EXPECT_NEAR(DivergenceTarget(b).from(a), relative_entropy(a, b), 1e-10);
    }
    DivergenceTarget pure(DensityMatrix::basis(2, 0));
    EXPECT_TRUE(std::isinf(pure.from(DensityMatrix::maximally_mixed(2))));
}

TEST(qstate, random_states_are_deterministic) {
    Rng a(99), b(99);
    EXPECT_EQ(random_mixed_state(3, a).matrix(), random_mixed_state(3, b).matrix());
    EXPECT_EQ(random_pure_state(4, a).matrix(), random_pure_state(4, b).matrix());
    EXPECT_NEAR(random_pure_state(4, a).eigenvalues().maxCoeff(), 1, 1e-12);
}
