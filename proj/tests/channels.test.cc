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

#include "supaq/channels.h"

#include <cmath>

#include "gtest/gtest.h"
#include "supaq/errors.h"
#include "test_util.h"

using namespace supaq;

namespace {

const std::string kTestData = SUPAQ_TESTDATA_DIR;

double max_abs(const CMatrix &m) {
    return m.cwiseAbs().maxCoeff();
}

/// Environment state through the Stinespring isometry V = Σ_k N_k ⊗ |k⟩, tracing out the output.
CMatrix environment_via_isometry(const KrausChannel &ch, const DensityMatrix &rho) {
    auto dout = static_cast<Eigen::Index>(ch.dim_out());
    auto ne = static_cast<Eigen::Index>(ch.kraus().size());
    auto din = static_cast<Eigen::Index>(ch.dim_in());
    CMatrix v = CMatrix::Zero(dout * ne, din);
    for (Eigen::Index k = 0; k < ne; ++k) {
        for (Eigen::Index i = 0; i < dout; ++i) {
            v.row(i * ne + k) = ch.kraus()[static_cast<size_t>(k)].row(i);
        }
    }
    CMatrix joint = v * rho.matrix() * v.adjoint();
    CMatrix env = CMatrix::Zero(ne, ne);
    for (Eigen::Index i = 0; i < dout; ++i) {
        env += joint.block(i * ne, i * ne, ne, ne);
    }
    return env;
}

std::vector<KrausChannel> fixtures() {
    return {identity_channel(2), identity_channel(3), depolarizing(0.3), depolarizing(1), erasure(0.5),
            erasure(0.2, 3), flagged_convex(0.3, depolarizing(0.2), erasure(0.5, 2))};
}

}  // namespace

TEST(channels, apply_examples) {
    Rng rng(1);
    DensityMatrix rho = random_mixed_state(2, rng);
    EXPECT_LT(max_abs(apply(identity_channel(2), rho).matrix() - rho.matrix()), 1e-15);
    EXPECT_LT(max_abs(apply(depolarizing(1), rho).matrix() - CMatrix::Identity(2, 2) / 2.0), 1e-15);
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 0.75;
    expect(1, 1) = 0.25;
    EXPECT_LT(max_abs(apply(depolarizing(0.5), DensityMatrix::basis(2, 0)).matrix() - expect), 1e-15);
    EXPECT_THROW(apply(identity_channel(2), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST(channels, complementary_examples) {
    Rng rng(2);
    KrausChannel env = complementary(identity_channel(2));
    EXPECT_EQ(env.dim_out(), 1u);
    for (int i = 0; i < 20; ++i) {
        EXPECT_NEAR(von_neumann_entropy(apply(env, random_mixed_state(2, rng))), 0, 1e-15);
    }
    KrausChannel er = erasure(0.5);
    KrausChannel er_env = complementary(er);
    for (int i = 0; i < 100; ++i) {
        DensityMatrix rho = random_mixed_state(2, rng);
        EXPECT_NEAR(von_neumann_entropy(apply(er, rho)), von_neumann_entropy(apply(er_env, rho)), 1e-12);
    }
    for (double p : {0.1, 0.25, 0.7}) {
        DensityMatrix half = DensityMatrix::maximally_mixed(2);
        DensityMatrix ours = apply(complementary(depolarizing(p)), half);
        DensityMatrix oracle(environment_via_isometry(depolarizing(p), half));
        EXPECT_NEAR(von_neumann_entropy(ours), von_neumann_entropy(oracle), 1e-12);
        double a = 1 - 3 * p / 4, b = p / 4;
        EXPECT_NEAR(von_neumann_entropy(ours), -a * std::log2(a) - 3 * b * std::log2(b), 1e-12);
    }
}

TEST(channels, complementary_matches_isometry_on_random_inputs) {
    Rng rng(3);
    for (const auto &ch : fixtures()) {
        KrausChannel env = complementary(ch);
        for (int i = 0; i < 10; ++i) {
            DensityMatrix rho = random_mixed_state(ch.dim_in(), rng);
            CMatrix oracle = environment_via_isometry(ch, rho);
            // Same spectrum; the basis convention of the environment may differ by a transpose.
            DensityMatrix a = apply(env, rho);
            DensityMatrix b(oracle);
            EXPECT_NEAR(von_neumann_entropy(a), von_neumann_entropy(b), 1e-10) << ch.name();
        }
    }
}

TEST(channels, tensor_examples) {
    Rng rng(4);
    KrausChannel id4 = tensor(identity_channel(2), identity_channel(2));
    EXPECT_EQ(id4.dim_in(), 4u);
    DensityMatrix r4 = random_mixed_state(4, rng);
    EXPECT_LT(max_abs(apply(id4, r4).matrix() - r4.matrix()), 1e-14);

    KrausChannel a = depolarizing(0.3), b = erasure(0.4);
    KrausChannel ab = tensor(a, b);
    for (int i = 0; i < 20; ++i) {
        DensityMatrix rho = random_mixed_state(2, rng), tau = random_mixed_state(2, rng);
        CMatrix lhs = apply(ab, tensor(rho, tau)).matrix();
        CMatrix rhs = kron(apply(a, rho).matrix(), apply(b, tau).matrix());
        EXPECT_LT(max_abs(lhs - rhs), 1e-13);
    }

    KrausChannel ee = tensor(erasure(0.5), erasure(0.5));
    KrausChannel ee_env = complementary(ee);
    for (int i = 0; i < 50; ++i) {
        DensityMatrix rho = random_mixed_state(4, rng);
        EXPECT_NEAR(von_neumann_entropy(apply(ee, rho)) - von_neumann_entropy(apply(ee_env, rho)), 0, 1e-12);
    }
}

TEST(channels, tensor_power) {
    KrausChannel d2 = tensor_power(depolarizing(0.2), 2);
    EXPECT_EQ(d2.dim_in(), 4u);
    EXPECT_EQ(d2.kraus().size(), 16u);
    EXPECT_EQ(tensor_power(erasure(0.5), 1).dim_out(), 3u);
    EXPECT_THROW(tensor_power(erasure(0.5), 0), ParameterError);
}

TEST(channels, flagged_convex_examples) {
    Rng rng(5);
    KrausChannel a = depolarizing(0.3), b = erasure(0.5);
    DensityMatrix rho = random_mixed_state(2, rng);
    CMatrix out1 = apply(flagged_convex(1, a, b), rho).matrix();
    EXPECT_LT(max_abs(out1.topLeftCorner(2, 2) - apply(a, rho).matrix()), 1e-15);
    EXPECT_LT(max_abs(out1.bottomRows(3)), 1e-15);
    CMatrix out0 = apply(flagged_convex(0, a, b), rho).matrix();
    EXPECT_LT(max_abs(out0.bottomRightCorner(3, 3) - apply(b, rho).matrix()), 1e-15);
    EXPECT_LT(max_abs(out0.topRows(2)), 1e-15);

    KrausChannel half = flagged_convex(0.5, identity_channel(2), identity_channel(2));
    CMatrix out = apply(half, rho).matrix();
    EXPECT_LT(max_abs(out.topLeftCorner(2, 2) + out.bottomRightCorner(2, 2) - rho.matrix()), 1e-15);
    EXPECT_LT(max_abs(out.topRightCorner(2, 2)), 1e-15);
    EXPECT_THROW(flagged_convex(1.5, a, b), ParameterError);
    EXPECT_THROW(flagged_convex(0.5, a, identity_channel(3)), DimensionError);
}

TEST(channels, erasure_examples) {
    Rng rng(6);
    DensityMatrix rho = random_mixed_state(2, rng);
    CMatrix keep = apply(erasure(0), rho).matrix();
    EXPECT_LT(max_abs(keep.topLeftCorner(2, 2) - rho.matrix()), 1e-15);
    EXPECT_NEAR(std::abs(keep(2, 2)), 0, 1e-15);
    CMatrix lost = apply(erasure(1), rho).matrix();
    CMatrix flag = CMatrix::Zero(3, 3);
    flag(2, 2) = 1;
    EXPECT_LT(max_abs(lost - flag), 1e-15);
    CMatrix half = apply(erasure(0.5), DensityMatrix::maximally_mixed(2)).matrix();
    CMatrix expect = CMatrix::Zero(3, 3);
    expect(0, 0) = 0.25;
    expect(1, 1) = 0.25;
    expect(2, 2) = 0.5;
    EXPECT_LT(max_abs(half - expect), 1e-15);
    EXPECT_EQ(erasure(0.3, 4).dim_out(), 5u);
    EXPECT_THROW(erasure(-0.1), ParameterError);
}

TEST(channels, trace_preservation_and_complete_positivity) {
    Rng rng(7);
    for (const auto &ch : fixtures()) {
        KrausChannel extended = tensor(ch, identity_channel(2));
        for (int i = 0; i < 20; ++i) {
            DensityMatrix rho = random_mixed_state(ch.dim_in(), rng);
            EXPECT_NEAR(apply(ch, rho).matrix().trace().real(), 1, 1e-9);
            DensityMatrix joint = random_mixed_state(ch.dim_in() * 2, rng);
            DensityMatrix out = apply(extended, joint);
            EXPECT_GE(out.min_eigenvalue(), -1e-12);
        }
    }
}

TEST(channels, affine_map_consistency) {
    Rng rng(8);
    for (const auto &ch : {identity_channel(2), depolarizing(0.3), depolarizing(1)}) {
        AffineQubitMap m = affine_map(ch);
        for (int i = 0; i < 200; ++i) {
            DensityMatrix rho = random_qubit(rng);
            BlochVector got = m.apply(density_to_bloch(rho));
            BlochVector want = density_to_bloch(apply(ch, rho));
            EXPECT_NEAR(got.x, want.x, 1e-9);
            EXPECT_NEAR(got.y, want.y, 1e-9);
            EXPECT_NEAR(got.z, want.z, 1e-9);
        }
        EXPECT_LE(m.max_image_radius(10000, rng), 1 + 1e-9);
    }
    // Amplitude damping: non-unital, shift along z.
    double g = 0.3;
    CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - g);
    k1(0, 1) = std::sqrt(g);
    AffineQubitMap ad = affine_map(KrausChannel(2, 2, {k0, k1}, "amplitude-damping"));
    EXPECT_NEAR(ad.shift[2], g, 1e-12);
    EXPECT_LE(ad.max_image_radius(10000, rng), 1 + 1e-9);
    EXPECT_THROW(affine_map(erasure(0.5)), DimensionError);
}

TEST(channels, construction_validation) {
    CMatrix half = CMatrix::Identity(2, 2) * 0.5;
    try {
        KrausChannel bad(2, 2, {half}, "bad");
        FAIL() << "expected InvalidChannelError";
    } catch (const InvalidChannelError &e) {
        EXPECT_NEAR(e.residual, 0.75, 1e-12);
    }
    EXPECT_THROW(KrausChannel(2, 2, {}, "empty"), InvalidChannelError);
    EXPECT_THROW(KrausChannel(2, 3, {CMatrix::Identity(2, 2)}, "shape"), DimensionError);
    EXPECT_NEAR(completeness_residual(2, {CMatrix::Identity(2, 2)}), 0, 1e-15);
}

TEST(channels, load_channel_examples) {
    Rng rng(9);
    KrausChannel id = load_channel(kTestData + "/identity.chan");
    DensityMatrix rho = random_mixed_state(2, rng);
    EXPECT_LT(max_abs(apply(id, rho).matrix() - rho.matrix()), 1e-15);
    EXPECT_EQ(id.name(), "identity");

    EXPECT_THROW(load_channel(kTestData + "/bad.chan"), InvalidChannelError);

    KrausChannel dep = load_channel(kTestData + "/depolarizing_025.chan");
    EXPECT_EQ(dep.kraus().size(), 4u);
    for (int i = 0; i < 20; ++i) {
        DensityMatrix r = random_mixed_state(2, rng);
        EXPECT_LT(max_abs(apply(dep, r).matrix() - apply(depolarizing(0.25), r).matrix()), 1e-12);
    }
    EXPECT_THROW(load_channel(kTestData + "/does_not_exist.chan"), Error);
}

TEST(channels, parse_and_serialize) {
    KrausChannel er = erasure(0.3);
    KrausChannel back = parse_channel(serialize_channel(er));
    ASSERT_EQ(back.kraus().size(), er.kraus().size());
    for (size_t k = 0; k < er.kraus().size(); ++k) {
        EXPECT_EQ(back.kraus()[k], er.kraus()[k]);
    }
    EXPECT_EQ(back.name(), er.name());
    // Nested-by-rows form.
    KrausChannel nested = parse_channel(
        R"({"name": "x", "dim_in": 2, "dim_out": 2, "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1e0, 0.0]]]]})");
    EXPECT_EQ(nested.kraus()[0], CMatrix::Identity(2, 2));
    EXPECT_THROW(parse_channel("{not json"), ParseError);
    EXPECT_THROW(parse_channel(R"({"name": "x", "dim_in": 2, "dim_out": 2})"), ParseError);
    EXPECT_THROW(parse_channel(R"({"name": "x", "dim_in": 2, "dim_out": 2, "kraus": [[[1, 0]]]})"), ParseError);
    EXPECT_THROW(parse_channel(R"({"name": "x", "dim_in": -2, "dim_out": 2, "kraus": []})"), ParseError);
}
