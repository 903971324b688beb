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

#ifndef SUPAQ_CHANNELS_H
#define SUPAQ_CHANNELS_H

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "supaq/linalg.h"
#include "supaq/qstate.h"
#include "supaq/rng.h"

namespace supaq {

/// Completeness tolerance for Kraus sets: ‖Σ N_k† N_k − I‖_max.
inline constexpr double kCompletenessTolerance = 1e-9;

/// CPTP map N(ρ) = Σ_k N_k ρ N_k†. The environment dimension is the number of Kraus operators.
class KrausChannel {
   public:
    /// Throws InvalidChannelError (carrying the residual) when the set is not trace preserving.
    KrausChannel(size_t dim_in, size_t dim_out, std::vector<CMatrix> kraus, std::string name = "");

    size_t dim_in() const {
        return dim_in_;
    }
    size_t dim_out() const {
        return dim_out_;
    }
    size_t environment_dim() const {
        return kraus_.size();
    }
    const std::vector<CMatrix> &kraus() const {
        return kraus_;
    }
    const std::string &name() const {
        return name_;
    }

   private:
    size_t dim_in_;
    size_t dim_out_;
    std::vector<CMatrix> kraus_;
    std::string name_;
};

/// ‖Σ N_k† N_k − I‖_max for an arbitrary operator list.
double completeness_residual(size_t dim_in, const std::vector<CMatrix> &kraus);

DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho);

/// Environment output of the isometry V = Σ_k N_k ⊗ |k⟩_E, itself as a Kraus channel
/// (one operator per output basis vector of `ch`).
KrausChannel complementary(const KrausChannel &ch);

/// Kraus set {A_i ⊗ B_j}.
KrausChannel tensor(const KrausChannel &a, const KrausChannel &b);
KrausChannel tensor_power(const KrausChannel &ch, int n);

/// p·a ⊗ |0⟩⟨0| + (1−p)·b ⊗ |1⟩⟨1| as one channel whose output is the direct sum of the two
/// branches: rows [0, dim_out(a)) carry flag 0, the rest carry flag 1. Zero-weight branches
/// contribute no Kraus operators.
KrausChannel flagged_convex(double p, const KrausChannel &a, const KrausChannel &b);

KrausChannel identity_channel(size_t dim);

/// Qubit depolarizing channel ρ ↦ (1−p)ρ + p·I/2, p ∈ [0, 1]; Kraus form
/// {√(1−3p/4) I, √(p/4) X, √(p/4) Y, √(p/4) Z}.
KrausChannel depolarizing(double p);

/// Erasure channel on dimension d: output is (1−ε)ρ ⊕ ε·|e⟩⟨e| on d+1 levels, |e⟩ = |d⟩.
KrausChannel erasure(double eps, size_t dim = 2);

/// Qubit channel as the affine Bloch map v ↦ linear·v + shift.
struct AffineQubitMap {
    Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
    Eigen::Vector3d shift = Eigen::Vector3d::Zero();

    BlochVector apply(const BlochVector &v) const;

    /// Largest ‖linear·v + shift‖ over `samples` random unit vectors.
    double max_image_radius(size_t samples, Rng &rng) const;
};

AffineQubitMap affine_map(const KrausChannel &ch);

/// Parses the channel-definition format:
///   {"name": "...", "dim_in": d, "dim_out": d', "kraus": [M_1, M_2, ...]}
/// where each M is a row-major list of [re, im] pairs (flat, or nested by rows).
KrausChannel parse_channel(std::string_view text);
KrausChannel load_channel(const std::filesystem::path &path);
std::string serialize_channel(const KrausChannel &ch);

}  // namespace supaq

#endif
