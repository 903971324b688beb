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

#ifndef SUPAQ_BALL_H
#define SUPAQ_BALL_H

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "supaq/qstate.h"

namespace supaq {

/// Smallest enclosing relative-entropy ball with the center in the second slot:
/// radius = min_c max_i D(ρ_i‖c), c ranging over the convex hull of the inputs.
struct InfoBall {
    DensityMatrix center;
    double radius = 0;
    /// Indices whose divergence to the center is within kSupportTolerance of the radius.
    std::vector<size_t> support;
    /// Hull weights of the center: center = Σ weights[i]·ρ_i.
    std::vector<double> weights;
    /// Certified lower bound on the optimal radius (Holevo quantity of `weights`).
    double lower_bound = 0;
    bool converged = false;
    int iterations = 0;
    /// Reported (best-so-far) radius after each iteration.
    std::vector<double> history;
};

inline constexpr double kSupportTolerance = 1e-4;

/// Farthest-point iteration in mixture coordinates, c ← (1−η)c + η·ρ_far with η = 1/(t+1),
/// followed by multiplicative reweighting of the hull weights (α_i ∝ α_i·2^{D(ρ_i‖c)}) until
/// the duality gap max_i D(ρ_i‖c) − Σ α_i D(ρ_i‖c) falls below `tol`. If `max_iter` runs out
/// first the best iterate is returned with converged = false.
///
/// Inputs are expected to be clamped away from the boundary (see clamp_to_domain); pure inputs
/// work but make the divergences large.
InfoBall minimax_ball(std::span<const DensityMatrix> states, double tol = 1e-9, int max_iter = 20000);

/// argmax_i D(ρ_i‖center), smallest index on ties.
std::pair<size_t, double> farthest_point(const DensityMatrix &center, std::span<const DensityMatrix> states);

struct Circumcenter {
    DensityMatrix center;
    /// Common value D(a‖x) = D(b‖x) = D(c‖x).
    double distance = 0;
};

/// Qubit state x in the affine hull of {a, b, c} equidistant from all three in D(·‖x).
/// Throws DegenerateConfigurationError when no such point exists inside the open Bloch ball
/// or the triple is collinear.
Circumcenter circumcenter3(const DensityMatrix &a, const DensityMatrix &b, const DensityMatrix &c);

}  // namespace supaq

#endif
