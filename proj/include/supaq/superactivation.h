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

#ifndef SUPAQ_SUPERACTIVATION_H
#define SUPAQ_SUPERACTIVATION_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supaq/capacity.h"
#include "supaq/channels.h"

namespace supaq {

/// Q(N₁⊗N₂) ≥ ½·P(N₁) for a private channel N₁ paired with a 50% erasure channel.
double smith_yard_bound(double p_private);

/// 1 − q·log2 q − (1−q)·log2(1−q) for q in (0, 1).
double horodecki_private_lb(double q);

/// Parameter of the four-dimensional private channel, √2/(1+√2).
double horodecki_q();

struct CombinationRadius {
    /// quantum_capacity_lb of a ⊗ b, a joint (two-use) value.
    CapacityResult joint;
    /// joint.value / 2.
    double per_use = 0;
    /// ½(P(a) + P(b)) from max_private_info, present when both searches converged.
    std::optional<double> private_floor;
};

CombinationRadius combination_radius(const KrausChannel &a, const KrausChannel &b, const OptimizerConfig &cfg);

/// Input of ch ⊗ erasure(0.5, |X|·d) built from the ensemble {p_x, ρ_x}: the state
/// Σ_x p_x |φ_x⟩⟨φ_x|_{A A'₂} ⊗ |x⟩⟨x|_{A'₁}, φ_x purifying ρ_x, ordered as A ⊗ A'₁ ⊗ A'₂.
DensityMatrix smith_yard_input(const Ensemble &e);

/// Coherent information of ch ⊗ erasure(0.5, |X|·d) at smith_yard_input(e); equals ½·private_info(ch, e).
double smith_yard_rate(const KrausChannel &ch, const Ensemble &e);

struct SmithYardRadius {
    double rate = 0;
    /// The private search whose achiever feeds the input.
    CapacityResult private_search;
};

/// smith_yard_rate at the best ensemble found by max_private_info(ch, cfg).
SmithYardRadius smith_yard_radius(const KrausChannel &ch, const OptimizerConfig &cfg);

enum class Evaluator { PaperConstants, CoherentSearch };

std::string evaluator_name(Evaluator e);
Evaluator parse_evaluator(const std::string &name);

/// Published radii: r_HH = 0, r_HA = 0.01 for p in the open gate (0, 0.0041), r_AA = 0.
inline constexpr double kPaperRadiusHA = 0.01;
inline constexpr double kPaperGateHigh = 0.0041;
inline constexpr double kPublishedWeightAt0004 = 0.0081;

struct SweepConfig {
    std::vector<double> p_grid;
    /// Needed by the coherent-search evaluator only.
    std::optional<KrausChannel> channel_a;
    std::optional<KrausChannel> channel_b;
    Evaluator evaluator = Evaluator::PaperConstants;
    double threshold = 0;
    uint64_t seed = 0;
    OptimizerConfig optimizer;
};

struct SweepRow {
    double p = 0;
    double r_hh = 0;
    double r_ha = 0;
    double r_aa = 0;
    /// p²·r_hh + 2p(1−p)·r_ha + (1−p)²·r_aa.
    double r_super = 0;
    /// Mixing weights p², 2p(1−p), (1−p)².
    double w_hh = 0;
    double w_ha = 0;
    double w_aa = 0;
    /// False when the evaluator failed at this point; the radii are then NaN.
    bool ok = true;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<std::pair<double, double>> domain;
    Evaluator evaluator = Evaluator::PaperConstants;
    double threshold = 0;
    /// Free-text findings for the report header.
    std::vector<std::string> notes;
};

/// p_i = lo + i·step for i = 0..⌊(hi − lo)/step⌋, inside [0, 1].
std::vector<double> make_grid(double lo, double hi, double step);

SweepReport sweep(const SweepConfig &cfg);

/// Maximal runs of consecutive rows with r_super > threshold, each reported as the closed
/// interval between the grid points bounding the run (the run's own ends at the grid edges).
std::vector<std::pair<double, double>> detect_domain(const SweepReport &report, double threshold);

/// |r_super − (p²r_hh + 2p(1−p)r_ha + (1−p)²r_aa)|, the recomposition residual of a row.
double recomposition_residual(const SweepRow &row);

}  // namespace supaq

#endif
