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

#ifndef SUPAQ_CAPACITY_H
#define SUPAQ_CAPACITY_H

#include <cstddef>
#include <cstdint>
#include <span>

#include "supaq/channels.h"
#include "supaq/qstate.h"

namespace supaq {

/// Multi-start Nelder–Mead settings. Restart i draws from the stream derive(seed, {i}) and gets
/// its own max_evals budget, so adding restarts never lowers a result.
struct OptimizerConfig {
    int restarts = 20;
    /// Number of pure states in a searched ensemble; 0 means dim_in².
    size_t ensemble_size = 0;
    double step_tol = 1e-11;
    uint64_t seed = 0;
    /// Evaluation budget per restart.
    size_t max_evals = 2500;
};

/// Best value found by a search. Every capacity here is a lower bound.
struct CapacityResult {
    double value = 0;
    /// Achiever. For coherent-information searches it is the eigen-ensemble of the best input,
    /// whose mixture is that input and whose holevo_difference equals the value.
    Ensemble ensemble;
    bool converged = false;
    /// Objective evaluations spent over all restarts.
    size_t iterations = 0;
};

/// χ = S(N(σ̄)) − Σ p_i S(N(ρ_i)), σ̄ the ensemble mixture.
double holevo_quantity(const KrausChannel &ch, const Ensemble &e);

/// Σ p_i D(N(ρ_i)‖N(σ̄)), which equals holevo_quantity up to rounding.
double holevo_relative_entropy_form(const KrausChannel &ch, const Ensemble &e);

/// Maximum of holevo_quantity over ensembles of pure states. The probabilities of the best
/// ensemble are refined with minimax_ball over its output states; converged requires the ball
/// radius and the value to agree within 5e-3.
CapacityResult holevo_capacity(const KrausChannel &ch, const OptimizerConfig &cfg);

/// S(N(ρ)) − S(N^c(ρ)).
double coherent_information(const KrausChannel &ch, const DensityMatrix &rho);

/// χ_B − χ_E: holevo_quantity of the channel minus that of its complementary channel.
double holevo_difference(const KrausChannel &ch, const Ensemble &e);

/// I(X:B) − I(X:E) for a classical-input ensemble; the states may be mixed.
double private_info(const KrausChannel &ch, const Ensemble &e);

/// Maximum of coherent_information over input states. Restart 0 starts at I/d.
CapacityResult max_coherent_information(const KrausChannel &ch, const OptimizerConfig &cfg);

/// Maximum of private_info over pure-state ensembles. Half of the restarts start from the
/// eigen-ensembles of the coherent-information restarts, so the result is never below that maximum.
CapacityResult max_private_info(const KrausChannel &ch, const OptimizerConfig &cfg);

/// Larger of max_coherent_information and max_private_info, clipped below at 0.
CapacityResult quantum_capacity_lb(const KrausChannel &ch, const OptimizerConfig &cfg);

/// (1/n)·quantum_capacity_lb(ch^{⊗n}) for n in {1, 2}; n = 2 needs dim_in ≤ 4 and is seeded with
/// products of the n = 1 achiever, so it is never below the n = 1 value. The returned ensemble
/// lives on the n-fold input space.
CapacityResult finite_n_capacity(const KrausChannel &ch, int n, const OptimizerConfig &cfg);

/// Arithmetic mean of per-use radii.
double superball_radius(std::span<const double> radii);

}  // namespace supaq

#endif
