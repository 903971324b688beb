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

#ifndef SUPAQ_QSTATE_H
#define SUPAQ_QSTATE_H

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "supaq/linalg.h"
#include "supaq/rng.h"

namespace supaq {

/// Tolerance for the density-matrix invariants (Hermiticity, trace, positivity).
inline constexpr double kStateTolerance = 1e-10;

/// Point of the closed unit ball parameterizing a qubit state.
struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double radius() const;
    /// Euclidean dot product of the two coordinate vectors.
    double dot(const BlochVector &other) const;
};

/// Hermitian, positive semidefinite, unit-trace matrix. Immutable once built.
///
/// The eigendecomposition is computed once at construction (it is needed to check positivity)
/// and reused by every spectral quantity.
class DensityMatrix {
   public:
    /// Validates the invariants within kStateTolerance. A Hermitian defect below tolerance is
    /// removed by symmetrizing (A + A†)/2. Throws InvalidStateError otherwise.
    explicit DensityMatrix(const CMatrix &m);

    /// Accepts a matrix whose trace is within `trace_tol` of 1 and rescales it to unit trace.
    /// Used for channel outputs, whose trace carries the channel's completeness residual.
    static DensityMatrix normalized(const CMatrix &m, double trace_tol);

    static DensityMatrix maximally_mixed(size_t dim);
    static DensityMatrix pure(const CVector &psi);
    static DensityMatrix basis(size_t dim, size_t index);
    static DensityMatrix diagonal(std::span<const double> probs);

    size_t dim() const {
        return static_cast<size_t>(matrix_.rows());
    }
    const CMatrix &matrix() const {
        return matrix_;
    }
    /// Ascending eigenvalues, with round-off negatives clipped to 0.
    const RVector &eigenvalues() const {
        return eigen_.values;
    }
    const CMatrix &eigenvectors() const {
        return eigen_.vectors;
    }
    double min_eigenvalue() const {
        return eigen_.values[0];
    }

    /// log2 of the matrix; requires full rank.
    CMatrix log2() const;

   private:
    DensityMatrix(CMatrix m, HermitianEigen e) : matrix_(std::move(m)), eigen_(std::move(e)) {
    }
    static DensityMatrix checked(CMatrix m);

    CMatrix matrix_;
    HermitianEigen eigen_;
};

/// Probability-weighted list of equal-dimension states.
class Ensemble {
   public:
    Ensemble(std::vector<DensityMatrix> states, std::vector<double> probs);

    const std::vector<DensityMatrix> &states() const {
        return states_;
    }
    const std::vector<double> &probs() const {
        return probs_;
    }
    size_t size() const {
        return states_.size();
    }
    size_t dim() const {
        return states_.front().dim();
    }

   private:
    std::vector<DensityMatrix> states_;
    std::vector<double> probs_;
};

DensityMatrix bloch_to_density(const BlochVector &v);
BlochVector density_to_bloch(const DensityMatrix &rho);

/// S(ρ) = −Tr ρ log2 ρ in bits.
double von_neumann_entropy(const DensityMatrix &rho);

/// D(ρ‖σ) = Tr ρ(log2 ρ − log2 σ) in bits, evaluated in the eigenbases of both states.
/// Returns +∞ when the support of ρ is not contained in the support of σ.
double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Closed-form qubit relative entropy from Bloch coordinates. Both radii must be below
/// 1 − 1e-9; the r_σ = 0 case uses the maximally-mixed branch.
double relative_entropy_bloch(const BlochVector &rho, const BlochVector &sigma);

/// Convex generator F with its gradient, for Bregman divergences over density matrices.
struct BregmanGenerator {
    std::function<double(const DensityMatrix &)> value;
    std::function<CMatrix(const DensityMatrix &)> gradient;

    /// F(ρ) = Tr ρ log2 ρ = −S(ρ), ∇F(σ) = log2 σ + (1/ln 2)·I.
    static BregmanGenerator negative_entropy();

    BregmanGenerator scaled(double lambda) const;
    BregmanGenerator plus(const BregmanGenerator &other) const;
};

/// F(ρ) − F(σ) − ⟨ρ − σ, ∇F(σ)⟩ with ⟨A,B⟩ = Tr(A B†). Requires σ full rank.
double bregman_divergence(const DensityMatrix &rho, const DensityMatrix &sigma,
                          const BregmanGenerator &generator);
/// Bregman divergence of the negative von Neumann entropy.
double bregman_divergence(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Σ p_i ρ_i.
DensityMatrix mix(const Ensemble &e);
/// Σ w_i ρ_i / Σ w_i for nonnegative weights with positive sum.
DensityMatrix weighted_mix(std::span<const DensityMatrix> states, std::span<const double> weights);

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Precomputed log2 σ for repeated evaluation of D(·‖σ) against one second argument.
class DivergenceTarget {
   public:
    explicit DivergenceTarget(const DensityMatrix &sigma);
    double from(const DensityMatrix &rho) const;
    const DensityMatrix &state() const {
        return sigma_;
    }

   private:
    DensityMatrix sigma_;
    bool full_rank_;
    CMatrix log_sigma_;
};

/// Haar-random pure state of dimension `dim`.
DensityMatrix random_pure_state(size_t dim, Rng &rng);
/// Ginibre-random mixed state (full rank with probability 1).
DensityMatrix random_mixed_state(size_t dim, Rng &rng);
/// Qubit with Bloch vector uniform in the ball of the given radius.
DensityMatrix random_qubit(Rng &rng, double max_radius = 1.0);

}  // namespace supaq

#endif
