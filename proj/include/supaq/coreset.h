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

#ifndef SUPAQ_CORESET_H
#define SUPAQ_CORESET_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "supaq/qstate.h"

namespace supaq {

/// Eigenvalue window [lambda, gamma] on which relative entropy is μ-similar to a quadratic
/// form, μ = lambda / gamma.
struct MuSimilarDomain {
    double lambda = 1e-4;
    double gamma = 1 - 1e-4;

    MuSimilarDomain() = default;
    MuSimilarDomain(double lambda, double gamma);

    double mu() const {
        return lambda / gamma;
    }
};

/// Projects the spectrum into [lambda, gamma] with unit trace: eigenvalues become
/// clip(λ_i + τ, lambda, gamma) for the unique shift τ restoring trace 1. Idempotent.
DensityMatrix clamp_to_domain(const DensityMatrix &rho, const MuSimilarDomain &domain);

/// D_A(ρ, σ) = ⟨ρ−σ, A(ρ−σ)⟩ with A = I / (2·lambda·ln 2), the bits-unit quadratic form that
/// sandwiches relative entropy on the domain: μ·D_A ≤ D ≤ D_A.
double quadratic_divergence(const DensityMatrix &rho, const DensityMatrix &sigma, const MuSimilarDomain &domain);

struct WeightedStateSet {
    std::vector<DensityMatrix> states;
    std::vector<double> weights;
    /// Position of each state in the originating input list, when it came from one.
    std::vector<size_t> source_indices;

    static WeightedStateSet uniform(std::span<const DensityMatrix> states);
    double total_weight() const;
};

struct MedianSet {
    std::vector<DensityMatrix> medians;
    size_t k = 0;
    /// Input positions for discrete medians; empty for continuous (centroid) medians.
    std::vector<size_t> source_indices;
};

/// (index, D(ρ‖σ_index)) of the closest median, smallest index on ties.
std::pair<size_t, double> nearest_median(const DensityMatrix &rho, const MedianSet &medians);

/// Σ_ρ min_σ D(ρ‖σ).
double kmedian_error(std::span<const DensityMatrix> states, const MedianSet &medians);

/// Σ_ρ w(ρ)·min_σ D(ρ‖σ).
double weighted_error(const WeightedStateSet &set, const MedianSet &medians);

/// D-sampling seeding: first median uniform, each next one drawn with probability
/// D(ρ‖M)/error(S, M); stops at ⌈beta·k⌉ medians (at most |S|) or when the error is 0.
MedianSet bicriteria(std::span<const DensityMatrix> states, size_t k, double beta, uint64_t seed);

/// Ring coreset around the medians: points are assigned to their nearest median, split into
/// the inner ball of radius R = error/(alpha·n) and rings (2^{j-1}R, 2^j R], j = 1..⌈log2(alpha·n)⌉,
/// and each nonempty cell contributes min(m, |cell|) uniform samples weighted |cell|/#samples.
/// A zero-error median set yields the medians themselves weighted by their cluster sizes.
WeightedStateSet build_coreset(std::span<const DensityMatrix> states, const MedianSet &medians, size_t m,
                               double alpha, uint64_t seed);

/// Weighted arithmetic mean, the minimizer of Σ w_i D(ρ_i‖c) over c.
DensityMatrix centroid(const WeightedStateSet &set);

/// Exact discrete k-median: the best k-subset of the inputs. Throws ParameterError when
/// C(n, k) exceeds 10^6.
MedianSet brute_force_kmedian(std::span<const DensityMatrix> states, size_t k);

struct ClusterConfig {
    size_t k = 2;
    double eps = 0.3;
    double delta = 0.3;
    MuSimilarDomain domain;
    size_t candidate_cap = 64;
};

struct ClusterResult {
    MedianSet medians;
    /// weighted_error of `medians` on the input set.
    double error = 0;
    /// Number of recursion nodes whose candidate family was subsampled to the cap.
    size_t truncations = 0;
};

/// Recursive median search over a weighted set: m medians still to find, C already found.
/// Deterministic for a given seed; each branch derives its own stream from the seed and its path.
ClusterResult cluster(const WeightedStateSet &set, size_t m, const MedianSet &found, const ClusterConfig &config,
                      uint64_t seed);

}  // namespace supaq

#endif
