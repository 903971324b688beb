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
#include <limits>
#include <string>

#include "supaq/errors.h"

namespace supaq {

double BlochVector::radius() const {
    return std::sqrt(x * x + y * y + z * z);
}

double BlochVector::dot(const BlochVector &o) const {
    return x * o.x + y * o.y + z * o.z;
}

DensityMatrix DensityMatrix::checked(CMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("density matrix must be square and nonempty");
    }
    double defect = hermitian_defect(m);
    if (defect > kStateTolerance) {
        throw InvalidStateError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    m = (0.5 * (m + m.adjoint())).eval();
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kStateTolerance) {
        throw InvalidStateError("trace is " + std::to_string(tr) + ", expected 1");
    }
    HermitianEigen e = hermitian_eigen(m);
    if (e.values[0] < -kStateTolerance) {
        throw InvalidStateError("matrix is not positive semidefinite (eigenvalue " +
                                std::to_string(e.values[0]) + ")");
    }
    e.values = e.values.cwiseMax(0.0);
    return DensityMatrix(std::move(m), std::move(e));
}

DensityMatrix::DensityMatrix(const CMatrix &m) : DensityMatrix(checked(m)) {
}

DensityMatrix DensityMatrix::normalized(const CMatrix &m, double trace_tol) {
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        throw InvalidStateError("trace is " + std::to_string(tr) + ", expected 1 within " +
                                std::to_string(trace_tol));
    }
    CMatrix h = 0.5 * (m + m.adjoint());
    return checked(h / h.trace().real());
}

DensityMatrix DensityMatrix::maximally_mixed(size_t dim) {
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const CVector &psi) {
    double n = psi.norm();
    if (n == 0) {
        throw InvalidStateError("zero vector is not a state");
    }
    CVector u = psi / n;
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::basis(size_t dim, size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index out of range");
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    m(index, index) = 1;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
    CMatrix m = CMatrix::Zero(probs.size(), probs.size());
    for (size_t i = 0; i < probs.size(); ++i) {
        m(i, i) = probs[i];
    }
    return DensityMatrix(m);
}

CMatrix DensityMatrix::log2() const {
    if (min_eigenvalue() < kZeroEigenvalue) {
        throw SingularInputError("log of a rank-deficient state");
    }
    return spectral_apply(eigen_, [](double x) { return std::log2(x); });
}

Ensemble::Ensemble(std::vector<DensityMatrix> states, std::vector<double> probs)
    : states_(std::move(states)), probs_(std::move(probs)) {
    if (states_.empty() || states_.size() != probs_.size()) {
        throw ParameterError("ensemble needs matching, nonempty state and probability lists");
    }
    double total = 0;
    for (double p : probs_) {
        if (!(p >= 0)) {
            throw ParameterError("ensemble probabilities must be nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw ParameterError("ensemble probabilities sum to " + std::to_string(total));
    }
    for (const auto &s : states_) {
        if (s.dim() != states_.front().dim()) {
            throw DimensionError("ensemble states have unequal dimensions");
        }
    }
}

DensityMatrix bloch_to_density(const BlochVector &v) {
    if (v.radius() > 1.0 + 1e-12) {
        throw InvalidStateError("Bloch vector outside the unit ball");
    }
    CMatrix m(2, 2);
    m(0, 0) = 0.5 * (1 + v.z);
    m(0, 1) = 0.5 * Complex(v.x, -v.y);
    m(1, 0) = 0.5 * Complex(v.x, v.y);
    m(1, 1) = 0.5 * (1 - v.z);
    return DensityMatrix(m);
}

BlochVector density_to_bloch(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionError("Bloch coordinates need a qubit state");
    }
    const CMatrix &m = rho.matrix();
    return {2 * m(1, 0).real(), 2 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0;
    for (double l : rho.eigenvalues()) {
        s -= xlog2x(l);
    }
    return s;
}

double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("relative entropy of states with different dimensions");
    }
    double neg_entropy = -von_neumann_entropy(rho);
    const RVector &mu = sigma.eigenvalues();
    const CMatrix &b = sigma.eigenvectors();
    double cross = 0;
    for (Eigen::Index j = 0; j < mu.size(); ++j) {
        double w = (b.col(j).adjoint() * rho.matrix() * b.col(j))(0, 0).real();
        if (mu[j] < kZeroEigenvalue) {
            if (w > kZeroEigenvalue) {
                return std::numeric_limits<double>::infinity();
            }
            continue;
        }
        cross += w * std::log2(mu[j]);
    }
    return neg_entropy - cross;
}

double relative_entropy_bloch(const BlochVector &rho, const BlochVector &sigma) {
    double rr = rho.radius();
    double rs = sigma.radius();
    if (rr >= 1 - 1e-9 || rs >= 1 - 1e-9) {
        throw SingularInputError("closed-form relative entropy needs radii below 1");
    }
    double value = 0.5 * std::log2(0.25 * (1 - rr * rr)) + 0.5 * rr * std::log2((1 + rr) / (1 - rr));
    if (rs < 1e-12) {
        return value - 0.5 * std::log2(0.25);
    }
    return value - 0.5 * std::log2(0.25 * (1 - rs * rs)) -
           1 / (2 * rs) * std::log2((1 + rs) / (1 - rs)) * rho.dot(sigma);
}

BregmanGenerator BregmanGenerator::negative_entropy() {
    return {
        [](const DensityMatrix &r) { return -von_neumann_entropy(r); },
        [](const DensityMatrix &s) -> CMatrix {
            auto n = static_cast<Eigen::Index>(s.dim());
            return s.log2() + kInvLn2 * CMatrix::Identity(n, n);
        },
    };
}

BregmanGenerator BregmanGenerator::scaled(double lambda) const {
    auto v = value;
    auto g = gradient;
    return {
        [v, lambda](const DensityMatrix &r) { return lambda * v(r); },
        [g, lambda](const DensityMatrix &s) -> CMatrix { return lambda * g(s); },
    };
}

BregmanGenerator BregmanGenerator::plus(const BregmanGenerator &other) const {
    auto v1 = value, v2 = other.value;
    auto g1 = gradient, g2 = other.gradient;
    return {
        [v1, v2](const DensityMatrix &r) { return v1(r) + v2(r); },
        [g1, g2](const DensityMatrix &s) -> CMatrix { return g1(s) + g2(s); },
    };
}

double bregman_divergence(const DensityMatrix &rho, const DensityMatrix &sigma,
                          const BregmanGenerator &generator) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("Bregman divergence of states with different dimensions");
    }
    if (sigma.min_eigenvalue() < kZeroEigenvalue) {
        throw SingularInputError("Bregman divergence needs a full-rank second argument");
    }
    CMatrix diff = rho.matrix() - sigma.matrix();
    return generator.value(rho) - generator.value(sigma) - hs_inner(diff, generator.gradient(sigma));
}

double bregman_divergence(const DensityMatrix &rho, const DensityMatrix &sigma) {
    static const BregmanGenerator generator = BregmanGenerator::negative_entropy();
    return bregman_divergence(rho, sigma, generator);
}

DensityMatrix weighted_mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw ParameterError("weighted mixture needs matching, nonempty lists");
    }
    auto d = static_cast<Eigen::Index>(states[0].dim());
    CMatrix acc = CMatrix::Zero(d, d);
    double total = 0;
    for (size_t i = 0; i < states.size(); ++i) {
        if (static_cast<Eigen::Index>(states[i].dim()) != d) {
            throw DimensionError("mixture of states with different dimensions");
        }
        acc += weights[i] * states[i].matrix();
        total += weights[i];
    }
    if (!(total > 0)) {
        throw ParameterError("mixture weights must have positive sum");
    }
    return DensityMatrix::normalized(acc / total, 1e-9);
}

DensityMatrix mix(const Ensemble &e) {
    return weighted_mix(e.states(), e.probs());
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::normalized(kron(a.matrix(), b.matrix()), 1e-9);
}

DivergenceTarget::DivergenceTarget(const DensityMatrix &sigma)
    : sigma_(sigma), full_rank_(sigma.min_eigenvalue() >= kZeroEigenvalue) {
    if (full_rank_) {
        log_sigma_ = sigma_.log2();
    }
}

double DivergenceTarget::from(const DensityMatrix &rho) const {
    if (!full_rank_) {
        return relative_entropy(rho, sigma_);
    }
    if (rho.dim() != sigma_.dim()) {
        throw DimensionError("relative entropy of states with different dimensions");
    }
    return -von_neumann_entropy(rho) - hs_inner(rho.matrix(), log_sigma_);
}

DensityMatrix random_pure_state(size_t dim, Rng &rng) {
    CVector psi(dim);
    for (size_t i = 0; i < dim; ++i) {
        psi[i] = Complex(rng.normal(), rng.normal());
    }
    return DensityMatrix::pure(psi);
}

DensityMatrix random_mixed_state(size_t dim, Rng &rng) {
    CMatrix g(dim, dim);
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) {
            g(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    CMatrix m = g * g.adjoint();
    return DensityMatrix::normalized(m / m.trace().real(), 1e-9);
}

DensityMatrix random_qubit(Rng &rng, double max_radius) {
    double x = rng.normal(), y = rng.normal(), z = rng.normal();
    double n = std::sqrt(x * x + y * y + z * z);
    double r = max_radius * std::cbrt(rng.uniform());
    return bloch_to_density({r * x / n, r * y / n, r * z / n});
}

}  // namespace supaq
