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

#ifndef SUPAQ_LINALG_H
#define SUPAQ_LINALG_H

#include <Eigen/Dense>
#include <complex>

namespace supaq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// 1/ln 2, the factor converting natural-log quantities to bits.
inline constexpr double kInvLn2 = 1.4426950408889634074;

/// Eigenvalues below this are treated as exactly zero (support checks, 0·log 0).
inline constexpr double kZeroEigenvalue = 1e-12;

struct HermitianEigen {
    RVector values;  // ascending
    CMatrix vectors;
};

HermitianEigen hermitian_eigen(const CMatrix &m);

/// V·diag(f(λ))·V† for a Hermitian eigendecomposition.
template <typename F>
CMatrix spectral_apply(const HermitianEigen &e, F &&f) {
    CVector scaled(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        scaled[i] = f(e.values[i]);
    }
    return e.vectors * scaled.asDiagonal() * e.vectors.adjoint();
}

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Re Tr(A B†), the Hilbert–Schmidt inner product restricted to Hermitian arguments.
double hs_inner(const CMatrix &a, const CMatrix &b);

/// Largest entrywise modulus of A − A†.
double hermitian_defect(const CMatrix &m);

/// x·log2(x) with the convention 0·log 0 = 0 below kZeroEigenvalue.
double xlog2x(double x);

}  // namespace supaq

#endif
