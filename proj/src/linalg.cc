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

#include "supaq/linalg.h"

#include <cmath>

namespace supaq {

HermitianEigen hermitian_eigen(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double hs_inner(const CMatrix &a, const CMatrix &b) {
    // Tr(A B†) = Σ_ij A_ij conj(B_ij)
    return (a.array() * b.array().conjugate()).sum().real();
}

double hermitian_defect(const CMatrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double xlog2x(double x) {
    if (x < kZeroEigenvalue) {
        return 0.0;
    }
    return x * std::log2(x);
}

}  // namespace supaq
