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

#ifndef SUPAQ_OPTIMIZE_H
#define SUPAQ_OPTIMIZE_H

#include <cstddef>
#include <functional>
#include <vector>

namespace supaq {

struct NelderMeadOptions {
    double initial_step = 0.5;
    /// Stops when the spread of simplex values falls below this.
    double value_tol = 1e-11;
    size_t max_evals = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    size_t evals = 0;
    bool converged = false;
};

/// Derivative-free maximization of f from x0 with the dimension-adaptive coefficients of
/// Gao and Han. Non-finite values of f count as -inf.
NelderMeadResult nelder_mead_maximize(const std::function<double(const std::vector<double> &)> &f,
                                      std::vector<double> x0, const NelderMeadOptions &options);

}  // namespace supaq

#endif
