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

#include "supaq/optimize.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace supaq {

NelderMeadResult nelder_mead_maximize(const std::function<double(const std::vector<double> &)> &f,
                                      std::vector<double> x0, const NelderMeadOptions &options) {
    const size_t n = x0.size();
    NelderMeadResult res;
    auto eval = [&](const std::vector<double> &x) {
        ++res.evals;
        double v = -f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    if (n == 0) {
        res.x = x0;
        res.value = -eval(x0);
        res.converged = true;
        return res;
    }
    const double dn = static_cast<double>(n);
    const double alpha = 1;
    const double beta = 1 + 2 / dn;
    const double gamma = 0.75 - 1 / (2 * dn);
    const double delta = 1 - 1 / dn;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += options.initial_step;
    }
    std::vector<double> values(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        values[i] = eval(simplex[i]);
    }
    std::vector<size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    auto point = [&](double t, std::vector<double> &out) {
        const auto &worst = simplex[order[n]];
        for (size_t j = 0; j < n; ++j) {
            out[j] = centroid[j] + t * (centroid[j] - worst[j]);
        }
    };

    while (res.evals < options.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        double spread = values[order[n]] - values[order[0]];
        if (std::isfinite(values[order[n]]) && std::abs(spread) <= options.value_tol) {
            res.converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[order[i]][j] / dn;
            }
        }
        const size_t worst = order[n];
        const double best_v = values[order[0]];
        const double second_worst_v = values[order[n - 1]];

        point(alpha, trial);
        double fr = eval(trial);
        if (fr < best_v) {
            point(alpha * beta, trial2);
            double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < second_worst_v) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        point(outside ? alpha * gamma : -gamma, trial2);
        double fc = eval(trial2);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = fc;
            continue;
        }
        const auto best = simplex[order[0]];
        for (size_t i = 1; i <= n; ++i) {
            auto &v = simplex[order[i]];
            for (size_t j = 0; j < n; ++j) {
                v[j] = best[j] + delta * (v[j] - best[j]);
            }
            values[order[i]] = eval(v);
        }
    }
    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    res.x = simplex[best];
    res.value = -values[best];
    return res;
}

}  // namespace supaq
