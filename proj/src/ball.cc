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

#include "supaq/ball.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "supaq/errors.h"

namespace supaq {

std::pair<size_t, double> farthest_point(const DensityMatrix &center, std::span<const DensityMatrix> states) {
    if (states.empty()) {
        throw ParameterError("farthest point of an empty list");
    }
    DivergenceTarget target(center);
    size_t best = 0;
    double best_d = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < states.size(); ++i) {
        double d = target.from(states[i]);
        if (d > best_d) {
            best = i;
            best_d = d;
        }
    }
    return {best, best_d};
}

InfoBall minimax_ball(std::span<const DensityMatrix> states, double tol, int max_iter) {
    if (states.empty()) {
        throw ParameterError("minimax ball of an empty set");
    }
    if (max_iter < 1) {
        throw ParameterError("max_iter must be positive");
    }
    for (const auto &s : states) {
        if (s.dim() != states[0].dim()) {
            throw DimensionError("ball inputs have unequal dimensions");
        }
    }
    const size_t n = states.size();
    const int farthest_phase = std::min(max_iter / 2, 200);

    std::vector<double> alpha(n, 1.0 / static_cast<double>(n));
    std::vector<double> d(n);
    InfoBall best{states[0], std::numeric_limits<double>::infinity(), {}, {}, 0, false, 0, {}};
    double best_lower = 0;

    int t = 0;
    for (; t < max_iter; ++t) {
        DensityMatrix c = weighted_mix(states, alpha);
        DivergenceTarget target(c);
        size_t far = 0;
        double upper = -1;
        double lower = 0;
        for (size_t i = 0; i < n; ++i) {
            d[i] = target.from(states[i]);
            lower += alpha[i] * d[i];
            if (d[i] > upper) {
                upper = d[i];
                far = i;
            }
        }
        best_lower = std::max(best_lower, lower);
        if (upper < best.radius) {
            best.center = c;
            best.radius = upper;
            best.weights = alpha;
        }
        best.history.push_back(best.radius);
        if (best.radius - best_lower <= tol) {
            best.converged = true;
            ++t;
            break;
        }
        if (t < farthest_phase) {
            double eta = 1.0 / (t + 2);
            for (double &a : alpha) {
                a *= 1 - eta;
            }
            alpha[far] += eta;
        } else {
            double z = 0;
            for (size_t i = 0; i < n; ++i) {
                alpha[i] *= std::exp2(d[i] - upper);
                z += alpha[i];
            }
            for (double &a : alpha) {
                a /= z;
            }
        }
    }
    best.iterations = t;
    best.lower_bound = std::min(best_lower, best.radius);

    DivergenceTarget target(best.center);
    for (size_t i = 0; i < n; ++i) {
        if (target.from(states[i]) >= best.radius - kSupportTolerance) {
            best.support.push_back(i);
        }
    }
    return best;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 bloch_of(const DensityMatrix &r) {
    BlochVector v = density_to_bloch(r);
    return {v.x, v.y, v.z};
}

double norm3(const Vec3 &v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Vec3 sub3(const Vec3 &a, const Vec3 &b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 cross3(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct Plane {
    Vec3 origin, e1, e2;
    Vec3 at(double u, double v) const {
        return {origin[0] + u * e1[0] + v * e2[0], origin[1] + u * e1[1] + v * e2[1],
                origin[2] + u * e1[2] + v * e2[2]};
    }
};

constexpr double kMaxRadius = 1 - 1e-12;

}  // namespace

Circumcenter circumcenter3(const DensityMatrix &a, const DensityMatrix &b, const DensityMatrix &c) {
    for (const auto *s : {&a, &b, &c}) {
        if (s->dim() != 2) {
            throw DimensionError("circumcenter3 works on qubit states");
        }
        if (s->min_eigenvalue() < kZeroEigenvalue) {
            throw SingularInputError("circumcenter3 needs full-rank states");
        }
    }
    Vec3 va = bloch_of(a), vb = bloch_of(b), vc = bloch_of(c);
    Vec3 ab = sub3(vb, va), ac = sub3(vc, va);
    if (norm3(ab) < 1e-12 && norm3(ac) < 1e-12) {
        return {a, 0.0};
    }
    if (norm3(cross3(ab, ac)) < 1e-12) {
        throw DegenerateConfigurationError("circumcenter3: the three states are collinear");
    }
    Plane plane{va, ab, ac};

    auto residual = [&](double u, double v, std::array<double, 2> &f) -> bool {
        Vec3 x = plane.at(u, v);
        if (norm3(x) >= kMaxRadius) {
            return false;
        }
        DensityMatrix xs = bloch_to_density({x[0], x[1], x[2]});
        DivergenceTarget target(xs);
        double da = target.from(a);
        f = {da - target.from(b), da - target.from(c)};
        return true;
    };

    double u = 1.0 / 3, v = 1.0 / 3;
    std::array<double, 2> f{};
    residual(u, v, f);
    for (int it = 0; it < 200; ++it) {
        double fn = std::max(std::abs(f[0]), std::abs(f[1]));
        if (fn < 1e-11) {
            break;
        }
        const double h = 1e-7;
        std::array<double, 2> fu_p{}, fu_m{}, fv_p{}, fv_m{};
        if (!residual(u + h, v, fu_p) || !residual(u - h, v, fu_m) || !residual(u, v + h, fv_p) ||
            !residual(u, v - h, fv_m)) {
            throw DegenerateConfigurationError("circumcenter3: iterate reached the Bloch sphere");
        }
        double j00 = (fu_p[0] - fu_m[0]) / (2 * h), j10 = (fu_p[1] - fu_m[1]) / (2 * h);
        double j01 = (fv_p[0] - fv_m[0]) / (2 * h), j11 = (fv_p[1] - fv_m[1]) / (2 * h);
        double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) {
            throw DegenerateConfigurationError("circumcenter3: singular Jacobian");
        }
        double du = -(j11 * f[0] - j01 * f[1]) / det;
        double dv = -(-j10 * f[0] + j00 * f[1]) / det;
        double step = 1;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
            std::array<double, 2> g{};
            if (residual(u + step * du, v + step * dv, g) &&
                std::max(std::abs(g[0]), std::abs(g[1])) < fn) {
                u += step * du;
                v += step * dv;
                f = g;
                moved = true;
                break;
            }
        }
        if (!moved) {
            break;
        }
    }
    if (std::max(std::abs(f[0]), std::abs(f[1])) >= 1e-7) {
        throw DegenerateConfigurationError("circumcenter3: no equidistant point inside the Bloch ball");
    }
    Vec3 x = plane.at(u, v);
    DensityMatrix center = bloch_to_density({x[0], x[1], x[2]});
    return {center, relative_entropy(a, center)};
}

}  // namespace supaq
