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

#include "supaq/coreset.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "supaq/errors.h"
#include "supaq/rng.h"

namespace supaq {

MuSimilarDomain::MuSimilarDomain(double lambda, double gamma) : lambda(lambda), gamma(gamma) {
    if (!(lambda > 0 && lambda < gamma && gamma <= 1)) {
        throw ParameterError("domain needs 0 < lambda < gamma <= 1");
    }
}

DensityMatrix clamp_to_domain(const DensityMatrix &rho, const MuSimilarDomain &domain) {
    const RVector &ev = rho.eigenvalues();
    const auto d = static_cast<double>(ev.size());
    if (d * domain.lambda > 1 || d * domain.gamma < 1) {
        throw ParameterError("domain window cannot hold a unit-trace spectrum of this dimension");
    }
    if (ev.minCoeff() >= domain.lambda && ev.maxCoeff() <= domain.gamma) {
        return rho;
    }
    auto trace_at = [&](double tau) {
        double s = 0;
        for (double l : ev) {
            s += std::clamp(l + tau, domain.lambda, domain.gamma);
        }
        return s;
    };
    double lo = domain.lambda - ev.maxCoeff();
    double hi = domain.gamma - ev.minCoeff();
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        double mid = 0.5 * (lo + hi);
        if (trace_at(mid) < 1) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double tau = 0.5 * (lo + hi);
    HermitianEigen e{ev, rho.eigenvectors()};
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        e.values[i] = std::clamp(ev[i] + tau, domain.lambda, domain.gamma);
    }
    CMatrix m = spectral_apply(e, [](double x) { return x; });
    return DensityMatrix::normalized(m, 1e-9);
}

double quadratic_divergence(const DensityMatrix &rho, const DensityMatrix &sigma, const MuSimilarDomain &domain) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("quadratic divergence of states with different dimensions");
    }
    CMatrix diff = rho.matrix() - sigma.matrix();
    return hs_inner(diff, diff) * kInvLn2 / (2 * domain.lambda);
}

WeightedStateSet WeightedStateSet::uniform(std::span<const DensityMatrix> states) {
    WeightedStateSet out;
    out.states.assign(states.begin(), states.end());
    out.weights.assign(states.size(), 1.0);
    for (size_t i = 0; i < states.size(); ++i) {
        out.source_indices.push_back(i);
    }
    return out;
}

double WeightedStateSet::total_weight() const {
    double t = 0;
    for (double w : weights) {
        t += w;
    }
    return t;
}

namespace {

std::vector<DivergenceTarget> targets_of(const MedianSet &m) {
    if (m.medians.empty()) {
        throw ParameterError("median set is empty");
    }
    std::vector<DivergenceTarget> out;
    out.reserve(m.medians.size());
    for (const auto &s : m.medians) {
        out.emplace_back(s);
    }
    return out;
}

std::pair<size_t, double> nearest(const DensityMatrix &rho, const std::vector<DivergenceTarget> &targets) {
    size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < targets.size(); ++j) {
        double d = targets[j].from(rho);
        if (d < best_d) {
            best = j;
            best_d = d;
        }
    }
    return {best, best_d};
}

/// Position of u·total in the cumulative weights.
size_t sample_weighted(const std::vector<double> &weights, double total, Rng &rng) {
    double u = rng.uniform() * total;
    double acc = 0;
    size_t last_positive = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0) {
            last_positive = i;
        }
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    return last_positive;
}

}  // namespace

std::pair<size_t, double> nearest_median(const DensityMatrix &rho, const MedianSet &medians) {
    return nearest(rho, targets_of(medians));
}

double kmedian_error(std::span<const DensityMatrix> states, const MedianSet &medians) {
    auto targets = targets_of(medians);
    double err = 0;
    for (const auto &s : states) {
        err += nearest(s, targets).second;
    }
    return err;
}

double weighted_error(const WeightedStateSet &set, const MedianSet &medians) {
    if (set.states.size() != set.weights.size()) {
        throw ParameterError("weighted set has mismatched weights");
    }
    auto targets = targets_of(medians);
    double err = 0;
    for (size_t i = 0; i < set.states.size(); ++i) {
        err += set.weights[i] * nearest(set.states[i], targets).second;
    }
    return err;
}

MedianSet bicriteria(std::span<const DensityMatrix> states, size_t k, double beta, uint64_t seed) {
    if (k < 1 || states.size() < k) {
        throw ParameterError("bicriteria needs 1 <= k <= |S|");
    }
    if (!(beta >= 1)) {
        throw ParameterError("bicriteria needs beta >= 1");
    }
    const size_t n = states.size();
    const size_t target = std::min(n, static_cast<size_t>(std::ceil(beta * static_cast<double>(k) - 1e-12)));
    Rng rng(seed);
    MedianSet out;
    out.k = k;
    size_t first = rng.index(n);
    out.medians.push_back(states[first]);
    out.source_indices.push_back(first);

    std::vector<double> dist(n);
    {
        DivergenceTarget t(states[first]);
        for (size_t i = 0; i < n; ++i) {
            dist[i] = t.from(states[i]);
        }
    }
    while (out.medians.size() < target) {
        double err = 0;
        for (double d : dist) {
            err += d;
        }
        if (!(err > 0)) {
            break;
        }
        size_t pick;
        if (std::isinf(err)) {
            // Points at infinite divergence dominate; choose uniformly among them.
            std::vector<double> inf_w(n);
            for (size_t i = 0; i < n; ++i) {
                inf_w[i] = std::isinf(dist[i]) ? 1.0 : 0.0;
            }
            double total = 0;
            for (double w : inf_w) {
                total += w;
            }
            pick = sample_weighted(inf_w, total, rng);
        } else {
            pick = sample_weighted(dist, err, rng);
        }
        out.medians.push_back(states[pick]);
        out.source_indices.push_back(pick);
        DivergenceTarget t(states[pick]);
        for (size_t i = 0; i < n; ++i) {
            dist[i] = std::min(dist[i], t.from(states[i]));
        }
    }
    return out;
}

WeightedStateSet build_coreset(std::span<const DensityMatrix> states, const MedianSet &medians, size_t m,
                               double alpha, uint64_t seed) {
    if (states.empty()) {
        throw ParameterError("coreset of an empty set");
    }
    if (m < 1) {
        throw ParameterError("coreset sample size m must be >= 1");
    }
    if (!(alpha > 0)) {
        throw ParameterError("coreset needs alpha > 0");
    }
    const size_t n = states.size();
    auto targets = targets_of(medians);
    std::vector<size_t> owner(n);
    std::vector<double> dist(n);
    double err = 0;
    for (size_t i = 0; i < n; ++i) {
        auto [j, d] = nearest(states[i], targets);
        owner[i] = j;
        dist[i] = d;
        err += d;
    }

    WeightedStateSet out;
    if (!(err > 0)) {
        std::vector<double> counts(targets.size(), 0);
        for (size_t i = 0; i < n; ++i) {
            counts[owner[i]] += 1;
        }
        for (size_t j = 0; j < targets.size(); ++j) {
            if (counts[j] > 0) {
                out.states.push_back(medians.medians[j]);
                out.weights.push_back(counts[j]);
                if (j < medians.source_indices.size()) {
                    out.source_indices.push_back(medians.source_indices[j]);
                }
            }
        }
        return out;
    }
    if (std::isinf(err)) {
        throw SingularInputError("coreset needs finite divergences; clamp the inputs first");
    }

    const double scale = alpha * static_cast<double>(n);
    const double radius = err / scale;
    const size_t rings = scale > 1 ? static_cast<size_t>(std::ceil(std::log2(scale))) : 0;
    // cells[i * (rings + 1) + j] lists the members of ring j around median i.
    std::vector<std::vector<size_t>> cells(targets.size() * (rings + 1));
    for (size_t i = 0; i < n; ++i) {
        size_t j = 0;
        if (dist[i] > radius) {
            j = static_cast<size_t>(std::ceil(std::log2(dist[i] / radius)));
            j = std::clamp<size_t>(j, 1, std::max<size_t>(rings, 1));
            if (j > rings) {
                j = rings;
            }
        }
        cells[owner[i] * (rings + 1) + j].push_back(i);
    }

    Rng rng(seed);
    for (auto &cell : cells) {
        if (cell.empty()) {
            continue;
        }
        size_t take = std::min(m, cell.size());
        for (size_t s = 0; s < take; ++s) {
            size_t r = s + rng.index(cell.size() - s);
            std::swap(cell[s], cell[r]);
        }
        std::sort(cell.begin(), cell.begin() + static_cast<std::ptrdiff_t>(take));
        double w = static_cast<double>(cell.size()) / static_cast<double>(take);
        for (size_t s = 0; s < take; ++s) {
            out.states.push_back(states[cell[s]]);
            out.weights.push_back(w);
            out.source_indices.push_back(cell[s]);
        }
    }
    return out;
}

DensityMatrix centroid(const WeightedStateSet &set) {
    return weighted_mix(set.states, set.weights);
}

MedianSet brute_force_kmedian(std::span<const DensityMatrix> states, size_t k) {
    const size_t n = states.size();
    if (k < 1 || k > n) {
        throw ParameterError("brute-force k-median needs 1 <= k <= |S|");
    }
    double combos = 1;
    for (size_t i = 0; i < k; ++i) {
        combos = combos * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    if (combos > 1e6) {
        throw ParameterError("brute-force k-median: C(n, k) exceeds 10^6");
    }
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (size_t j = 0; j < n; ++j) {
        DivergenceTarget t(states[j]);
        for (size_t i = 0; i < n; ++i) {
            dist[i][j] = i == j ? 0.0 : t.from(states[i]);
        }
    }
    std::vector<size_t> comb(k);
    for (size_t i = 0; i < k; ++i) {
        comb[i] = i;
    }
    std::vector<size_t> best = comb;
    double best_cost = std::numeric_limits<double>::infinity();
    while (true) {
        double cost = 0;
        for (size_t i = 0; i < n && cost < best_cost; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (size_t c : comb) {
                d = std::min(d, dist[i][c]);
            }
            cost += d;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = comb;
        }
        // Next combination in lexicographic order.
        size_t pos = k;
        while (pos > 0 && comb[pos - 1] == n - k + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        ++comb[pos - 1];
        for (size_t i = pos; i < k; ++i) {
            comb[i] = comb[i - 1] + 1;
        }
    }
    MedianSet out;
    out.k = k;
    for (size_t c : best) {
        out.medians.push_back(states[c]);
        out.source_indices.push_back(c);
    }
    return out;
}

namespace {

using TargetPtr = std::shared_ptr<const DivergenceTarget>;

struct Point {
    size_t idx;
    double w;
};

struct Outcome {
    std::vector<TargetPtr> medians;
    double error = 0;
};

class Clusterer {
   public:
    Clusterer(const WeightedStateSet &set, const ClusterConfig &cfg) : set_(set), cfg_(cfg) {
        for (const auto &s : set_.states) {
            point_targets_.push_back(std::make_shared<const DivergenceTarget>(s));
        }
        const double mu = cfg_.domain.mu();
        const double k = static_cast<double>(cfg_.k);
        sample_formula_ = 96 * k * k / (cfg_.eps * cfg_.eps * mu * cfg_.delta);
        subset_formula_ = 3 / (cfg_.eps * mu * cfg_.delta);
    }

    size_t truncations() const {
        return truncations_;
    }

    Outcome run(const std::vector<Point> &pts, size_t m, const std::vector<TargetPtr> &found, uint64_t stream) {
        if (m == 0) {
            return {found, error(pts, found)};
        }
        if (m >= pts.size()) {
            std::vector<TargetPtr> all = found;
            for (const auto &p : pts) {
                all.push_back(point_targets_[p.idx]);
            }
            return {all, error(pts, all)};
        }
        Rng rng(Rng::derive(stream, {0}));
        const size_t sample_size = capped(sample_formula_, pts.size());
        std::vector<double> weights;
        double total = 0;
        for (const auto &p : pts) {
            weights.push_back(p.w);
            total += p.w;
        }
        std::vector<size_t> sample;
        for (size_t s = 0; s < sample_size; ++s) {
            sample.push_back(sample_weighted(weights, total, rng));
        }
        const size_t subset_size = capped(subset_formula_, sample.size());
        auto subsets = candidate_subsets(pts, sample, subset_size, rng);

        Outcome best;
        best.error = std::numeric_limits<double>::infinity();
        bool have = false;
        for (size_t c = 0; c < subsets.size(); ++c) {
            std::vector<TargetPtr> next = found;
            next.push_back(std::make_shared<const DivergenceTarget>(centroid_of(pts, subsets[c])));
            Outcome o = run(pts, m - 1, next, Rng::derive(stream, {1, c}));
            consider(pts, o, best, have);
        }
        if (!found.empty()) {
            std::vector<Point> rest = prune(pts, found);
            Outcome o = run(rest, m, found, Rng::derive(stream, {2}));
            consider(pts, o, best, have);
        }
        return best;
    }

   private:
    static size_t capped(double formula, size_t cap) {
        if (!(formula < static_cast<double>(cap))) {
            return cap;
        }
        return std::max<size_t>(1, static_cast<size_t>(std::ceil(formula)));
    }

    double dist(size_t idx, const std::vector<TargetPtr> &medians) const {
        double d = std::numeric_limits<double>::infinity();
        for (const auto &t : medians) {
            d = std::min(d, t->from(set_.states[idx]));
        }
        return d;
    }

    double error(const std::vector<Point> &pts, const std::vector<TargetPtr> &medians) const {
        double e = 0;
        for (const auto &p : pts) {
            double d = dist(p.idx, medians);
            // A zero-weight point contributes nothing, even at infinite divergence.
            if (p.w > 0) {
                e += p.w * d;
            }
        }
        return e;
    }

    void consider(const std::vector<Point> &pts, Outcome &o, Outcome &best, bool &have) const {
        o.error = error(pts, o.medians);
        if (!have || o.error < best.error) {
            best = std::move(o);
            have = true;
        }
    }

    DensityMatrix centroid_of(const std::vector<Point> &pts, const std::vector<size_t> &positions) const {
        std::vector<DensityMatrix> states;
        std::vector<double> w;
        for (size_t pos : positions) {
            states.push_back(set_.states[pts[pos].idx]);
            w.push_back(pts[pos].w);
        }
        return weighted_mix(states, w);
    }

    /// Sub-multisets of the sample (as positions into pts), smallest size first, deduplicated,
    /// at most candidate_cap of them.
    std::vector<std::vector<size_t>> candidate_subsets(const std::vector<Point> &pts, const std::vector<size_t> &sample,
                                                       size_t max_size, Rng &rng) {
        std::vector<std::vector<size_t>> out;
        std::set<std::vector<size_t>> seen;
        const size_t cap = std::max<size_t>(1, cfg_.candidate_cap);
        const size_t n = sample.size();
        auto add = [&](const std::vector<size_t> &positions_in_sample) {
            std::vector<size_t> key;
            for (size_t q : positions_in_sample) {
                key.push_back(pts[sample[q]].idx);
            }
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) {
                std::vector<size_t> positions;
                for (size_t q : positions_in_sample) {
                    positions.push_back(sample[q]);
                }
                out.push_back(std::move(positions));
            }
        };
        for (size_t size = 1; size <= max_size && out.size() < cap; ++size) {
            double count = 1;
            for (size_t i = 0; i < size; ++i) {
                count = count * static_cast<double>(n - i) / static_cast<double>(i + 1);
            }
            if (count <= static_cast<double>(cap - out.size())) {
                std::vector<size_t> comb(size);
                for (size_t i = 0; i < size; ++i) {
                    comb[i] = i;
                }
                while (true) {
                    add(comb);
                    size_t pos = size;
                    while (pos > 0 && comb[pos - 1] == n - size + pos - 1) {
                        --pos;
                    }
                    if (pos == 0) {
                        break;
                    }
                    ++comb[pos - 1];
                    for (size_t i = pos; i < size; ++i) {
                        comb[i] = comb[i - 1] + 1;
                    }
                }
                continue;
            }
            ++truncations_;
            std::vector<size_t> perm(n);
            for (size_t i = 0; i < n; ++i) {
                perm[i] = i;
            }
            size_t attempts = 0;
            while (out.size() < cap && attempts < 50 * cap) {
                ++attempts;
                for (size_t i = 0; i < size; ++i) {
                    std::swap(perm[i], perm[i + rng.index(n - i)]);
                }
                std::vector<size_t> pick(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(size));
                std::sort(pick.begin(), pick.end());
                add(pick);
            }
            break;
        }
        return out;
    }

    /// Removes the half of the weight closest to the found medians.
    std::vector<Point> prune(const std::vector<Point> &pts, const std::vector<TargetPtr> &found) const {
        std::vector<std::pair<double, size_t>> order;
        double total = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            order.emplace_back(dist(pts[i].idx, found), i);
            total += pts[i].w;
        }
        std::stable_sort(order.begin(), order.end(),
                         [](const auto &a, const auto &b) { return a.first < b.first; });
        const double half = total / 2;
        double acc = 0;
        std::vector<Point> rest;
        size_t pos = 0;
        for (; pos < order.size(); ++pos) {
            const Point &p = pts[order[pos].second];
            if (acc + p.w <= half * (1 + 1e-12)) {
                acc += p.w;
                continue;
            }
            double remaining = p.w - (half - acc);
            if (rest.empty() && pos == 0) {
                // No whole point leaves; drop the boundary point so the set shrinks.
                ++pos;
            } else if (remaining > 0) {
                rest.push_back({p.idx, remaining});
                ++pos;
            }
            break;
        }
        for (; pos < order.size(); ++pos) {
            rest.push_back(pts[order[pos].second]);
        }
        if (rest.size() == pts.size() && !rest.empty()) {
            rest.erase(rest.begin());
        }
        return rest;
    }

    const WeightedStateSet &set_;
    const ClusterConfig &cfg_;
    std::vector<TargetPtr> point_targets_;
    double sample_formula_ = 0;
    double subset_formula_ = 0;
    size_t truncations_ = 0;
};

}  // namespace

ClusterResult cluster(const WeightedStateSet &set, size_t m, const MedianSet &found, const ClusterConfig &config,
                      uint64_t seed) {
    if (set.states.empty() || set.states.size() != set.weights.size()) {
        throw ParameterError("cluster needs a nonempty weighted set");
    }
    if (!(config.eps > 0 && config.delta > 0 && config.delta < 1) || config.k < 1) {
        throw ParameterError("cluster needs k >= 1, eps > 0, 0 < delta < 1");
    }
    for (const auto &s : set.states) {
        if (s.min_eigenvalue() < config.domain.lambda * (1 - 1e-9) - kZeroEigenvalue) {
            throw ParameterError("cluster inputs must be clamped to the domain");
        }
    }
    Clusterer c(set, config);
    std::vector<Point> pts;
    for (size_t i = 0; i < set.states.size(); ++i) {
        pts.push_back({i, set.weights[i]});
    }
    std::vector<TargetPtr> start;
    for (const auto &s : found.medians) {
        start.push_back(std::make_shared<const DivergenceTarget>(s));
    }
    Outcome o = c.run(pts, m, start, seed);
    ClusterResult r;
    r.medians.k = config.k;
    for (const auto &t : o.medians) {
        r.medians.medians.push_back(t->state());
    }
    r.error = o.error;
    r.truncations = c.truncations();
    return r;
}

}  // namespace supaq
