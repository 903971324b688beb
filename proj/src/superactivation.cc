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

#include "supaq/superactivation.h"

#include <cmath>
#include <cstdio>

#include "supaq/errors.h"

namespace supaq {

double smith_yard_bound(double p_private) {
    if (!(p_private >= 0)) {
        throw ParameterError("private capacity must be nonnegative");
    }
    return 0.5 * p_private;
}

double horodecki_private_lb(double q) {
    if (!(q > 0 && q < 1)) {
        throw ParameterError("q must lie in (0, 1)");
    }
    return 1 - q * std::log2(q) - (1 - q) * std::log2(1 - q);
}

double horodecki_q() {
    return std::sqrt(2.0) / (1 + std::sqrt(2.0));
}

CombinationRadius combination_radius(const KrausChannel &a, const KrausChannel &b, const OptimizerConfig &cfg) {
    CombinationRadius r{quantum_capacity_lb(tensor(a, b), cfg), 0, std::nullopt};
    r.per_use = r.joint.value / 2;
    CapacityResult pa = max_private_info(a, cfg);
    CapacityResult pb = max_private_info(b, cfg);
    if (pa.converged && pb.converged) {
        r.private_floor = 0.5 * (std::max(pa.value, 0.0) + std::max(pb.value, 0.0));
    }
    return r;
}

DensityMatrix smith_yard_input(const Ensemble &e) {
    const size_t d = e.dim();
    const size_t nx = e.size();
    const auto total = static_cast<Eigen::Index>(d * nx * d);
    CMatrix m = CMatrix::Zero(total, total);
    for (size_t x = 0; x < nx; ++x) {
        const DensityMatrix &rho = e.states()[x];
        CVector phi = CVector::Zero(total);
        for (size_t j = 0; j < d; ++j) {
            double l = rho.eigenvalues()[static_cast<Eigen::Index>(j)];
            if (l <= 0) {
                continue;
            }
            for (size_t a = 0; a < d; ++a) {
                auto idx = static_cast<Eigen::Index>(a * nx * d + x * d + j);
                phi[idx] = std::sqrt(l) * rho.eigenvectors()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
            }
        }
        m += e.probs()[x] * phi * phi.adjoint();
    }
    return DensityMatrix::normalized(m, 1e-9);
}

double smith_yard_rate(const KrausChannel &ch, const Ensemble &e) {
    if (ch.dim_in() != e.dim()) {
        throw DimensionError("ensemble dimension does not match the channel input");
    }
    KrausChannel joint = tensor(ch, erasure(0.5, e.size() * e.dim()));
    return coherent_information(joint, smith_yard_input(e));
}

SmithYardRadius smith_yard_radius(const KrausChannel &ch, const OptimizerConfig &cfg) {
    CapacityResult p = max_private_info(ch, cfg);
    double rate = smith_yard_rate(ch, p.ensemble);
    return {rate, std::move(p)};
}

std::string evaluator_name(Evaluator e) {
    return e == Evaluator::PaperConstants ? "paper-constants" : "coherent-search";
}

Evaluator parse_evaluator(const std::string &name) {
    if (name == "paper-constants") {
        return Evaluator::PaperConstants;
    }
    if (name == "coherent-search") {
        return Evaluator::CoherentSearch;
    }
    throw ParameterError("unknown evaluator '" + name + "'");
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0) || !(lo >= 0) || !(hi <= 1) || !(lo <= hi)) {
        throw ParameterError("grid needs 0 <= lo <= hi <= 1 and step > 0");
    }
    auto count = static_cast<size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        out.push_back(std::min(hi, lo + static_cast<double>(i) * step));
    }
    return out;
}

namespace {

struct Radii {
    double hh = 0;
    double ha = 0;
    double aa = 0;
};

SweepRow compose(double p, const Radii &r) {
    SweepRow row;
    row.p = p;
    row.r_hh = r.hh;
    row.r_ha = r.ha;
    row.r_aa = r.aa;
    row.w_hh = p * p;
    row.w_ha = 2 * p * (1 - p);
    row.w_aa = (1 - p) * (1 - p);
    row.r_super = row.w_hh * r.hh + row.w_ha * r.ha + row.w_aa * r.aa;
    return row;
}

bool in_gate(double p) {
    // Open interval; the guard absorbs grid rounding at the upper edge.
    return p > 0 && p < kPaperGateHigh - 1e-12;
}

}  // namespace

SweepReport sweep(const SweepConfig &cfg) {
    for (size_t i = 0; i < cfg.p_grid.size(); ++i) {
        double p = cfg.p_grid[i];
        if (!(p >= 0 && p <= 1)) {
            throw ParameterError("grid probabilities must lie in [0, 1]");
        }
        if (i > 0 && !(p > cfg.p_grid[i - 1])) {
            throw ParameterError("grid must be strictly increasing");
        }
    }
    SweepReport report;
    report.evaluator = cfg.evaluator;
    report.threshold = cfg.threshold;

    if (cfg.evaluator == Evaluator::PaperConstants) {
        for (double p : cfg.p_grid) {
            report.rows.push_back(compose(p, {0, in_gate(p) ? kPaperRadiusHA : 0, 0}));
        }
    } else {
        if (!cfg.channel_a || !cfg.channel_b) {
            throw ParameterError("coherent-search evaluator needs channel_a and channel_b");
        }
        // The radii do not depend on p, so they are computed once.
        std::optional<Radii> radii;
        std::string failure;
        try {
            OptimizerConfig opt = cfg.optimizer;
            opt.seed = cfg.seed;
            Radii r;
            r.hh = combination_radius(*cfg.channel_a, *cfg.channel_a, opt).joint.value;
            r.ha = combination_radius(*cfg.channel_a, *cfg.channel_b, opt).joint.value;
            r.aa = combination_radius(*cfg.channel_b, *cfg.channel_b, opt).joint.value;
            radii = r;
        } catch (const Error &e) {
            failure = e.what();
        }
        for (double p : cfg.p_grid) {
            if (radii) {
                report.rows.push_back(compose(p, *radii));
            } else {
                SweepRow row;
                row.p = p;
                row.r_hh = row.r_ha = row.r_aa = row.r_super = std::nan("");
                row.w_hh = p * p;
                row.w_ha = 2 * p * (1 - p);
                row.w_aa = (1 - p) * (1 - p);
                row.ok = false;
                report.rows.push_back(row);
            }
        }
        if (!radii) {
            report.notes.push_back("evaluator failed: " + failure);
        }
    }
    report.domain = detect_domain(report, cfg.threshold);

    char buf[160];
    std::snprintf(buf, sizeof buf, "weight 2p(1-p) at p=0.004 is %.6f; published value %.4f", 2 * 0.004 * 0.996,
                  kPublishedWeightAt0004);
    report.notes.emplace_back(buf);
    std::snprintf(buf, sizeof buf,
                  "1 - q log2 q - (1-q) log2(1-q) at q=sqrt2/(1+sqrt2) is %.4f; published private capacity 0.02",
                  horodecki_private_lb(horodecki_q()));
    report.notes.emplace_back(buf);
    return report;
}

std::vector<std::pair<double, double>> detect_domain(const SweepReport &report, double threshold) {
    std::vector<std::pair<double, double>> out;
    const auto &rows = report.rows;
    size_t i = 0;
    while (i < rows.size()) {
        if (!(rows[i].r_super > threshold)) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < rows.size() && rows[j + 1].r_super > threshold) {
            ++j;
        }
        double lo = i > 0 ? rows[i - 1].p : rows[i].p;
        double hi = j + 1 < rows.size() ? rows[j + 1].p : rows[j].p;
        out.emplace_back(lo, hi);
        i = j + 1;
    }
    return out;
}

double recomposition_residual(const SweepRow &row) {
    double p = row.p;
    double expect = p * p * row.r_hh + 2 * p * (1 - p) * row.r_ha + (1 - p) * (1 - p) * row.r_aa;
    return std::abs(row.r_super - expect);
}

}  // namespace supaq
