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

#include "supaq/capacity.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "supaq/ball.h"
#include "supaq/errors.h"
#include "supaq/optimize.h"
#include "supaq/parallel.h"
#include "supaq/rng.h"

namespace supaq {

namespace {

constexpr double kBallAgreement = 5e-3;
constexpr double kMinLogit = -40;

void check_dims(const KrausChannel &ch, size_t dim) {
    if (ch.dim_in() != dim) {
        throw DimensionError("input dimension " + std::to_string(dim) + " does not match channel dim_in " +
                             std::to_string(ch.dim_in()));
    }
}

void check_config(const OptimizerConfig &cfg) {
    if (cfg.restarts < 1) {
        throw ParameterError("optimizer needs restarts >= 1");
    }
    if (cfg.max_evals < 1) {
        throw ParameterError("optimizer needs max_evals >= 1");
    }
}

std::vector<DensityMatrix> outputs(const KrausChannel &ch, const std::vector<DensityMatrix> &states) {
    std::vector<DensityMatrix> out;
    out.reserve(states.size());
    for (const auto &s : states) {
        out.push_back(apply(ch, s));
    }
    return out;
}

double chi_of_outputs(const std::vector<DensityMatrix> &outs, const std::vector<double> &probs) {
    double avg = 0;
    for (size_t i = 0; i < outs.size(); ++i) {
        if (probs[i] > 0) {
            avg += probs[i] * von_neumann_entropy(outs[i]);
        }
    }
    return von_neumann_entropy(weighted_mix(outs, probs)) - avg;
}

double chi(const KrausChannel &ch, const std::vector<DensityMatrix> &states, const std::vector<double> &probs) {
    return chi_of_outputs(outputs(ch, states), probs);
}

/// Unit vector from 2d reals (real parts, then imaginary parts); the zero vector maps to |0⟩.
CVector unit_vector(const double *x, size_t d) {
    CVector v(static_cast<Eigen::Index>(d));
    for (size_t i = 0; i < d; ++i) {
        v[static_cast<Eigen::Index>(i)] = Complex(x[i], x[d + i]);
    }
    double n = v.norm();
    if (!(n > 1e-150)) {
        v.setZero();
        v[0] = 1;
        return v;
    }
    return v / n;
}

/// Pure-state ensemble of k states in dimension d: k blocks of 2d reals, then k logits.
struct EnsembleCoding {
    size_t dim;
    size_t k;

    size_t size() const {
        return k * (2 * dim + 1);
    }

    void decode(const std::vector<double> &x, std::vector<DensityMatrix> &states, std::vector<double> &probs) const {
        states.clear();
        probs.assign(k, 0.0);
        for (size_t i = 0; i < k; ++i) {
            states.push_back(DensityMatrix::pure(unit_vector(x.data() + i * 2 * dim, dim)));
        }
        const double *z = x.data() + k * 2 * dim;
        double zmax = *std::max_element(z, z + k);
        double total = 0;
        for (size_t i = 0; i < k; ++i) {
            probs[i] = std::exp(z[i] - zmax);
            total += probs[i];
        }
        for (double &p : probs) {
            p /= total;
        }
    }

    Ensemble decode(const std::vector<double> &x) const {
        std::vector<DensityMatrix> states;
        std::vector<double> probs;
        decode(x, states, probs);
        return Ensemble(std::move(states), std::move(probs));
    }

    /// Writes a pure-state ensemble of at most k states into the leading blocks; unused blocks
    /// keep their (random) vectors and get negligible weight.
    void encode(const Ensemble &e, std::vector<double> &x) const {
        if (e.size() > k) {
            throw ParameterError("seed ensemble larger than the search ensemble");
        }
        double *z = x.data() + k * 2 * dim;
        for (size_t i = 0; i < k; ++i) {
            z[i] = kMinLogit;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            const DensityMatrix &s = e.states()[i];
            CVector v = s.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1);
            for (size_t j = 0; j < dim; ++j) {
                x[i * 2 * dim + j] = v[static_cast<Eigen::Index>(j)].real();
                x[i * 2 * dim + dim + j] = v[static_cast<Eigen::Index>(j)].imag();
            }
            z[i] = e.probs()[i] > 0 ? std::max(kMinLogit, std::log(e.probs()[i])) : kMinLogit;
        }
    }
};

/// Density matrix AA†/Tr from the 2d² reals of A.
struct StateCoding {
    size_t dim;

    size_t size() const {
        return 2 * dim * dim;
    }

    DensityMatrix decode(const std::vector<double> &x) const {
        auto d = static_cast<Eigen::Index>(dim);
        CMatrix a(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                auto idx = static_cast<size_t>(i * d + j);
                a(i, j) = Complex(x[idx], x[dim * dim + idx]);
            }
        }
        CMatrix m = a * a.adjoint();
        double tr = m.trace().real();
        if (!(tr > 1e-300)) {
            return DensityMatrix::maximally_mixed(dim);
        }
        return DensityMatrix::normalized(m / tr, 1e-9);
    }

    std::vector<double> encode(const DensityMatrix &rho) const {
        HermitianEigen e{rho.eigenvalues(), rho.eigenvectors()};
        CMatrix a = spectral_apply(e, [](double v) { return std::sqrt(std::max(v, 0.0)); });
        auto d = static_cast<Eigen::Index>(dim);
        std::vector<double> x(size());
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                auto idx = static_cast<size_t>(i * d + j);
                x[idx] = a(i, j).real();
                x[dim * dim + idx] = a(i, j).imag();
            }
        }
        return x;
    }
};

Ensemble eigen_ensemble(const DensityMatrix &rho) {
    std::vector<DensityMatrix> states;
    std::vector<double> probs;
    const auto d = static_cast<Eigen::Index>(rho.dim());
    for (Eigen::Index i = d - 1; i >= 0; --i) {
        double l = rho.eigenvalues()[i];
        if (l > kZeroEigenvalue || states.empty()) {
            states.push_back(DensityMatrix::pure(rho.eigenvectors().col(i)));
            probs.push_back(std::max(l, 0.0));
        }
    }
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    for (double &p : probs) {
        p /= total;
    }
    return Ensemble(std::move(states), std::move(probs));
}

struct Run {
    std::vector<double> x;
    double value = 0;
    size_t evals = 0;
    bool converged = false;
};

/// One restart: a Nelder–Mead pass, then a second pass from its best point with a smaller simplex.
Run local_search(const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0,
                 const OptimizerConfig &cfg) {
    NelderMeadOptions first;
    first.value_tol = cfg.step_tol;
    first.max_evals = std::max<size_t>(1, cfg.max_evals * 3 / 5);
    first.initial_step = 0.5;
    auto a = nelder_mead_maximize(f, std::move(x0), first);
    NelderMeadOptions second = first;
    second.max_evals = cfg.max_evals - std::min(cfg.max_evals, a.evals);
    second.initial_step = 0.05;
    Run r{a.x, a.value, a.evals, a.converged};
    if (second.max_evals > 0) {
        auto b = nelder_mead_maximize(f, a.x, second);
        r.evals += b.evals;
        r.converged = b.converged;
        if (b.value > r.value) {
            r.x = b.x;
            r.value = b.value;
        }
    }
    return r;
}

/// One restart per entry of `starts`; an empty entry means a random start drawn from
/// derive(seed, {index}). Results come back in index order.
std::vector<Run> multistart(const std::function<double(const std::vector<double> &)> &f, size_t nparams,
                            const std::vector<std::vector<double>> &starts, const OptimizerConfig &cfg) {
    return parallel_map<Run>(starts.size(), [&](size_t i) {
        std::vector<double> x0 = starts[i];
        if (x0.empty()) {
            Rng rng(Rng::derive(cfg.seed, {i}));
            x0.resize(nparams);
            for (double &v : x0) {
                v = rng.normal();
            }
        }
        return local_search(f, std::move(x0), cfg);
    });
}

size_t best_index(const std::vector<double> &values) {
    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

size_t ensemble_size(const OptimizerConfig &cfg, size_t dim) {
    return cfg.ensemble_size > 0 ? cfg.ensemble_size : dim * dim;
}

/// Random leading blocks for a seeded ensemble vector, drawn from the restart's own stream.
std::vector<double> seeded_ensemble_vector(const EnsembleCoding &code, const Ensemble &e, const OptimizerConfig &cfg,
                                           size_t restart) {
    Rng rng(Rng::derive(cfg.seed, {restart}));
    std::vector<double> x(code.size());
    for (double &v : x) {
        v = rng.normal();
    }
    code.encode(e, x);
    return x;
}

struct SearchOutcome {
    CapacityResult best;
    /// Achiever of every restart, in restart order.
    std::vector<Ensemble> achievers;
};

SearchOutcome finish(std::vector<Run> runs, const std::function<Ensemble(const std::vector<double> &)> &decode) {
    std::vector<double> values;
    size_t evals = 0;
    std::vector<Ensemble> achievers;
    for (const auto &r : runs) {
        values.push_back(r.value);
        evals += r.evals;
        achievers.push_back(decode(r.x));
    }
    size_t b = best_index(values);
    return {CapacityResult{runs[b].value, achievers[b], runs[b].converged, evals}, std::move(achievers)};
}

/// Restart i starts at seed_states[i] when present, otherwise at random.
SearchOutcome coherent_search(const KrausChannel &ch, const OptimizerConfig &cfg,
                              const std::vector<DensityMatrix> &seed_states) {
    check_config(cfg);
    const KrausChannel env = complementary(ch);
    StateCoding code{ch.dim_in()};
    auto f = [&](const std::vector<double> &x) {
        DensityMatrix rho = code.decode(x);
        return von_neumann_entropy(apply(ch, rho)) - von_neumann_entropy(apply(env, rho));
    };
    std::vector<std::vector<double>> starts(std::max(static_cast<size_t>(cfg.restarts), seed_states.size()));
    for (size_t i = 0; i < seed_states.size(); ++i) {
        starts[i] = code.encode(seed_states[i]);
    }
    return finish(multistart(f, code.size(), starts, cfg),
                  [&](const std::vector<double> &x) { return eigen_ensemble(code.decode(x)); });
}

/// Restarts alternate: even index 2i starts from seeds[i] (when present), odd indices start at
/// random. Each restart depends on its index only.
SearchOutcome private_search(const KrausChannel &ch, const OptimizerConfig &cfg, const std::vector<Ensemble> &seeds) {
    check_config(cfg);
    const KrausChannel env = complementary(ch);
    size_t k = ensemble_size(cfg, ch.dim_in());
    for (const auto &s : seeds) {
        k = std::max(k, s.size());
    }
    EnsembleCoding code{ch.dim_in(), k};
    auto f = [&](const std::vector<double> &x) {
        std::vector<DensityMatrix> states;
        std::vector<double> probs;
        code.decode(x, states, probs);
        return chi(ch, states, probs) - chi(env, states, probs);
    };
    std::vector<std::vector<double>> starts(2 * std::max(static_cast<size_t>(cfg.restarts), seeds.size()));
    for (size_t i = 0; i < seeds.size(); ++i) {
        starts[2 * i] = seeded_ensemble_vector(code, seeds[i], cfg, 2 * i);
    }
    return finish(multistart(f, code.size(), starts, cfg),
                  [&](const std::vector<double> &x) { return code.decode(x); });
}

CapacityResult larger_clipped(CapacityResult a, CapacityResult b) {
    CapacityResult r = b.value > a.value ? std::move(b) : std::move(a);
    r.iterations = a.iterations + b.iterations;
    // Entropy round-off is ~1e-15; anything within the eigenvalue cutoff counts as zero.
    r.value = r.value > kZeroEigenvalue ? r.value : 0.0;
    return r;
}

}  // namespace

double holevo_quantity(const KrausChannel &ch, const Ensemble &e) {
    check_dims(ch, e.dim());
    return chi(ch, e.states(), e.probs());
}

double holevo_relative_entropy_form(const KrausChannel &ch, const Ensemble &e) {
    check_dims(ch, e.dim());
    auto outs = outputs(ch, e.states());
    DivergenceTarget avg(weighted_mix(outs, e.probs()));
    double total = 0;
    for (size_t i = 0; i < outs.size(); ++i) {
        if (e.probs()[i] > 0) {
            total += e.probs()[i] * avg.from(outs[i]);
        }
    }
    return total;
}

CapacityResult holevo_capacity(const KrausChannel &ch, const OptimizerConfig &cfg) {
    check_config(cfg);
    EnsembleCoding code{ch.dim_in(), ensemble_size(cfg, ch.dim_in())};
    auto f = [&](const std::vector<double> &x) {
        std::vector<DensityMatrix> states;
        std::vector<double> probs;
        code.decode(x, states, probs);
        return chi(ch, states, probs);
    };
    auto runs = multistart(f, code.size(), std::vector<std::vector<double>>(static_cast<size_t>(cfg.restarts)), cfg);

    struct Polished {
        std::optional<Ensemble> ensemble;
        double value = 0;
        double radius = 0;
        bool ball_converged = false;
    };
    // Per-restart polish keeps the max over restarts monotone in the restart count.
    auto polished = parallel_map<Polished>(runs.size(), [&](size_t i) {
        std::vector<DensityMatrix> states;
        std::vector<double> probs;
        code.decode(runs[i].x, states, probs);
        auto outs = outputs(ch, states);
        InfoBall ball = minimax_ball(outs, 1e-10);
        Polished p;
        p.radius = ball.radius;
        p.ball_converged = ball.converged;
        double refined = chi_of_outputs(outs, ball.weights);
        if (refined > runs[i].value) {
            p.value = refined;
            p.ensemble.emplace(states, ball.weights);
        } else {
            p.value = runs[i].value;
            p.ensemble.emplace(states, probs);
        }
        return p;
    });
    std::vector<double> values;
    size_t evals = 0;
    for (size_t i = 0; i < runs.size(); ++i) {
        values.push_back(polished[i].value);
        evals += runs[i].evals;
    }
    size_t b = best_index(values);
    const Polished &best = polished[b];
    bool agree = std::abs(best.radius - best.value) <= kBallAgreement;
    return CapacityResult{std::max(best.value, 0.0), *best.ensemble, agree && best.ball_converged, evals};
}

double coherent_information(const KrausChannel &ch, const DensityMatrix &rho) {
    check_dims(ch, rho.dim());
    return von_neumann_entropy(apply(ch, rho)) - von_neumann_entropy(apply(complementary(ch), rho));
}

double holevo_difference(const KrausChannel &ch, const Ensemble &e) {
    check_dims(ch, e.dim());
    return chi(ch, e.states(), e.probs()) - chi(complementary(ch), e.states(), e.probs());
}

double private_info(const KrausChannel &ch, const Ensemble &e) {
    return holevo_difference(ch, e);
}

CapacityResult max_coherent_information(const KrausChannel &ch, const OptimizerConfig &cfg) {
    return coherent_search(ch, cfg, {DensityMatrix::maximally_mixed(ch.dim_in())}).best;
}

CapacityResult max_private_info(const KrausChannel &ch, const OptimizerConfig &cfg) {
    SearchOutcome c = coherent_search(ch, cfg, {DensityMatrix::maximally_mixed(ch.dim_in())});
    CapacityResult p = private_search(ch, cfg, c.achievers).best;
    p.iterations += c.best.iterations;
    return p;
}

CapacityResult quantum_capacity_lb(const KrausChannel &ch, const OptimizerConfig &cfg) {
    SearchOutcome c = coherent_search(ch, cfg, {DensityMatrix::maximally_mixed(ch.dim_in())});
    SearchOutcome p = private_search(ch, cfg, c.achievers);
    return larger_clipped(std::move(c.best), std::move(p.best));
}

CapacityResult finite_n_capacity(const KrausChannel &ch, int n, const OptimizerConfig &cfg) {
    if (n == 1) {
        return quantum_capacity_lb(ch, cfg);
    }
    if (n != 2) {
        throw UnsupportedError("finite_n_capacity supports n = 1 and n = 2; larger n is out of reach");
    }
    if (ch.dim_in() > 4) {
        throw UnsupportedError("finite_n_capacity with n = 2 needs dim_in <= 4");
    }
    CapacityResult one = quantum_capacity_lb(ch, cfg);
    KrausChannel two = tensor_power(ch, 2);

    DensityMatrix rho1 = mix(one.ensemble);
    SearchOutcome c = coherent_search(two, cfg, {tensor(rho1, rho1), DensityMatrix::maximally_mixed(two.dim_in())});

    std::vector<DensityMatrix> states;
    std::vector<double> probs;
    for (size_t i = 0; i < one.ensemble.size(); ++i) {
        for (size_t j = 0; j < one.ensemble.size(); ++j) {
            states.push_back(tensor(one.ensemble.states()[i], one.ensemble.states()[j]));
            probs.push_back(one.ensemble.probs()[i] * one.ensemble.probs()[j]);
        }
    }
    std::vector<Ensemble> seeds{Ensemble(std::move(states), std::move(probs))};
    seeds.insert(seeds.end(), c.achievers.begin(), c.achievers.end());
    SearchOutcome p = private_search(two, cfg, seeds);

    CapacityResult r = larger_clipped(std::move(c.best), std::move(p.best));
    r.value /= 2;
    r.iterations += one.iterations;
    return r;
}

double superball_radius(std::span<const double> radii) {
    if (radii.empty()) {
        throw ParameterError("superball radius of an empty list");
    }
    double total = 0;
    for (double r : radii) {
        if (!(r >= 0)) {
            throw ParameterError("radii must be nonnegative");
        }
        total += r;
    }
    return total / static_cast<double>(radii.size());
}

}  // namespace supaq
