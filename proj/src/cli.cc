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

#include "supaq/cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "supaq/ball.h"
#include "supaq/capacity.h"
#include "supaq/coreset.h"
#include "supaq/errors.h"
#include "supaq/parallel.h"
#include "supaq/report.h"
#include "supaq/rng.h"
#include "supaq/superactivation.h"

namespace supaq {

namespace {

double parse_double(const std::string &s, const std::string &what) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw UsageError("");
        }
        return v;
    } catch (...) {
        throw UsageError("cannot read " + what + " from '" + s + "'");
    }
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Emits the CSV to --out when given, otherwise to stdout.
void emit(const CsvReport &csv, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << csv.str();
    } else {
        write_report(csv, path);
    }
}

struct CapacityArgs {
    std::string channel;
    std::string quantity = "quantum-lb";
    int n = 1;
    uint64_t seed = 0;
    int restarts = OptimizerConfig{}.restarts;
    size_t max_evals = OptimizerConfig{}.max_evals;
    std::string out;
};

int cmd_capacity(const CapacityArgs &a, std::ostream &out) {
    KrausChannel ch = channel_from_uri(a.channel);
    OptimizerConfig cfg;
    cfg.seed = a.seed;
    cfg.restarts = a.restarts;
    cfg.max_evals = a.max_evals;
    CapacityResult r = [&] {
        if (a.quantity == "holevo") {
            return holevo_capacity(ch, cfg);
        }
        if (a.quantity == "coherent") {
            return max_coherent_information(ch, cfg);
        }
        if (a.quantity == "quantum-lb") {
            return quantum_capacity_lb(ch, cfg);
        }
        if (a.quantity == "private") {
            return max_private_info(ch, cfg);
        }
        if (a.quantity == "finite-n") {
            return finite_n_capacity(ch, a.n, cfg);
        }
        throw UsageError("unknown quantity '" + a.quantity + "'");
    }();
    out << format_number(r.value) << "\n";
    if (!a.out.empty()) {
        write_report(capacity_csv(r, a.quantity, a.channel, a.seed), a.out);
    }
    return kExitOk;
}

struct SweepArgs {
    std::string evaluator = "paper-constants";
    std::string grid = "0:0.1:1e-4";
    double threshold = 0;
    std::string channel_a;
    std::string channel_b;
    uint64_t seed = 0;
    int restarts = OptimizerConfig{}.restarts;
    size_t max_evals = OptimizerConfig{}.max_evals;
    std::string out;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out) {
    auto parts = split(a.grid, ':');
    if (parts.size() != 3) {
        throw UsageError("--grid expects lo:hi:step");
    }
    SweepConfig cfg;
    try {
        cfg.evaluator = parse_evaluator(a.evaluator);
    } catch (const ParameterError &e) {
        throw UsageError(e.what());
    }
    cfg.p_grid = make_grid(parse_double(parts[0], "grid start"), parse_double(parts[1], "grid end"),
                           parse_double(parts[2], "grid step"));
    cfg.threshold = a.threshold;
    cfg.seed = a.seed;
    cfg.optimizer.restarts = a.restarts;
    cfg.optimizer.max_evals = a.max_evals;
    if (cfg.evaluator == Evaluator::CoherentSearch) {
        if (a.channel_a.empty() || a.channel_b.empty()) {
            throw UsageError("coherent-search needs --channel-a and --channel-b");
        }
        cfg.channel_a = channel_from_uri(a.channel_a);
        cfg.channel_b = channel_from_uri(a.channel_b);
    }
    SweepReport report = sweep(cfg);
    CsvReport csv = sweep_csv(report, a.seed);
    emit(csv, a.out, out);
    if (!a.out.empty()) {
        out << "rows " << report.rows.size() << "\n";
        for (const auto &[lo, hi] : report.domain) {
            out << "domain [" << format_number(lo) << ", " << format_number(hi) << "]\n";
        }
    }
    return kExitOk;
}

struct ClusterArgs {
    std::string states;
    size_t k = 2;
    double eps = 0.3;
    double delta = 0.3;
    double beta = 2;
    double alpha = 1;
    size_t coreset_m = 8;
    uint64_t seed = 0;
    std::string out;
};

int cmd_cluster(const ClusterArgs &a, std::ostream &out) {
    auto raw = parse_states(read_file(a.states));
    ClusterConfig cfg;
    cfg.k = a.k;
    cfg.eps = a.eps;
    cfg.delta = a.delta;
    std::vector<DensityMatrix> states;
    for (const auto &s : raw) {
        states.push_back(clamp_to_domain(s, cfg.domain));
    }
    if (a.k < 1 || a.k > states.size()) {
        throw ParameterError("--k must lie in [1, number of states]");
    }
    MedianSet seeds = bicriteria(states, a.k, a.beta, Rng::derive(a.seed, {1}));
    WeightedStateSet core = build_coreset(states, seeds, a.coreset_m, a.alpha, Rng::derive(a.seed, {2}));
    ClusterResult r = cluster(core, a.k, MedianSet{}, cfg, Rng::derive(a.seed, {3}));
    double full_error = kmedian_error(states, r.medians);

    CsvReport csv;
    csv.metadata.push_back(std::string("supaq ") + kVersion);
    csv.metadata.push_back("seed " + std::to_string(a.seed));
    csv.metadata.push_back("states " + std::to_string(states.size()) + ", coreset " + std::to_string(core.states.size()));
    csv.metadata.push_back("error " + format_number(full_error));
    csv.metadata.push_back("coreset error " + format_number(r.error));
    csv.metadata.push_back("truncations " + std::to_string(r.truncations));
    const size_t d = states.front().dim();
    if (d == 2) {
        csv.header = {"median", "x", "y", "z"};
        for (size_t i = 0; i < r.medians.medians.size(); ++i) {
            BlochVector b = density_to_bloch(r.medians.medians[i]);
            csv.rows.push_back({static_cast<double>(i), b.x, b.y, b.z});
        }
    } else {
        csv.header = {"median", "row", "col", "re", "im"};
        for (size_t i = 0; i < r.medians.medians.size(); ++i) {
            const CMatrix &m = r.medians.medians[i].matrix();
            for (Eigen::Index u = 0; u < m.rows(); ++u) {
                for (Eigen::Index v = 0; v < m.cols(); ++v) {
                    csv.rows.push_back({static_cast<double>(i), static_cast<double>(u), static_cast<double>(v),
                                        m(u, v).real(), m(u, v).imag()});
                }
            }
        }
    }
    emit(csv, a.out, out);
    return kExitOk;
}

struct BallArgs {
    std::string states;
    double tol = 1e-9;
    int max_iter = 20000;
    std::string out;
};

int cmd_ball(const BallArgs &a, std::ostream &out) {
    auto states = parse_states(read_file(a.states));
    InfoBall ball = minimax_ball(states, a.tol, a.max_iter);
    CsvReport csv;
    csv.metadata.push_back(std::string("supaq ") + kVersion);
    std::string support = "support";
    for (size_t i : ball.support) {
        support += " " + std::to_string(i);
    }
    csv.metadata.push_back(support);
    if (ball.center.dim() == 2) {
        BlochVector b = density_to_bloch(ball.center);
        csv.metadata.push_back("center bloch " + format_number(b.x) + " " + format_number(b.y) + " " +
                               format_number(b.z));
    }
    csv.header = {"radius", "lower_bound", "converged", "iterations"};
    csv.rows.push_back({ball.radius, ball.lower_bound, ball.converged ? 1.0 : 0.0, static_cast<double>(ball.iterations)});
    csv.header.reserve(csv.header.size() + ball.weights.size());
    for (size_t i = 0; i < ball.weights.size(); ++i) {
        csv.header.push_back("w" + std::to_string(i));
        csv.rows.back().push_back(ball.weights[i]);
    }
    emit(csv, a.out, out);
    return kExitOk;
}

int cmd_validate(const std::string &path, std::ostream &out) {
    KrausChannel ch = load_channel(path);
    out << "ok " << (ch.name().empty() ? "unnamed" : ch.name()) << " dim_in=" << ch.dim_in()
        << " dim_out=" << ch.dim_out() << " kraus=" << ch.kraus().size()
        << " residual=" << format_number(completeness_residual(ch.dim_in(), ch.kraus())) << "\n";
    return kExitOk;
}

}  // namespace

KrausChannel channel_from_uri(const std::string &uri) {
    if (uri.rfind("file:", 0) == 0) {
        return load_channel(uri.substr(5));
    }
    auto parts = split(uri, ':');
    if (parts.size() != 3 || parts[0] != "builtin") {
        throw UsageError("channel URI must be builtin:<kind>:<param> or file:<path>, got '" + uri + "'");
    }
    const std::string &kind = parts[1];
    if (kind == "identity") {
        double d = parse_double(parts[2], "identity dimension");
        if (!(d >= 1) || d != std::floor(d)) {
            throw UsageError("identity dimension must be a positive integer");
        }
        return identity_channel(static_cast<size_t>(d));
    }
    if (kind == "depolarizing") {
        return depolarizing(parse_double(parts[2], "depolarizing probability"));
    }
    if (kind == "erasure") {
        return erasure(parse_double(parts[2], "erasure probability"));
    }
    throw UsageError("unknown builtin channel '" + kind + "'");
}

std::vector<DensityMatrix> parse_states(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }
    std::vector<DensityMatrix> out;
    if (root.contains("bloch")) {
        for (const auto &v : root["bloch"]) {
            if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
                throw ParseError("bloch entries must be [x, y, z]");
            }
            out.push_back(bloch_to_density({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}));
        }
    } else if (root.contains("states")) {
        for (const auto &s : root["states"]) {
            std::vector<const nlohmann::json *> entries;
            if (!s.is_array()) {
                throw ParseError("each state must be an array of [re, im] pairs");
            }
            for (const auto &e : s) {
                if (e.is_array() && !e.empty() && e[0].is_array()) {
                    for (const auto &inner : e) {
                        entries.push_back(&inner);
                    }
                } else {
                    entries.push_back(&e);
                }
            }
            auto d = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
            if (d == 0 || d * d != entries.size()) {
                throw ParseError("state with " + std::to_string(entries.size()) + " entries is not square");
            }
            CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            for (size_t i = 0; i < entries.size(); ++i) {
                const auto &p = *entries[i];
                if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                    throw ParseError("state entries must be [re, im] pairs");
                }
                m(static_cast<Eigen::Index>(i / d), static_cast<Eigen::Index>(i % d)) =
                    Complex(p[0].get<double>(), p[1].get<double>());
            }
            out.emplace_back(m);
        }
    } else {
        throw ParseError("state file needs a 'states' or 'bloch' array");
    }
    if (out.empty()) {
        throw ParseError("state file lists no states");
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"supaq: channel capacities as informational-ball radii"};
    app.require_subcommand(1);
    size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (default: SUPAQ_THREADS or all cores)");

    CapacityArgs cap;
    auto *c = app.add_subcommand("capacity", "capacity lower bounds of one channel");
    c->add_option("--channel", cap.channel, "builtin:<kind>:<param> or file:<path>")->required();
    c->add_option("--quantity", cap.quantity, "holevo | coherent | quantum-lb | private | finite-n");
    c->add_option("--n", cap.n, "channel uses for finite-n (1 or 2)");
    c->add_option("--seed", cap.seed);
    c->add_option("--restarts", cap.restarts);
    c->add_option("--max-evals", cap.max_evals, "evaluations per restart");
    c->add_option("--out", cap.out, "CSV report path");

    SweepArgs sw;
    auto *s = app.add_subcommand("sweep", "sweep the mixing probability p");
    s->add_option("--evaluator", sw.evaluator, "paper-constants | coherent-search");
    s->add_option("--grid", sw.grid, "lo:hi:step");
    s->add_option("--threshold", sw.threshold);
    s->add_option("--channel-a", sw.channel_a);
    s->add_option("--channel-b", sw.channel_b);
    s->add_option("--seed", sw.seed);
    s->add_option("--restarts", sw.restarts);
    s->add_option("--max-evals", sw.max_evals);
    s->add_option("--out", sw.out);

    ClusterArgs cl;
    auto *k = app.add_subcommand("cluster", "k-median clustering of states");
    k->add_option("--states", cl.states)->required();
    k->add_option("--k", cl.k);
    k->add_option("--eps", cl.eps);
    k->add_option("--delta", cl.delta);
    k->add_option("--beta", cl.beta, "bicriteria oversampling");
    k->add_option("--alpha", cl.alpha, "coreset ring scale");
    k->add_option("--coreset-m", cl.coreset_m, "samples per coreset cell");
    k->add_option("--seed", cl.seed);
    k->add_option("--out", cl.out);

    BallArgs bl;
    auto *b = app.add_subcommand("ball", "smallest enclosing relative-entropy ball");
    b->add_option("--states", bl.states)->required();
    b->add_option("--tol", bl.tol);
    b->add_option("--max-iter", bl.max_iter);
    b->add_option("--out", bl.out);

    std::string chan_file;
    auto *v = app.add_subcommand("validate-channel", "check a channel file");
    v->add_option("--file", chan_file)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        struct ThreadScope {
            explicit ThreadScope(size_t n) : active(n > 0) {
                if (active) {
                    set_thread_count(n);
                }
            }
            ~ThreadScope() {
                if (active) {
                    set_thread_count(0);
                }
            }
            bool active;
        } scope(threads);
        if (c->parsed()) {
            return cmd_capacity(cap, out);
        }
        if (s->parsed()) {
            return cmd_sweep(sw, out);
        }
        if (k->parsed()) {
            return cmd_cluster(cl, out);
        }
        if (b->parsed()) {
            return cmd_ball(bl, out);
        }
        return cmd_validate(chan_file, out);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidChannelError &e) {
        err << "invalid channel: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

}  // namespace supaq
