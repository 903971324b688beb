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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "supaq/ball.h"
#include "supaq/capacity.h"
#include "supaq/channels.h"
#include "supaq/cli.h"
#include "supaq/coreset.h"
#include "supaq/errors.h"
#include "supaq/parallel.h"
#include "supaq/qstate.h"
#include "supaq/report.h"
#include "supaq/superactivation.h"

namespace py = pybind11;
using namespace supaq;

namespace {

py::tuple bloch_tuple(const BlochVector &b) {
    return py::make_tuple(b.x, b.y, b.z);
}

py::dict row_dict(const SweepRow &r) {
    py::dict d;
    d["p"] = r.p;
    d["r_HH"] = r.r_hh;
    d["r_HA"] = r.r_ha;
    d["r_AA"] = r.r_aa;
    d["r_super"] = r.r_super;
    d["w_HH"] = r.w_hh;
    d["w_HA"] = r.w_ha;
    d["w_AA"] = r.w_aa;
    d["ok"] = r.ok;
    return d;
}

}  // namespace

PYBIND11_MODULE(_supaq, m) {
    m.doc() = "Channel capacities as informational-ball radii.";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "SupaqError", PyExc_ValueError);

    m.def("set_thread_count", &set_thread_count, py::arg("n"));
    m.def("thread_count", &thread_count);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<const CMatrix &>(), py::arg("matrix"))
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, py::arg("dim"))
        .def_static("basis", &DensityMatrix::basis, py::arg("dim"), py::arg("index"))
        .def_static("pure", &DensityMatrix::pure, py::arg("psi"))
        .def_static("from_bloch",
                    [](double x, double y, double z) { return bloch_to_density({x, y, z}); })
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("eigenvalues", &DensityMatrix::eigenvalues)
        .def("bloch", [](const DensityMatrix &r) { return bloch_tuple(density_to_bloch(r)); })
        .def("__repr__", [](const DensityMatrix &r) { return "<DensityMatrix dim=" + std::to_string(r.dim()) + ">"; });

    py::class_<Ensemble>(m, "Ensemble")
        .def(py::init<std::vector<DensityMatrix>, std::vector<double>>(), py::arg("states"), py::arg("probs"))
        .def_property_readonly("states", &Ensemble::states)
        .def_property_readonly("probs", &Ensemble::probs)
        .def("__len__", &Ensemble::size);

    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("relative_entropy", &relative_entropy, py::arg("rho"), py::arg("sigma"));
    m.def("bregman_divergence",
          py::overload_cast<const DensityMatrix &, const DensityMatrix &>(&bregman_divergence), py::arg("rho"),
          py::arg("sigma"));
    m.def("mix", &mix, py::arg("ensemble"));

    py::class_<KrausChannel>(m, "KrausChannel")
        .def(py::init<size_t, size_t, std::vector<CMatrix>, std::string>(), py::arg("dim_in"), py::arg("dim_out"),
             py::arg("kraus"), py::arg("name") = "")
        .def_property_readonly("dim_in", &KrausChannel::dim_in)
        .def_property_readonly("dim_out", &KrausChannel::dim_out)
        .def_property_readonly("kraus", &KrausChannel::kraus)
        .def_property_readonly("name", &KrausChannel::name)
        .def("__call__", [](const KrausChannel &ch, const DensityMatrix &rho) { return apply(ch, rho); })
        .def("serialize", &serialize_channel);

    m.def("identity_channel", &identity_channel, py::arg("dim"));
    m.def("depolarizing", &depolarizing, py::arg("p"));
    m.def("erasure", &erasure, py::arg("eps"), py::arg("dim") = 2);
    m.def("complementary", &complementary, py::arg("channel"));
    m.def("tensor", py::overload_cast<const KrausChannel &, const KrausChannel &>(&tensor), py::arg("a"), py::arg("b"));
    m.def("tensor_power", &tensor_power, py::arg("channel"), py::arg("n"));
    m.def("flagged_convex", &flagged_convex, py::arg("p"), py::arg("a"), py::arg("b"));
    m.def("parse_channel", [](const std::string &s) { return parse_channel(s); }, py::arg("text"));
    m.def("load_channel", [](const std::string &path) { return load_channel(path); }, py::arg("path"));
    m.def("channel_from_uri", &channel_from_uri, py::arg("uri"));

    py::class_<InfoBall>(m, "InfoBall")
        .def_readonly("center", &InfoBall::center)
        .def_readonly("radius", &InfoBall::radius)
        .def_readonly("support", &InfoBall::support)
        .def_readonly("weights", &InfoBall::weights)
        .def_readonly("lower_bound", &InfoBall::lower_bound)
        .def_readonly("converged", &InfoBall::converged)
        .def_readonly("iterations", &InfoBall::iterations);
    m.def(
        "minimax_ball",
        [](const std::vector<DensityMatrix> &states, double tol, int max_iter) {
            return minimax_ball(states, tol, max_iter);
        },
        py::arg("states"), py::arg("tol") = 1e-9, py::arg("max_iter") = 20000);

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("restarts", &OptimizerConfig::restarts)
        .def_readwrite("ensemble_size", &OptimizerConfig::ensemble_size)
        .def_readwrite("step_tol", &OptimizerConfig::step_tol)
        .def_readwrite("seed", &OptimizerConfig::seed)
        .def_readwrite("max_evals", &OptimizerConfig::max_evals);
    py::class_<CapacityResult>(m, "CapacityResult")
        .def_readonly("value", &CapacityResult::value)
        .def_readonly("ensemble", &CapacityResult::ensemble)
        .def_readonly("converged", &CapacityResult::converged)
        .def_readonly("iterations", &CapacityResult::iterations);

    auto cfg_arg = py::arg("config") = OptimizerConfig{};
    m.def("holevo_quantity", &holevo_quantity, py::arg("channel"), py::arg("ensemble"));
    m.def("coherent_information", &coherent_information, py::arg("channel"), py::arg("rho"));
    m.def("holevo_difference", &holevo_difference, py::arg("channel"), py::arg("ensemble"));
    m.def("private_info", &private_info, py::arg("channel"), py::arg("ensemble"));
    m.def("holevo_capacity", &holevo_capacity, py::arg("channel"), cfg_arg);
    m.def("max_coherent_information", &max_coherent_information, py::arg("channel"), cfg_arg);
    m.def("max_private_info", &max_private_info, py::arg("channel"), cfg_arg);
    m.def("quantum_capacity_lb", &quantum_capacity_lb, py::arg("channel"), cfg_arg);
    m.def("finite_n_capacity", &finite_n_capacity, py::arg("channel"), py::arg("n"), cfg_arg);

    m.def(
        "clamp",
        [](const DensityMatrix &rho, double lambda, double gamma) {
            return clamp_to_domain(rho, MuSimilarDomain(lambda, gamma));
        },
        py::arg("rho"), py::arg("lam") = 1e-4, py::arg("gamma") = 1 - 1e-4);
    m.def(
        "kmedian_error",
        [](const std::vector<DensityMatrix> &states, const std::vector<DensityMatrix> &medians) {
            MedianSet ms;
            ms.k = medians.size();
            ms.medians = medians;
            return kmedian_error(states, ms);
        },
        py::arg("states"), py::arg("medians"));
    m.def(
        "brute_force_kmedian",
        [](const std::vector<DensityMatrix> &states, size_t k) { return brute_force_kmedian(states, k).source_indices; },
        py::arg("states"), py::arg("k"));
    m.def(
        "cluster",
        [](const std::vector<DensityMatrix> &states, size_t k, double eps, double delta, uint64_t seed) {
            ClusterConfig cfg;
            cfg.k = k;
            cfg.eps = eps;
            cfg.delta = delta;
            std::vector<DensityMatrix> clamped;
            for (const auto &s : states) {
                clamped.push_back(clamp_to_domain(s, cfg.domain));
            }
            ClusterResult r = cluster(WeightedStateSet::uniform(clamped), k, MedianSet{}, cfg, seed);
            return py::make_tuple(r.medians.medians, kmedian_error(clamped, r.medians));
        },
        py::arg("states"), py::arg("k"), py::arg("eps") = 0.3, py::arg("delta") = 0.3, py::arg("seed") = 0);

    m.def("smith_yard_bound", &smith_yard_bound, py::arg("p_private"));
    m.def("horodecki_private_lb", &horodecki_private_lb, py::arg("q"));
    m.def("smith_yard_rate", &smith_yard_rate, py::arg("channel"), py::arg("ensemble"));
    m.def("make_grid", &make_grid, py::arg("lo"), py::arg("hi"), py::arg("step"));
    m.def(
        "sweep",
        [](const std::vector<double> &grid, const std::string &evaluator, std::optional<KrausChannel> a,
           std::optional<KrausChannel> b, double threshold, uint64_t seed, const OptimizerConfig &opt) {
            SweepConfig cfg;
            cfg.p_grid = grid;
            cfg.evaluator = parse_evaluator(evaluator);
            cfg.channel_a = std::move(a);
            cfg.channel_b = std::move(b);
            cfg.threshold = threshold;
            cfg.seed = seed;
            cfg.optimizer = opt;
            SweepReport r = sweep(cfg);
            py::dict out;
            py::list rows;
            for (const auto &row : r.rows) {
                rows.append(row_dict(row));
            }
            out["rows"] = rows;
            out["domain"] = r.domain;
            out["notes"] = r.notes;
            out["csv"] = sweep_csv(r, seed).str();
            return out;
        },
        py::arg("grid"), py::arg("evaluator") = "paper-constants", py::arg("channel_a") = py::none(),
        py::arg("channel_b") = py::none(), py::arg("threshold") = 0.0, py::arg("seed") = 0,
        py::arg("optimizer") = OptimizerConfig{});

    m.def(
        "run",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
