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

#include "supaq/channels.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "supaq/errors.h"

namespace supaq {

double completeness_residual(size_t dim_in, const std::vector<CMatrix> &kraus) {
    auto d = static_cast<Eigen::Index>(dim_in);
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto &k : kraus) {
        sum += k.adjoint() * k;
    }
    return (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

KrausChannel::KrausChannel(size_t dim_in, size_t dim_out, std::vector<CMatrix> kraus, std::string name)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), name_(std::move(name)) {
    if (dim_in_ == 0 || dim_out_ == 0) {
        throw DimensionError("channel dimensions must be positive");
    }
    if (kraus_.empty()) {
        throw InvalidChannelError("channel needs at least one Kraus operator", 1.0);
    }
    for (const auto &k : kraus_) {
        if (static_cast<size_t>(k.rows()) != dim_out_ || static_cast<size_t>(k.cols()) != dim_in_) {
            throw DimensionError("Kraus operator shape does not match dim_out x dim_in");
        }
    }
    double residual = completeness_residual(dim_in_, kraus_);
    if (!(residual <= kCompletenessTolerance)) {
        std::ostringstream msg;
        msg << "Kraus operators are not trace preserving: completeness residual " << std::setprecision(6)
            << residual;
        throw InvalidChannelError(msg.str(), residual);
    }
}

DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho) {
    if (rho.dim() != ch.dim_in()) {
        throw DimensionError("state dimension " + std::to_string(rho.dim()) + " does not match channel input " +
                             std::to_string(ch.dim_in()));
    }
    auto d = static_cast<Eigen::Index>(ch.dim_out());
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto &k : ch.kraus()) {
        out.noalias() += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::normalized(out, 1e-8);
}

KrausChannel complementary(const KrausChannel &ch) {
    // E_b = Σ_k |k⟩⟨b| N_k: row k of E_b is row b of N_k, so
    // Σ_b E_b ρ E_b† has entries Tr(N_j ρ N_k†).
    auto env = static_cast<Eigen::Index>(ch.environment_dim());
    auto din = static_cast<Eigen::Index>(ch.dim_in());
    std::vector<CMatrix> ops;
    ops.reserve(ch.dim_out());
    for (size_t b = 0; b < ch.dim_out(); ++b) {
        CMatrix e(env, din);
        for (Eigen::Index k = 0; k < env; ++k) {
            e.row(k) = ch.kraus()[k].row(static_cast<Eigen::Index>(b));
        }
        ops.push_back(std::move(e));
    }
    std::string name = ch.name().empty() ? "" : ch.name() + "^c";
    return KrausChannel(ch.dim_in(), ch.environment_dim(), std::move(ops), name);
}

KrausChannel tensor(const KrausChannel &a, const KrausChannel &b) {
    std::vector<CMatrix> ops;
    ops.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &x : a.kraus()) {
        for (const auto &y : b.kraus()) {
            ops.push_back(kron(x, y));
        }
    }
    std::string name;
    if (!a.name().empty() || !b.name().empty()) {
        name = a.name() + "(x)" + b.name();
    }
    return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(ops), name);
}

KrausChannel tensor_power(const KrausChannel &ch, int n) {
    if (n < 1) {
        throw ParameterError("tensor power needs n >= 1");
    }
    KrausChannel out = ch;
    for (int i = 1; i < n; ++i) {
        out = tensor(out, ch);
    }
    return out;
}

KrausChannel flagged_convex(double p, const KrausChannel &a, const KrausChannel &b) {
    if (!(p >= 0 && p <= 1)) {
        throw ParameterError("mixing probability must lie in [0, 1]");
    }
    if (a.dim_in() != b.dim_in()) {
        throw DimensionError("flagged combination needs equal input dimensions");
    }
    auto da = static_cast<Eigen::Index>(a.dim_out());
    auto db = static_cast<Eigen::Index>(b.dim_out());
    auto din = static_cast<Eigen::Index>(a.dim_in());
    std::vector<CMatrix> ops;
    if (p > 0) {
        for (const auto &k : a.kraus()) {
            CMatrix m = CMatrix::Zero(da + db, din);
            m.topRows(da) = std::sqrt(p) * k;
            ops.push_back(std::move(m));
        }
    }
    if (p < 1) {
        for (const auto &k : b.kraus()) {
            CMatrix m = CMatrix::Zero(da + db, din);
            m.bottomRows(db) = std::sqrt(1 - p) * k;
            ops.push_back(std::move(m));
        }
    }
    return KrausChannel(a.dim_in(), a.dim_out() + b.dim_out(), std::move(ops), "flagged");
}

KrausChannel identity_channel(size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return KrausChannel(dim, dim, {CMatrix::Identity(d, d)}, "identity");
}

KrausChannel depolarizing(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw ParameterError("depolarizing probability must lie in [0, 1]");
    }
    CMatrix i = CMatrix::Identity(2, 2);
    CMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    double a = std::sqrt(1 - 0.75 * p);
    double b = std::sqrt(0.25 * p);
    return KrausChannel(2, 2, {a * i, b * x, b * y, b * z}, "depolarizing");
}

KrausChannel erasure(double eps, size_t dim) {
    if (!(eps >= 0 && eps <= 1)) {
        throw ParameterError("erasure probability must lie in [0, 1]");
    }
    auto d = static_cast<Eigen::Index>(dim);
    std::vector<CMatrix> ops;
    CMatrix keep = CMatrix::Zero(d + 1, d);
    keep.topRows(d) = std::sqrt(1 - eps) * CMatrix::Identity(d, d);
    ops.push_back(std::move(keep));
    for (Eigen::Index i = 0; i < d; ++i) {
        CMatrix lose = CMatrix::Zero(d + 1, d);
        lose(d, i) = std::sqrt(eps);
        ops.push_back(std::move(lose));
    }
    return KrausChannel(dim, dim + 1, std::move(ops), "erasure");
}

BlochVector AffineQubitMap::apply(const BlochVector &v) const {
    Eigen::Vector3d out = linear * Eigen::Vector3d(v.x, v.y, v.z) + shift;
    return {out[0], out[1], out[2]};
}

double AffineQubitMap::max_image_radius(size_t samples, Rng &rng) const {
    double worst = 0;
    for (size_t s = 0; s < samples; ++s) {
        Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
        v.normalize();
        worst = std::max(worst, (linear * v + shift).norm());
    }
    return worst;
}

AffineQubitMap affine_map(const KrausChannel &ch) {
    if (ch.dim_in() != 2 || ch.dim_out() != 2) {
        throw DimensionError("affine Bloch map needs a qubit-to-qubit channel");
    }
    AffineQubitMap m;
    BlochVector origin = density_to_bloch(apply(ch, DensityMatrix::maximally_mixed(2)));
    m.shift = Eigen::Vector3d(origin.x, origin.y, origin.z);
    const BlochVector axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int j = 0; j < 3; ++j) {
        BlochVector img = density_to_bloch(apply(ch, bloch_to_density(axes[j])));
        m.linear.col(j) = Eigen::Vector3d(img.x, img.y, img.z) - m.shift;
    }
    return m;
}

namespace {

CMatrix parse_matrix(const nlohmann::json &j, size_t rows, size_t cols, size_t which) {
    std::vector<const nlohmann::json *> entries;
    if (!j.is_array()) {
        throw ParseError("kraus[" + std::to_string(which) + "] must be an array");
    }
    for (const auto &e : j) {
        // Nested-by-rows form: an array whose elements are themselves [re, im] pairs.
        if (e.is_array() && !e.empty() && e[0].is_array()) {
            for (const auto &inner : e) {
                entries.push_back(&inner);
            }
        } else {
            entries.push_back(&e);
        }
    }
    if (entries.size() != rows * cols) {
        throw ParseError("kraus[" + std::to_string(which) + "] has " + std::to_string(entries.size()) +
                         " entries, expected " + std::to_string(rows * cols));
    }
    CMatrix m(rows, cols);
    for (size_t idx = 0; idx < entries.size(); ++idx) {
        const auto &pair = *entries[idx];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ParseError("kraus[" + std::to_string(which) + "] entry " + std::to_string(idx) +
                             " is not a [re, im] pair");
        }
        m(idx / cols, idx % cols) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    return m;
}

size_t parse_dim(const nlohmann::json &root, const char *key) {
    if (!root.contains(key) || !root[key].is_number_integer() || root[key].get<long long>() <= 0) {
        throw ParseError(std::string("field '") + key + "' must be a positive integer");
    }
    return root[key].get<size_t>();
}

}  // namespace

KrausChannel parse_channel(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("channel file: ") + e.what());
    }
    if (!root.is_object()) {
        throw ParseError("channel file must hold an object");
    }
    std::string name;
    if (root.contains("name")) {
        if (!root["name"].is_string()) {
            throw ParseError("field 'name' must be text");
        }
        name = root["name"].get<std::string>();
    }
    size_t din = parse_dim(root, "dim_in");
    size_t dout = parse_dim(root, "dim_out");
    if (!root.contains("kraus") || !root["kraus"].is_array() || root["kraus"].empty()) {
        throw ParseError("field 'kraus' must be a nonempty list of matrices");
    }
    std::vector<CMatrix> ops;
    for (size_t i = 0; i < root["kraus"].size(); ++i) {
        ops.push_back(parse_matrix(root["kraus"][i], dout, din, i));
    }
    return KrausChannel(din, dout, std::move(ops), name);
}

KrausChannel load_channel(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open channel file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_channel(buf.str());
}

std::string serialize_channel(const KrausChannel &ch) {
    nlohmann::json root;
    root["name"] = ch.name();
    root["dim_in"] = ch.dim_in();
    root["dim_out"] = ch.dim_out();
    nlohmann::json ops = nlohmann::json::array();
    for (const auto &k : ch.kraus()) {
        nlohmann::json m = nlohmann::json::array();
        for (Eigen::Index r = 0; r < k.rows(); ++r) {
            for (Eigen::Index c = 0; c < k.cols(); ++c) {
                m.push_back({k(r, c).real(), k(r, c).imag()});
            }
        }
        ops.push_back(std::move(m));
    }
    root["kraus"] = std::move(ops);
    return root.dump(1);
}

}  // namespace supaq
