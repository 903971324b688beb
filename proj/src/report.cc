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

#include "supaq/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "supaq/errors.h"

namespace supaq {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::abs(x) < 1e-12) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string CsvReport::str() const {
    std::string out;
    for (const auto &m : metadata) {
        out += "# " + m + "\n";
    }
    for (size_t i = 0; i < header.size(); ++i) {
        out += (i ? "," : "") + header[i];
    }
    out += "\n";
    for (const auto &row : rows) {
        if (row.size() != header.size()) {
            throw ParameterError("CSV row length differs from the header");
        }
        for (size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + format_number(row[i]);
        }
        out += "\n";
    }
    return out;
}

CsvReport sweep_csv(const SweepReport &report, uint64_t seed) {
    CsvReport csv;
    csv.metadata.push_back(std::string("supaq ") + kVersion);
    csv.metadata.push_back("seed " + std::to_string(seed));
    csv.metadata.push_back("evaluator " + evaluator_name(report.evaluator));
    csv.metadata.push_back("threshold " + format_number(report.threshold));
    if (report.domain.empty()) {
        csv.metadata.push_back("domain none");
    }
    for (const auto &[lo, hi] : report.domain) {
        csv.metadata.push_back("domain [" + format_number(lo) + ", " + format_number(hi) + "]");
    }
    for (const auto &n : report.notes) {
        csv.metadata.push_back("note " + n);
    }
    csv.header = {"p", "r_HH", "r_HA", "r_AA", "r_super", "w_HH", "w_HA", "w_AA", "ok"};
    for (const auto &r : report.rows) {
        csv.rows.push_back({r.p, r.r_hh, r.r_ha, r.r_aa, r.r_super, r.w_hh, r.w_ha, r.w_aa, r.ok ? 1.0 : 0.0});
    }
    return csv;
}

CsvReport capacity_csv(const CapacityResult &result, const std::string &quantity, const std::string &channel,
                       uint64_t seed) {
    CsvReport csv;
    csv.metadata.push_back(std::string("supaq ") + kVersion);
    csv.metadata.push_back("seed " + std::to_string(seed));
    csv.metadata.push_back("quantity " + quantity);
    csv.metadata.push_back("channel " + channel);
    csv.metadata.push_back("all capacities are lower bounds");
    const auto &probs = result.ensemble.probs();
    for (size_t i = 0; i < probs.size(); ++i) {
        csv.metadata.push_back("achiever " + std::to_string(i) + " p=" + format_number(probs[i]));
    }
    csv.header = {"value", "converged", "iterations"};
    csv.rows.push_back({result.value, result.converged ? 1.0 : 0.0, static_cast<double>(result.iterations)});
    return csv;
}

void write_report(const CsvReport &report, const std::string &path) {
    std::string text = report.str();
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw Error("cannot open '" + path + "' for writing");
    }
    f << text;
    f.flush();
    if (!f) {
        throw Error("write to '" + path + "' failed");
    }
}

}  // namespace supaq
