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

#ifndef SUPAQ_REPORT_H
#define SUPAQ_REPORT_H

#include <string>
#include <vector>

#include "supaq/capacity.h"
#include "supaq/superactivation.h"

namespace supaq {

inline constexpr const char *kVersion = "0.1.0";

/// 12 significant digits; magnitudes below 1e-12 print as 0 so rounding noise cannot flip bytes.
std::string format_number(double x);

/// Comma-separated table with `#` metadata lines ahead of the header.
struct CsvReport {
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Throws ParameterError if a row length differs from the header.
    std::string str() const;
};

CsvReport sweep_csv(const SweepReport &report, uint64_t seed);
CsvReport capacity_csv(const CapacityResult &result, const std::string &quantity, const std::string &channel,
                       uint64_t seed);

/// Writes the report to `path`; throws Error on I/O failure.
void write_report(const CsvReport &report, const std::string &path);

}  // namespace supaq

#endif
