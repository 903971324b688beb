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

#ifndef SUPAQ_CLI_H
#define SUPAQ_CLI_H

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "supaq/channels.h"
#include "supaq/qstate.h"

namespace supaq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Bad command-line input; maps to kExitUsage.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Resolves builtin:identity:d, builtin:depolarizing:p, builtin:erasure:eps or file:<path>.
/// Malformed URIs raise UsageError; file problems raise the channel parse errors.
KrausChannel channel_from_uri(const std::string &uri);

/// States from JSON: {"states": [[[re, im], ...], ...]} with d² row-major entries per state,
/// or {"bloch": [[x, y, z], ...]}.
std::vector<DensityMatrix> parse_states(std::string_view text);

/// Command-line entry point; `args` excludes the program name. Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace supaq

#endif
