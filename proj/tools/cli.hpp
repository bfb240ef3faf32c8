// Copyright 2026 The qsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSUM_TOOLS_CLI_HPP_
#define QSUM_TOOLS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsum/error_analysis.hpp"
#include "qsum/model.hpp"

namespace qsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Tables go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flag values accept integer or decimal literals ("8", "8.0", "1e5") as long
/// as they are integral. Throws std::invalid_argument otherwise.
std::int64_t parse_integer(const std::string& text);
/// A real >= 1, or "inf".
double parse_q(const std::string& text);

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::int64_t trials = 500;
  std::optional<double> q;
  std::int64_t runs = 100'000;
  std::int64_t grid_N = std::int64_t{1} << 20;
  std::int64_t grid_points = 10'000;
};

/// Random instances: N = 2^u with u in [13, 20], M in [3, min(4096, N-1)],
/// k in [0, N]. With non_integer_sigma, integer-sigma draws are redrawn.
std::vector<MeanInstance> random_instances(std::int64_t count, std::uint64_t seed,
                                           bool non_integer_sigma);

/// Names accepted by `verify --theorem`.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws std::invalid_argument for an unknown name.
std::vector<BoundReport> run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace qsum::cli

#endif  // QSUM_TOOLS_CLI_HPP_
