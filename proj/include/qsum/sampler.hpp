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

#ifndef QSUM_SAMPLER_HPP_
#define QSUM_SAMPLER_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "qsum/distribution.hpp"
#include "qsum/model.hpp"

namespace qsum {

// Monte Carlo oracle for the exact engines.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the C++
// standard; uniforms in [0, 1) are formed from the top 53 bits of each output.
// Runs are split into fixed-size batches and batch b is seeded with seed + b,
// so results do not depend on how batches are scheduled.

using Engine = std::mt19937_64;

inline constexpr std::int64_t kRunsPerBatch = 8192;

/// (engine() >> 11) * 2^-53.
double uniform01(Engine& engine);

/// Inverse-CDF sampling of outcome indices. Throws std::invalid_argument for count < 1.
std::vector<std::int64_t> sample_outcomes(const OutcomeDistribution& d, std::int64_t count,
                                          std::uint64_t seed);

struct SampleRun {
  std::uint64_t seed = 0;
  std::int64_t draws = 0;         // number of median experiments
  double mean_power = 0.0;        // mean of |a - median|^q
  double standard_error = 0.0;    // of mean_power
  double empirical_error_q = 0.0; // mean_power^(1/q)
};

/// Draws 2n+1 outputs per run, takes the (n+1)-st order statistic and
/// averages |a - median|^q over runs.
SampleRun empirical_repetition_error(const MeanInstance& inst, double q, int n,
                                     std::int64_t runs, std::uint64_t seed);

/// Standard error of mean_power over `runs` experiments computed from the exact
/// median distribution. Unlike the sample estimate it accounts for atoms that a
/// finite run may never hit.
double exact_standard_error(const MeanInstance& inst, double q, int n, std::int64_t runs);

}  // namespace qsum

#endif  // QSUM_SAMPLER_HPP_
