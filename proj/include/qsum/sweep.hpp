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

#ifndef QSUM_SWEEP_HPP_
#define QSUM_SWEEP_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qsum/model.hpp"

namespace qsum {

inline constexpr double kInfiniteQ = std::numeric_limits<double>::infinity();

/// The set of means a = k/N a worst-case sweep maximizes over.
struct GridSpec {
  std::int64_t N = std::int64_t{1} << 20;
  /// Evenly spaced k values in [0, N]; ignored when dense.
  std::int64_t points = 10'000;
  bool dense = false;
  bool inject_sharpness = true;
  std::vector<std::int64_t> extra_k;

  /// Sorted, de-duplicated k values for the given M. Throws
  /// std::invalid_argument if N <= M or the grid is empty.
  std::vector<std::int64_t> k_values(std::int64_t M) const;
  std::string describe() const;
};

struct SweepResult {
  std::int64_t M = 0;
  double q = 1.0;
  int n_reps = 0;
  double worst_error = 0.0;
  std::int64_t argmax_k = 0;
  std::int64_t argmax_N = 0;
  std::string grid_spec;
};

/// Means at which the worst-average bounds are attained: k/N nearest to
/// sin^2(pi/4 + pi/(5M)), and a = 1/2 when M = 2 mod 4.
std::vector<MeanInstance> sharpness_instances(std::int64_t M,
                                              std::int64_t N = std::int64_t{1} << 20);

/// The local error a sweep maximizes: local_avg_error for finite q and
/// n_reps = 0, repetition_error for n_reps > 0, local_sup_error for q = inf.
double sweep_objective(const MeanInstance& inst, double q, int n_reps);

/// Maximizes sweep_objective over the grid; ties go to the smallest k.
/// The q = inf path also injects the degenerate means k = 1 and k = N.
SweepResult worst_avg_error(std::int64_t M, double q, const GridSpec& grid, int n_reps = 0);

struct AsymptoticRow {
  std::int64_t M = 0;
  double worst_error = 0.0;
  double normalized = 0.0;
  std::int64_t argmax_k = 0;
  std::int64_t argmax_N = 0;
};

/// Rate normalization: e M / ln M for q = 1, e M^(1/q) for finite q > 1,
/// e M with repetitions, and e itself for q = inf.
double normalized_constant(double worst_error, std::int64_t M, double q, int n_reps);

/// worst_avg_error across an increasing list of M with the normalized constant.
std::vector<AsymptoticRow> asymptotic_table(double q, const std::vector<std::int64_t>& M_list,
                                            const GridSpec& grid, int n_reps = 0);

/// Asymptotic constants bracketing e^wor-avg_q(M) M^(1/q) for 1 < q < inf:
///   upper = ((1/pi) int_0^pi sin^(q-2)(x) dx)^(1/q)
///   lower = ((1/pi) int_0^pi sin^(q-2)(x) |cos x|^q dx)^(1/q)   (M = 2 mod 4)
struct RateConstants {
  double lower = 0.0;
  double upper = 0.0;
};
RateConstants worst_avg_rate_constants(double q);

/// 2/pi, the q = 1 constant of e M / ln M for M = 2 mod 4.
double q1_rate_constant();

}  // namespace qsum

#endif  // QSUM_SWEEP_HPP_
