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

#ifndef QSUM_REPETITIONS_HPP_
#define QSUM_REPETITIONS_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qsum/distribution.hpp"
#include "qsum/model.hpp"
#include "qsum/sweep.hpp"

namespace qsum {

/// Distribution of the median of 2n+1 independent outputs.
struct MedianDistribution {
  int n = 0;
  Eigen::ArrayXd alpha;
  Eigen::ArrayXd rho;  // rho_n, aligned with alpha
  OutputDistribution base;
};

/// rho_n(alpha_i) = I_{F_i + rho_i}(n+1, n+1) - I_{F_i}(n+1, n+1).
///
/// The upper limit of atom i is taken as the lower limit of atom i+1 (and 1
/// for the last atom) so the masses telescope; atoms in the upper half of
/// the CDF are evaluated through tail probabilities. n = 0 returns the base.
MedianDistribution median_distribution(const OutputDistribution& base, int n);

/// (sum_alpha rho_n(alpha) |a - alpha|^q)^(1/q); 0 for integer sigma.
double repetition_error(const MeanInstance& inst, double q, int n);

/// ceil(q) + 1.
int repetitions_for_q(double q);

struct RepetitionRow {
  std::int64_t M = 0;
  double worst_repeated = 0.0;
  double repeated_scaled = 0.0;  // worst_repeated * M
  double worst_plain = 0.0;
  double plain_scaled = 0.0;  // worst_plain * M
};

struct RepetitionTable {
  double q = 1.0;
  int n = 0;
  std::vector<RepetitionRow> rows;

  /// Median of repeated_scaled over all rows.
  double median_repeated_scaled() const;
  /// Max of repeated_scaled over the rows with the largest ceil(size/2) M.
  double max_repeated_scaled_upper_half() const;
  /// For consecutive rows, the growth of plain_scaled divided by the growth
  /// expected from its rate: sqrt-type M^(1-1/q) for q > 1, ln M for q = 1.
  std::vector<double> plain_growth_ratios() const;
};

/// With n = repetitions_for_q(q), tabulates the worst repetition error and
/// the worst plain error over the grid for each M, both scaled by M.
RepetitionTable check_repetition_theorem(double q, const std::vector<std::int64_t>& M_list,
                                         const GridSpec& grid);

}  // namespace qsum

#endif  // QSUM_REPETITIONS_HPP_
