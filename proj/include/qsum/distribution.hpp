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

#ifndef QSUM_DISTRIBUTION_HPP_
#define QSUM_DISTRIBUTION_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

#include "qsum/model.hpp"

namespace qsum {

/// Raised when a computed distribution violates its own invariants.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNormalizationTolerance = 1e-10;

/// Probabilities p(j), j = 0..M-1, of the summation algorithm's outcome index.
struct OutcomeDistribution {
  MeanInstance instance;
  AngleSet angles;
  Eigen::ArrayXd p;                // renormalized to sum to one
  double normalization_drift = 0;  // |sum p - 1| before renormalization

  std::int64_t M() const { return instance.M(); }
};

/// Distribution of the output alpha = sin^2(pi j / M) over the distinct
/// outputs, in increasing alpha.
struct OutputDistribution {
  std::int64_t M = 0;
  Eigen::ArrayXd alpha;  // strictly increasing
  Eigen::ArrayXd rho;
  Eigen::ArrayXd cdf;    // cdf(i) = sum of rho over atoms < i; cdf(0) = 0

  Eigen::Index size() const { return alpha.size(); }

  /// F(x) = P(alpha < x), with F(0) = 0.
  double cdf_at(double x) const;
};

/// Closed-form outcome distribution. For non-integer sigma,
///
///   p(j) = sin^2(pi s) / (2 M^2) [sin^-2(pi (j - sigma) / M) + sin^-2(pi (j + sigma) / M)],
///
/// with j -/+ sigma formed from the integer floor(sigma) and s_lo so the
/// near-singular terms keep full relative precision. For integer sigma = m the
/// limit puts 1/2 on j = m and 1/2 on j = M - m (mod M), merged when equal.
///
/// Throws ConsistencyError on a negative or non-finite p(j), or a
/// normalization drift >= kNormalizationTolerance.
OutcomeDistribution outcome_distribution(const MeanInstance& inst,
                                         double integer_tol = kDefaultIntegerTolerance);

/// sin^2(pi j / M); exact at multiples of M/6 and M/4. Throws std::out_of_range
/// unless 0 <= j < M.
double output_value(std::int64_t j, std::int64_t M);

/// |sin(pi (j - sigma) / M) sin(pi (j + sigma) / M)|, equal to |a - output_value(j, M)|.
double exact_error(const MeanInstance& inst, std::int64_t j);
double exact_error(const MeanInstance& inst, const AngleSet& angles, std::int64_t j);

/// All |a - output_value(j)| for j = 0..M-1, by direct difference.
Eigen::ArrayXd output_errors(const MeanInstance& inst);

/// pi (whole + frac) / M shifted by a multiple of pi into [-pi/2, pi/2],
/// with the shift done in integers.
double reduced_angle(std::int64_t whole, double frac, std::int64_t M);

/// Merges j and M - j into one atom. Outputs of probability exactly 0 are dropped.
OutputDistribution collapse_outputs(const OutcomeDistribution& d);

/// mu(A) = sum_{j in A} p(j). Throws std::out_of_range for an index outside [0, M).
double event_probability(const OutcomeDistribution& d, std::span<const std::int64_t> indices);

}  // namespace qsum

#endif  // QSUM_DISTRIBUTION_HPP_
