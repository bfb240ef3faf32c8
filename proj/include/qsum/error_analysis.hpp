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

#ifndef QSUM_ERROR_ANALYSIS_HPP_
#define QSUM_ERROR_ANALYSIS_HPP_

#include <cstdint>
#include <optional>

#include "qsum/distribution.hpp"
#include "qsum/model.hpp"

namespace qsum {

/// Additive guard for floating noise in BoundReport::satisfied.
inline constexpr double kBoundGuard = 1e-9;

/// Probabilities at or below this are treated as outside the support.
inline constexpr double kSupportTolerance = 1e-14;

/// One evaluated bound: |observed - main_term| <= slack.
///
/// Some bounds have a second reading of their main term (alt_main_term); the
/// report is satisfied only if both readings are within the slack.
struct BoundReport {
  double observed = 0.0;
  double main_term = 0.0;
  double slack = 0.0;
  std::optional<double> alt_main_term;
  bool satisfied = false;
  std::int64_t k = 0;
  std::int64_t N = 0;
  std::int64_t M = 0;
  double q = 1.0;

  /// The larger of the deviations over all readings.
  double deviation() const;
};

/// Fills satisfied from observed, main_term, alt_main_term and slack.
BoundReport finalize(BoundReport report);

/// (sum_j p(j) |a - alpha(j)|^q)^(1/q); exactly 0 for integer sigma.
/// Throws std::domain_error for q < 1 (or NaN).
double local_avg_error(const MeanInstance& inst, double q);

/// max |a - alpha(j)| over j with p(j) > support_tol.
double local_sup_error(const MeanInstance& inst, double support_tol = kSupportTolerance);

/// (1/M) sum_{j<M} |cot(pi (j + s) / M)|. Throws std::domain_error for integer sigma.
double cot_sum(const MeanInstance& inst);

/// |e_1 - sin^2(pi s) sin(2 theta) cot_sum / M| <= sin^2(pi s) |cos 2 theta| / M.
BoundReport check_lemma_err_avg(const MeanInstance& inst);

/// Rectangle-rule bound on cot_sum against (1/pi) int |cot| over
/// [pi (1+s)/M, pi (M-1+s)/M], all terms in closed form. Requires M >= 3 and
/// non-integer sigma.
BoundReport check_lemma_cot_rect(const MeanInstance& inst);

/// Local q = 1 error against (2/pi) sin^2(pi s) sin(2 theta) ln M / M with
/// slack (3 pi + 2 + ln pi^2) sin(pi s) / (M pi). Requires M >= 3.
BoundReport check_theorem_q1(const MeanInstance& inst);

/// Local e_q^q, q > 1, against (sin^2(pi s) / (M pi)) int H over
/// [pi s_hi / M, pi - pi s_lo / M] (alt: limits with s_lo and s_hi swapped),
/// H(x) = sin^(q-2)(x) |sin(x + 2 theta)|^q.
BoundReport check_theorem_qgt1(const MeanInstance& inst, double q);

/// M^(-1/q) [ (sin^2(pi s) / pi) int_0^pi H ]^(1/q), the leading term of e_q.
double corollary_main_term(const MeanInstance& inst, double q);

/// (3 pi + 2 + ln(pi^2)) / pi.
double q1_slack_constant();

}  // namespace qsum

#endif  // QSUM_ERROR_ANALYSIS_HPP_
