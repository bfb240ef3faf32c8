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

#include "qsum/repetitions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsum/error_analysis.hpp"
#include "qsum/numerics.hpp"

namespace qsum {

MedianDistribution median_distribution(const OutputDistribution& base, int n) {
  if (n < 0) throw std::domain_error("median_distribution: n must be >= 0");
  MedianDistribution out;
  out.n = n;
  out.alpha = base.alpha;
  out.base = base;
  if (n == 0) {
    out.rho = base.rho;
    return out;
  }

  const Eigen::Index size = base.size();
  // tail(i) = P(alpha >= alpha_i), accumulated from the top for precision.
  Eigen::ArrayXd tail(size + 1);
  tail(size) = 0.0;
  for (Eigen::Index i = size - 1; i >= 0; --i) tail(i) = tail(i + 1) + base.rho(i);

  out.rho.resize(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double lower = base.cdf(i);
    double mass = 0.0;
    if (lower < 0.5) {
      const double upper = i + 1 < size ? base.cdf(i + 1) : 1.0;
      mass = regularized_incomplete_beta(std::min(upper, 1.0), n) -
             regularized_incomplete_beta(lower, n);
    } else {
      // I_F(n+1, n+1) = 1 - I_{1-F}(n+1, n+1).
      mass = regularized_incomplete_beta(std::min(tail(i), 1.0), n) -
             regularized_incomplete_beta(std::min(tail(i + 1), 1.0), n);
    }
    out.rho(i) = std::max(mass, 0.0);
  }
  return out;
}

double repetition_error(const MeanInstance& inst, double q, int n) {
  if (!(q >= 1.0)) throw std::domain_error("repetition_error: q must be >= 1");
  const auto d = outcome_distribution(inst);
  if (d.angles.sigma_is_integer) return 0.0;
  const auto med = median_distribution(collapse_outputs(d), n);
  const double moment = (med.rho * (med.alpha - inst.a()).abs().pow(q)).sum();
  return std::pow(moment, 1.0 / q);
}

int repetitions_for_q(double q) { return static_cast<int>(std::ceil(q)) + 1; }

double RepetitionTable::median_repeated_scaled() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.repeated_scaled);
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double RepetitionTable::max_repeated_scaled_upper_half() const {
  double best = 0.0;
  const std::size_t start = rows.size() / 2;
  for (std::size_t i = start; i < rows.size(); ++i) best = std::max(best, rows[i].repeated_scaled);
  return best;
}

std::vector<double> RepetitionTable::plain_growth_ratios() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double m0 = static_cast<double>(rows[i - 1].M);
    const double m1 = static_cast<double>(rows[i].M);
    const double expected =
        q == 1.0 ? std::log(m1) / std::log(m0) : std::pow(m1 / m0, 1.0 - 1.0 / q);
    out.push_back(rows[i].plain_scaled / rows[i - 1].plain_scaled / expected);
  }
  return out;
}

RepetitionTable check_repetition_theorem(double q, const std::vector<std::int64_t>& M_list,
                                         const GridSpec& grid) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw std::domain_error("check_repetition_theorem: requires finite q >= 1");
  }
  RepetitionTable table;
  table.q = q;
  table.n = repetitions_for_q(q);
  const auto repeated = asymptotic_table(q, M_list, grid, table.n);
  const auto plain = asymptotic_table(q, M_list, grid, 0);
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    const double m = static_cast<double>(M_list[i]);
    table.rows.push_back({M_list[i], repeated[i].worst_error, repeated[i].worst_error * m,
                          plain[i].worst_error, plain[i].worst_error * m});
  }
  return table;
}

}  // namespace qsum
