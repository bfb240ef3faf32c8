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
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "qsum/error_analysis.hpp"

namespace qsum {
namespace {

// Median law by enumerating every (2n+1)-tuple of atoms.
std::map<double, double> enumerate_medians(const Eigen::ArrayXd& alpha, const Eigen::ArrayXd& rho,
                                           int n) {
  const int width = 2 * n + 1;
  const auto atoms = static_cast<std::size_t>(alpha.size());
  std::map<double, double> law;
  std::vector<std::size_t> idx(static_cast<std::size_t>(width), 0);
  std::vector<double> values(static_cast<std::size_t>(width));
  for (;;) {
    double prob = 1.0;
    for (int r = 0; r < width; ++r) {
      const auto i = static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]);
      prob *= rho(i);
      values[static_cast<std::size_t>(r)] = alpha(i);
    }
    std::nth_element(values.begin(), values.begin() + n, values.end());
    law[values[static_cast<std::size_t>(n)]] += prob;
    std::size_t r = 0;
    while (r < idx.size() && ++idx[r] == atoms) idx[r++] = 0;
    if (r == idx.size()) break;
  }
  return law;
}

OutputDistribution make_base(std::vector<double> alpha, std::vector<double> rho) {
  OutputDistribution d;
  const auto size = static_cast<Eigen::Index>(alpha.size());
  d.alpha = Eigen::Map<Eigen::ArrayXd>(alpha.data(), size);
  d.rho = Eigen::Map<Eigen::ArrayXd>(rho.data(), size);
  d.cdf.resize(size);
  double running = 0.0;
  for (Eigen::Index i = 0; i < size; ++i) {
    d.cdf(i) = running;
    running += d.rho(i);
  }
  return d;
}

void expect_matches_enumeration(const OutputDistribution& base, int n) {
  const auto med = median_distribution(base, n);
  const auto law = enumerate_medians(base.alpha, base.rho, n);
  for (Eigen::Index i = 0; i < med.alpha.size(); ++i) {
    const auto it = law.find(med.alpha(i));
    const double expected = it == law.end() ? 0.0 : it->second;
    EXPECT_NEAR(med.rho(i), expected, 1e-12) << "atom " << i << " n=" << n;
  }
}

TEST(MedianDistribution, ZeroRepetitionsIsBase) {
  const auto base = collapse_outputs(outcome_distribution(MeanInstance(3, 64, 11)));
  const auto med = median_distribution(base, 0);
  EXPECT_TRUE((med.rho == base.rho).all());
  EXPECT_TRUE((med.alpha == base.alpha).all());
}

TEST(MedianDistribution, SingleAtom) {
  const auto med = median_distribution(make_base({0.5}, {1.0}), 4);
  ASSERT_EQ(med.rho.size(), 1);
  EXPECT_EQ(med.rho(0), 1.0);
}

TEST(MedianDistribution, SymmetricPair) {
  const auto med = median_distribution(make_base({0.0, 1.0}, {0.5, 0.5}), 1);
  EXPECT_NEAR(med.rho(0), 0.5, 1e-15);
  EXPECT_NEAR(med.rho(1), 0.5, 1e-15);
}

TEST(MedianDistribution, MatchesEnumerationForSmallM) {
  for (std::int64_t M = 1; M <= 5; ++M) {
    for (std::int64_t k = 0; k <= 16; ++k) {
      const auto base = collapse_outputs(outcome_distribution(MeanInstance(k, 16, M)));
      for (int n = 0; n <= 2; ++n) expect_matches_enumeration(base, n);
    }
  }
}

TEST(MedianDistribution, MatchesEnumerationForRandomBases) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int atoms = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<double> alpha(static_cast<std::size_t>(atoms));
    std::vector<double> rho(static_cast<std::size_t>(atoms));
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
      alpha[static_cast<std::size_t>(i)] = (i + unit(rng)) / atoms;
      rho[static_cast<std::size_t>(i)] = unit(rng);
      total += rho[static_cast<std::size_t>(i)];
    }
    for (auto& r : rho) r /= total;
    const auto base = make_base(alpha, rho);
    for (int n = 0; n <= 2; ++n) expect_matches_enumeration(base, n);
  }
}

TEST(MedianDistribution, ConservesMass) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t N = std::int64_t{1} << std::uniform_int_distribution<int>(4, 20)(rng);
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, N)(rng);
    const std::int64_t M = std::uniform_int_distribution<std::int64_t>(1, 2048)(rng);
    const auto base = collapse_outputs(outcome_distribution(MeanInstance(k, N, M)));
    for (int n = 0; n <= 10; ++n) {
      const auto med = median_distribution(base, n);
      EXPECT_NEAR(med.rho.sum(), 1.0, 1e-10);
      EXPECT_GE(med.rho.minCoeff(), 0.0);
    }
  }
}

TEST(MedianDistribution, MajorityAtomConcentrates) {
  std::mt19937_64 rng(33);
  int checked = 0;
  while (checked < 50) {
    const std::int64_t N = std::int64_t{1} << 16;
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, N)(rng);
    const std::int64_t M = std::uniform_int_distribution<std::int64_t>(3, 500)(rng);
    const MeanInstance inst(k, N, M);
    const auto base = collapse_outputs(outcome_distribution(inst));
    Eigen::Index nearest;
    (base.alpha - inst.a()).abs().minCoeff(&nearest);
    if (base.rho(nearest) <= 0.5) continue;
    ++checked;
    double prev = 0.0;
    for (int n = 0; n <= 6; ++n) {
      const double mass = median_distribution(base, n).rho(nearest);
      EXPECT_GE(mass, prev - 1e-15) << "k=" << k << " M=" << M << " n=" << n;
      prev = mass;
    }
  }
}

TEST(MedianDistribution, RejectsNegativeN) {
  EXPECT_THROW(median_distribution(make_base({0.5}, {1.0}), -1), std::domain_error);
}

TEST(RepetitionError, ZeroRepetitionsIsLocalError) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t N = std::int64_t{1} << 18;
    const MeanInstance inst(std::uniform_int_distribution<std::int64_t>(0, N)(rng), N,
                            std::uniform_int_distribution<std::int64_t>(3, 1000)(rng));
    for (double q : {1.0, 2.0, 3.5}) {
      EXPECT_NEAR(repetition_error(inst, q, 0), local_avg_error(inst, q), 1e-14);
    }
  }
}

TEST(RepetitionError, IntegerSigmaIsExact) {
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(repetition_error(MeanInstance(4, 8, 4), 2.0, n), 0.0);
    EXPECT_EQ(repetition_error(MeanInstance(0, 8, 7), 1.0, n), 0.0);
  }
}

TEST(RepetitionError, UnitMeanThreeOutcomesByEnumeration) {
  // Outputs 0 (1/9) and 3/4 (8/9); the median of three is 0 iff at least two are 0.
  const double p0 = 1.0 / 9.0;
  const double median_zero = 3 * p0 * p0 * (1 - p0) + p0 * p0 * p0;
  const double expected = median_zero * 1.0 + (1 - median_zero) * 0.25;
  EXPECT_NEAR(repetition_error(MeanInstance(8, 8, 3), 1.0, 1), expected, 1e-15);
}

TEST(RepetitionError, BoundedBySupError) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t N = std::int64_t{1} << 20;
    const MeanInstance inst(std::uniform_int_distribution<std::int64_t>(0, N)(rng), N,
                            std::uniform_int_distribution<std::int64_t>(3, 2000)(rng));
    const double sup = local_sup_error(inst);
    for (int n : {1, 3, 8}) EXPECT_LE(repetition_error(inst, 2.0, n), sup * (1 + 1e-12));
  }
}

TEST(RepetitionsForQ, CeilPlusOne) {
  EXPECT_EQ(repetitions_for_q(1.0), 2);
  EXPECT_EQ(repetitions_for_q(1.5), 3);
  EXPECT_EQ(repetitions_for_q(2.0), 3);
  EXPECT_EQ(repetitions_for_q(3.0), 4);
}

TEST(RepetitionTheorem, RepeatedErrorScalesLikeOneOverM) {
  GridSpec grid;
  grid.points = 2000;
  const auto table = check_repetition_theorem(2.0, {6, 22, 86}, grid);
  EXPECT_EQ(table.n, 3);
  ASSERT_EQ(table.rows.size(), 3u);
  for (const auto& row : table.rows) {
    EXPECT_NEAR(row.repeated_scaled, row.worst_repeated * row.M, 1e-15);
    EXPECT_LT(row.worst_repeated, row.worst_plain);
  }
  EXPECT_LE(table.max_repeated_scaled_upper_half(), 2 * table.median_repeated_scaled());
  for (double r : table.plain_growth_ratios()) EXPECT_NEAR(r, 1.0, 0.3);
}

TEST(RepetitionTheorem, ExactGridGivesZeros) {
  GridSpec grid;
  grid.N = 16;
  grid.points = 0;
  grid.inject_sharpness = false;
  grid.extra_k = {0, 8, 16};
  const auto table = check_repetition_theorem(1.0, {4, 12}, grid);
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.worst_repeated, 0.0);
    EXPECT_EQ(row.worst_plain, 0.0);
  }
}

}  // namespace
}  // namespace qsum
