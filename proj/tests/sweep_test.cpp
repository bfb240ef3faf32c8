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


#include "qsum/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qsum/error_analysis.hpp"
#include "qsum/numerics.hpp"

namespace qsum {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kN = std::int64_t{1} << 20;

GridSpec coarse_grid(std::int64_t points) {
  GridSpec g;
  g.N = kN;
  g.points = points;
  g.inject_sharpness = false;
  return g;
}

bool contains_k(const std::vector<MeanInstance>& insts, std::int64_t k) {
  return std::any_of(insts.begin(), insts.end(), [k](const auto& i) { return i.k() == k; });
}

TEST(GridSpec, EvenlySpacedValues) {
  GridSpec g = coarse_grid(5);
  g.N = 8;
  EXPECT_EQ(g.k_values(3), (std::vector<std::int64_t>{0, 2, 4, 6, 8}));
  g.points = 0;
  g.extra_k = {3};
  EXPECT_EQ(g.k_values(3), (std::vector<std::int64_t>{3}));
  g.dense = true;
  EXPECT_EQ(g.k_values(3).size(), 9u);
}

TEST(GridSpec, RejectsBadGrids) {
  GridSpec g = coarse_grid(0);
  EXPECT_THROW(g.k_values(3), std::invalid_argument);
  g.points = 10;
  g.N = 4;
  EXPECT_THROW(g.k_values(4), std::invalid_argument);
  g.N = 16;
  g.extra_k = {17};
  EXPECT_THROW(g.k_values(4), std::invalid_argument);
}

TEST(SharpnessInstances, HalfMeanWhenMTwoModFour) {
  const auto six = sharpness_instances(6);
  EXPECT_TRUE(contains_k(six, kN / 2));
  const auto seven = sharpness_instances(7);
  EXPECT_FALSE(contains_k(seven, kN / 2));
  EXPECT_EQ(seven.size(), 1u);
}

TEST(SharpnessInstances, GenericInstanceNearTarget) {
  for (std::int64_t M : {7, 10, 1366}) {
    const double target = std::pow(std::sin(kPi / 4 + kPi / (5.0 * M)), 2);
    const auto insts = sharpness_instances(M);
    EXPECT_LE(std::abs(insts.front().a() - target), 0.5 / kN) << M;
    for (const auto& i : insts) EXPECT_EQ(i.M(), M);
  }
  EXPECT_THROW(sharpness_instances(2), std::invalid_argument);
}

TEST(SharpnessInstances, HalfMeanAttainsUnitFactor) {
  for (std::int64_t M : {6, 10, 22, 1366}) {
    const auto ang = derive_angles(MeanInstance(kN / 2, kN, M));
    EXPECT_EQ(ang.s, 0.5);
    EXPECT_EQ(ang.theta, kPi / 4);
    EXPECT_NEAR(std::pow(std::sin(kPi * ang.s), 2) * std::sin(2 * ang.theta), 1.0, 1e-15);
  }
}

TEST(WorstAvgError, SmallMAtHalfMean) {
  const GridSpec grid;
  const auto r = worst_avg_error(6, 1.0, grid);
  EXPECT_EQ(r.argmax_k, kN / 2);
  EXPECT_EQ(r.argmax_N, kN);
  EXPECT_GE(r.worst_error, 2 / kPi * std::log(6.0) / 6 - q1_slack_constant() / 6);
  EXPECT_NEAR(r.worst_error, local_avg_error(MeanInstance(kN / 2, kN, 6), 1.0), 1e-15);
}

TEST(WorstAvgError, SingleExactInstance) {
  GridSpec grid = coarse_grid(0);
  grid.N = 8;
  grid.extra_k = {4};
  EXPECT_EQ(worst_avg_error(4, 1.0, grid).worst_error, 0.0);
}

TEST(WorstAvgError, QuadraticRateWithinConstants) {
  const auto c = worst_avg_rate_constants(2.0);
  const auto r = worst_avg_error(102, 2.0, GridSpec{});
  const double scaled = r.worst_error * std::sqrt(102.0);
  EXPECT_GE(scaled, c.lower * (1 - 1e-12));
  EXPECT_LE(scaled, c.upper * (1 + 1e-12));
}

TEST(WorstAvgError, RefinementNeverLowersTheMaximum) {
  for (double q : {1.0, 2.0, 3.0}) {
    double prev = 0.0;
    for (std::int64_t points : {9, 17, 33, 65, 129, 257}) {
      const double e = worst_avg_error(37, q, coarse_grid(points)).worst_error;
      EXPECT_GE(e, prev) << "q=" << q << " points=" << points;
      prev = e;
    }
  }
}

TEST(WorstAvgError, InjectionNeverLowersTheMaximum) {
  for (std::int64_t M : {6, 7, 10, 22, 101}) {
    for (double q : {1.0, 1.5, 2.0}) {
      GridSpec plain = coarse_grid(50);
      GridSpec injected = plain;
      injected.inject_sharpness = true;
      EXPECT_GE(worst_avg_error(M, q, injected).worst_error,
                worst_avg_error(M, q, plain).worst_error);
    }
  }
}

TEST(WorstAvgError, TiesGoToSmallestK) {
  // a and 1 - a give equal errors by symmetry; the sweep reports the smaller k.
  GridSpec grid = coarse_grid(0);
  grid.N = 1024;
  grid.extra_k = {300, 724};
  const auto r = worst_avg_error(9, 2.0, grid);
  EXPECT_EQ(r.argmax_k, 300);
}

TEST(WorstAvgError, SupErrorDegenerateMeans) {
  const GridSpec grid = coarse_grid(100);
  for (std::int64_t M : {4, 6, 100}) {
    EXPECT_EQ(worst_avg_error(M, kInfiniteQ, grid).worst_error, 1.0 - 1.0 / kN) << M;
  }
  for (std::int64_t M : {3, 5, 101}) {
    EXPECT_EQ(worst_avg_error(M, kInfiniteQ, grid).worst_error, 1.0) << M;
  }
}

TEST(WorstAvgError, RejectsBadArguments) {
  EXPECT_THROW(worst_avg_error(2, 1.0, GridSpec{}), std::invalid_argument);
  EXPECT_THROW(worst_avg_error(6, 0.5, GridSpec{}), std::domain_error);
  EXPECT_THROW(worst_avg_error(6, 1.0, GridSpec{}, -1), std::invalid_argument);
}

TEST(NormalizedConstant, Rates) {
  EXPECT_DOUBLE_EQ(normalized_constant(0.5, 100, 1.0, 0), 0.5 * 100 / std::log(100.0));
  EXPECT_DOUBLE_EQ(normalized_constant(0.5, 100, 2.0, 0), 5.0);
  EXPECT_DOUBLE_EQ(normalized_constant(0.5, 100, 2.0, 3), 50.0);
  EXPECT_DOUBLE_EQ(normalized_constant(0.5, 100, kInfiniteQ, 0), 0.5);
}

TEST(AsymptoticTable, LinearRateApproachesConstant) {
  const std::vector<std::int64_t> Ms{6, 22, 86, 342, 1366};
  const auto rows = asymptotic_table(1.0, Ms, GridSpec{});
  ASSERT_EQ(rows.size(), Ms.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].M, Ms[i]);
    const double band = q1_slack_constant() / std::log(static_cast<double>(Ms[i]));
    EXPECT_LE(std::abs(rows[i].normalized - q1_rate_constant()), band);
    if (i > 0) EXPECT_LT(rows[i].normalized, rows[i - 1].normalized);
  }
  EXPECT_LE(std::abs(rows.back().normalized / q1_rate_constant() - 1.0), 0.15);
}

TEST(RateConstants, ClosedForms) {
  // q = 2: lower^2 = (1/pi) int cos^2 = 1/2, upper^2 = 1.
  const auto two = worst_avg_rate_constants(2.0);
  EXPECT_NEAR(two.lower, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(two.upper, 1.0, 1e-12);
  // q = 4: (1/pi) int sin^2 cos^4 = 1/16 and (1/pi) int sin^2 = 1/2.
  const auto four = worst_avg_rate_constants(4.0);
  EXPECT_NEAR(four.lower, std::pow(1.0 / 16.0, 0.25), 1e-12);
  EXPECT_NEAR(four.upper, std::pow(0.5, 0.25), 1e-12);
  EXPECT_NEAR(q1_rate_constant(), 2 / kPi, 1e-16);
  EXPECT_THROW(worst_avg_rate_constants(1.0), std::domain_error);
}

TEST(RateConstants, SingularCaseMatchesSymmetricQuadrature) {
  // For q < 2 the lower integrand is singular at 0 and pi. In closed form
  // int_0^pi sin^(q-2) |cos|^q = B((q-1)/2, (q+1)/2).
  for (double q : {1.2, 1.5, 1.9}) {
    const double beta = std::exp(std::lgamma((q - 1) / 2) + std::lgamma((q + 1) / 2) -
                                 std::lgamma(q));
    const auto c = worst_avg_rate_constants(q);
    EXPECT_NEAR(c.lower, std::pow(beta / kPi, 1.0 / q), 1e-9) << q;
    EXPECT_NEAR(c.upper, std::pow(sin_power_integral(q - 2) / kPi, 1.0 / q), 1e-15) << q;
    EXPECT_LT(c.lower, c.upper);
  }
}

}  // namespace
}  // namespace qsum
