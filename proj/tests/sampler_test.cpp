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


#include "qsum/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qsum/error_analysis.hpp"
#include "qsum/repetitions.hpp"

namespace qsum {
namespace {

TEST(Engine, ReferenceOutputs) {
  Engine e;  // default seed 5489
  EXPECT_EQ(e(), 14514284786278117030ULL);
  EXPECT_EQ(e(), 4620546740167642908ULL);
  EXPECT_EQ(e(), 13109570281517897720ULL);
  Engine f;
  f.discard(9999);
  EXPECT_EQ(f(), 9981545732273789042ULL);
}

TEST(Uniform01, TopBitsInUnitInterval) {
  Engine e(42);
  const double u = uniform01(e);
  EXPECT_EQ(u, static_cast<double>(13930160852258120406ULL >> 11) * 0x1.0p-53);
  for (int i = 0; i < 10000; ++i) {
    const double v = uniform01(e);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(SampleOutcomes, PointMassIsConstant) {
  const auto draws = sample_outcomes(outcome_distribution(MeanInstance(0, 8, 7)), 1000, 1);
  EXPECT_TRUE(std::all_of(draws.begin(), draws.end(), [](auto j) { return j == 0; }));
}

TEST(SampleOutcomes, FrequencyOfZeroOutcome) {
  const auto d = outcome_distribution(MeanInstance(8, 8, 3));
  const std::int64_t count = 1'000'000;
  const auto draws = sample_outcomes(d, count, 2);
  const double freq =
      static_cast<double>(std::count(draws.begin(), draws.end(), 0)) / static_cast<double>(count);
  const double p = 1.0 / 9.0;
  EXPECT_LE(std::abs(freq - p), 4.0 * std::sqrt(p * (1 - p) / count));
}

TEST(SampleOutcomes, DeterministicGivenSeed) {
  const auto d = outcome_distribution(MeanInstance(3, 64, 11));
  EXPECT_EQ(sample_outcomes(d, 500, 9), sample_outcomes(d, 500, 9));
  EXPECT_NE(sample_outcomes(d, 500, 9), sample_outcomes(d, 500, 10));
  EXPECT_THROW(sample_outcomes(d, 0, 9), std::invalid_argument);
}

TEST(EmpiricalRepetitionError, IntegerSigmaIsZero) {
  const auto run = empirical_repetition_error(MeanInstance(4, 8, 4), 2.0, 1, 10'000, 3);
  EXPECT_EQ(run.empirical_error_q, 0.0);
  EXPECT_EQ(run.standard_error, 0.0);
  EXPECT_EQ(run.draws, 10'000);
}

TEST(EmpiricalRepetitionError, PlainRunsMatchExactError) {
  for (const auto& inst : {MeanInstance(8, 8, 3), MeanInstance(3, 64, 11), MeanInstance(5, 32, 10)}) {
    for (double q : {1.0, 2.0}) {
      const auto run = empirical_repetition_error(inst, q, 0, 100'000, 4);
      const double exact = std::pow(local_avg_error(inst, q), q);
      EXPECT_LE(std::abs(run.mean_power - exact), 4.0 * run.standard_error)
          << "k=" << inst.k() << " M=" << inst.M() << " q=" << q;
    }
  }
}

TEST(EmpiricalRepetitionError, MedianOfThreeMatchesExactError) {
  const MeanInstance inst(8, 8, 3);
  const auto run = empirical_repetition_error(inst, 1.0, 1, 100'000, 5);
  const double exact = repetition_error(inst, 1.0, 1);
  EXPECT_LE(std::abs(run.mean_power - exact), 4.0 * run.standard_error);
  EXPECT_NEAR(run.empirical_error_q, run.mean_power, 1e-15);
}

TEST(EmpiricalRepetitionError, SampleStandardErrorTracksExact) {
  const MeanInstance inst(8, 8, 3);
  const auto run = empirical_repetition_error(inst, 2.0, 1, 100'000, 6);
  const double exact_se = exact_standard_error(inst, 2.0, 1, 100'000);
  EXPECT_NEAR(run.standard_error / exact_se, 1.0, 0.05);
}

TEST(EmpiricalRepetitionError, BitwiseDeterministic) {
  const MeanInstance inst(1234, 4096, 37);
  // Spans several batches, including a partial last one.
  const auto a = empirical_repetition_error(inst, 1.5, 2, 3 * kRunsPerBatch + 17, 8);
  const auto b = empirical_repetition_error(inst, 1.5, 2, 3 * kRunsPerBatch + 17, 8);
  EXPECT_EQ(a.mean_power, b.mean_power);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_EQ(a.draws, 3 * kRunsPerBatch + 17);
  EXPECT_EQ(a.seed, 8u);
}

TEST(EmpiricalRepetitionError, RejectsBadArguments) {
  const MeanInstance inst(8, 8, 3);
  EXPECT_THROW(empirical_repetition_error(inst, 1.0, 0, 0, 1), std::invalid_argument);
  EXPECT_THROW(empirical_repetition_error(inst, 1.0, -1, 10, 1), std::invalid_argument);
  EXPECT_THROW(empirical_repetition_error(inst, 0.5, 0, 10, 1), std::domain_error);
}

}  // namespace
}  // namespace qsum
