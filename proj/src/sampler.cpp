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

#include "parallel.hpp"
#include "qsum/repetitions.hpp"

namespace qsum {

namespace {

// Cumulative sums of p with the last entry pinned to 1.
std::vector<double> cumulative(const OutcomeDistribution& d) {
  std::vector<double> cum(static_cast<std::size_t>(d.M()));
  double running = 0.0;
  for (std::int64_t j = 0; j < d.M(); ++j) {
    running += d.p(j);
    cum[static_cast<std::size_t>(j)] = running;
  }
  cum.back() = 1.0;
  return cum;
}

std::int64_t draw(const std::vector<double>& cum, Engine& engine) {
  const double u = uniform01(engine);
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  return std::min<std::int64_t>(it - cum.begin(), static_cast<std::int64_t>(cum.size()) - 1);
}

struct BatchMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t count = 0;
};

}  // namespace

double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::vector<std::int64_t> sample_outcomes(const OutcomeDistribution& d, std::int64_t count,
                                          std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_outcomes: count must be >= 1");
  const auto cum = cumulative(d);
  Engine engine(seed);
  std::vector<std::int64_t> out(static_cast<std::size_t>(count));
  for (auto& j : out) j = draw(cum, engine);
  return out;
}

SampleRun empirical_repetition_error(const MeanInstance& inst, double q, int n,
                                     std::int64_t runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("empirical_repetition_error: runs must be >= 1");
  if (n < 0) throw std::invalid_argument("empirical_repetition_error: n must be >= 0");
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw std::domain_error("empirical_repetition_error: requires finite q >= 1");
  }
  const auto d = outcome_distribution(inst);
  const auto cum = cumulative(d);
  const double a = inst.a();
  const std::size_t width = static_cast<std::size_t>(2 * n + 1);

  const auto batches = static_cast<std::size_t>((runs + kRunsPerBatch - 1) / kRunsPerBatch);
  const auto moments = internal::parallel_map<BatchMoments>(batches, [&](std::size_t b) {
    Engine engine(seed + b);
    const std::int64_t begin = static_cast<std::int64_t>(b) * kRunsPerBatch;
    const std::int64_t end = std::min(runs, begin + kRunsPerBatch);
    std::vector<double> outputs(width);
    BatchMoments m;
    for (std::int64_t r = begin; r < end; ++r) {
      for (auto& v : outputs) v = output_value(draw(cum, engine), inst.M());
      std::nth_element(outputs.begin(), outputs.begin() + n, outputs.end());
      const double stat = std::pow(std::abs(a - outputs[static_cast<std::size_t>(n)]), q);
      m.sum += stat;
      m.sum_sq += stat * stat;
      ++m.count;
    }
    return m;
  });

  BatchMoments total;
  for (const auto& m : moments) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
    total.count += m.count;
  }
  const double count = static_cast<double>(total.count);
  const double mean = total.sum / count;
  const double var =
      total.count > 1 ? std::max(0.0, (total.sum_sq - count * mean * mean) / (count - 1.0)) : 0.0;

  SampleRun out;
  out.seed = seed;
  out.draws = total.count;
  out.mean_power = mean;
  out.standard_error = std::sqrt(var / count);
  out.empirical_error_q = std::pow(mean, 1.0 / q);
  return out;
}

double exact_standard_error(const MeanInstance& inst, double q, int n, std::int64_t runs) {
  if (runs < 1) throw std::invalid_argument("exact_standard_error: runs must be >= 1");
  const double m1 = std::pow(repetition_error(inst, q, n), q);
  const double m2 = std::pow(repetition_error(inst, 2.0 * q, n), 2.0 * q);
  return std::sqrt(std::max(0.0, m2 - m1 * m1) / static_cast<double>(runs));
}

}  // namespace qsum
