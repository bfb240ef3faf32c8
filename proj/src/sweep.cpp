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
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qsum/error_analysis.hpp"
#include "qsum/numerics.hpp"
#include "qsum/repetitions.hpp"

namespace qsum {

std::vector<std::int64_t> GridSpec::k_values(std::int64_t M) const {
  if (N <= M) {
    throw std::invalid_argument("grid N = " + std::to_string(N) + " must exceed M = " +
                                std::to_string(M));
  }
  std::vector<std::int64_t> ks;
  if (dense) {
    ks.resize(static_cast<std::size_t>(N + 1));
    for (std::int64_t k = 0; k <= N; ++k) ks[static_cast<std::size_t>(k)] = k;
  } else if (points == 1) {
    ks.push_back(N / 2);
  } else if (points > 1) {
    ks.reserve(static_cast<std::size_t>(points));
    const long double step = static_cast<long double>(N) / static_cast<long double>(points - 1);
    for (std::int64_t i = 0; i < points; ++i) {
      ks.push_back(static_cast<std::int64_t>(std::llround(step * static_cast<long double>(i))));
    }
  }
  if (inject_sharpness && M >= 3) {
    for (const auto& inst : sharpness_instances(M, N)) ks.push_back(inst.k());
  }
  for (const auto k : extra_k) {
    if (k < 0 || k > N) throw std::invalid_argument("grid extra k outside [0, N]");
    ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) throw std::invalid_argument("empty sweep grid");
  return ks;
}

std::string GridSpec::describe() const {
  std::ostringstream out;
  out << "N=" << N;
  if (dense) {
    out << " dense";
  } else {
    out << " points=" << points;
  }
  if (inject_sharpness) out << " +sharpness";
  if (!extra_k.empty()) out << " +extra=" << extra_k.size();
  return out.str();
}

std::vector<MeanInstance> sharpness_instances(std::int64_t M, std::int64_t N) {
  if (M < 3) throw std::invalid_argument("sharpness_instances: requires M >= 3");
  std::vector<MeanInstance> out;
  const double angle = std::numbers::pi / 4.0 + std::numbers::pi / (5.0 * static_cast<double>(M));
  const double target = std::pow(std::sin(angle), 2);
  const auto k = std::clamp<std::int64_t>(std::llround(target * static_cast<double>(N)), 0, N);
  out.emplace_back(k, N, M);
  if (M % 4 == 2 && N % 2 == 0) out.emplace_back(N / 2, N, M);
  return out;
}

double sweep_objective(const MeanInstance& inst, double q, int n_reps) {
  if (std::isinf(q)) return local_sup_error(inst);
  if (n_reps > 0) return repetition_error(inst, q, n_reps);
  return local_avg_error(inst, q);
}

SweepResult worst_avg_error(std::int64_t M, double q, const GridSpec& grid, int n_reps) {
  if (M < 3) throw std::invalid_argument("worst_avg_error: requires M >= 3");
  if (!(q >= 1.0)) throw std::domain_error("worst_avg_error: q must be >= 1");
  if (n_reps < 0) throw std::invalid_argument("worst_avg_error: n_reps must be >= 0");

  GridSpec effective = grid;
  if (std::isinf(q)) {
    effective.extra_k.push_back(1);
    effective.extra_k.push_back(grid.N);
  }
  const auto ks = effective.k_values(M);
  const auto errors = internal::parallel_map<double>(ks.size(), [&](std::size_t i) {
    return sweep_objective(MeanInstance(ks[i], grid.N, M), q, n_reps);
  });

  SweepResult out;
  out.M = M;
  out.q = q;
  out.n_reps = n_reps;
  out.argmax_N = grid.N;
  out.grid_spec = effective.describe();
  out.worst_error = -1.0;
  // k values are ascending, so a strict comparison keeps the smallest k on ties.
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (errors[i] > out.worst_error) {
      out.worst_error = errors[i];
      out.argmax_k = ks[i];
    }
  }
  return out;
}

double normalized_constant(double worst_error, std::int64_t M, double q, int n_reps) {
  const double m = static_cast<double>(M);
  if (std::isinf(q)) return worst_error;
  if (n_reps > 0) return worst_error * m;
  if (q == 1.0) return worst_error * m / std::log(m);
  return worst_error * std::pow(m, 1.0 / q);
}

std::vector<AsymptoticRow> asymptotic_table(double q, const std::vector<std::int64_t>& M_list,
                                            const GridSpec& grid, int n_reps) {
  if (!std::is_sorted(M_list.begin(), M_list.end())) {
    throw std::invalid_argument("asymptotic_table: M list must be increasing");
  }
  std::vector<AsymptoticRow> rows;
  rows.reserve(M_list.size());
  for (const auto M : M_list) {
    const auto res = worst_avg_error(M, q, grid, n_reps);
    rows.push_back({M, res.worst_error, normalized_constant(res.worst_error, M, q, n_reps),
                    res.argmax_k, res.argmax_N});
  }
  return rows;
}

RateConstants worst_avg_rate_constants(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw std::domain_error("worst_avg_rate_constants: requires 1 < q < inf");
  }
  constexpr double pi = std::numbers::pi;
  IntegrationOptions opts;
  if (q < 2.0) opts.at_lo = EndpointSingularity{q - 2.0, {}};
  const auto integrand = [q](double x) {
    return std::pow(std::sin(x), q - 2.0) * std::pow(std::abs(std::cos(x)), q);
  };
  // The integrand is symmetric about pi/2, where |cos| has its kink.
  const auto half = integrate_adaptive(integrand, 0.0, pi / 2.0, 1e-12, opts);
  if (!half.converged) {
    throw std::runtime_error("worst_avg_rate_constants: quadrature did not converge");
  }
  return {std::pow(2.0 * half.value / pi, 1.0 / q),
          std::pow(sin_power_integral(q - 2.0) / pi, 1.0 / q)};
}

double q1_rate_constant() { return 2.0 / std::numbers::pi; }

}  // namespace qsum
