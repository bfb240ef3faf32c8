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

#include "qsum/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace qsum {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

// pi (whole + frac) / M with whole shifted by a multiple of M so the argument
// lies in [-pi/2, pi/2]. |sin| and |cot| are pi-periodic, and doing the shift in
// integers keeps full relative precision for arguments near multiples of pi.
double reduced_angle(std::int64_t whole, double frac, std::int64_t M) {
  whole %= M;
  if (static_cast<double>(whole) + frac > 0.5 * static_cast<double>(M)) whole -= M;
  if (static_cast<double>(whole) + frac < -0.5 * static_cast<double>(M)) whole += M;
  return kPi * (static_cast<double>(whole) + frac) / static_cast<double>(M);
}

namespace {

void check_index(std::int64_t j, std::int64_t M) {
  if (j < 0 || j >= M) {
    throw std::out_of_range("outcome index " + std::to_string(j) + " outside [0, " +
                            std::to_string(M) + ")");
  }
}

// pi (j - sigma) / M and pi (j + sigma) / M, reduced.
std::pair<double, double> shifted_arguments(const AngleSet& ang, std::int64_t j,
                                            std::int64_t M) {
  return {reduced_angle(j - ang.sigma_floor, -ang.s_lo, M),
          reduced_angle(j + ang.sigma_floor, ang.s_lo, M)};
}

}  // namespace

double OutputDistribution::cdf_at(double x) const {
  const auto* begin = alpha.data();
  const auto* end = begin + alpha.size();
  const auto idx = std::lower_bound(begin, end, x) - begin;
  if (idx >= alpha.size()) return 1.0;
  return cdf(idx);
}

double output_value(std::int64_t j, std::int64_t M) {
  check_index(j, M);
  const std::int64_t r = std::min(j, M - j);  // symmetric representative
  if ((6 * r) % M == 0) {
    switch ((6 * r) / M) {
      case 0: return 0.0;
      case 1: return 0.25;
      case 2: return 0.75;
      case 3: return 1.0;
    }
  }
  if ((4 * r) % M == 0) {
    switch ((4 * r) / M) {
      case 1: return 0.5;
      case 2: return 1.0;
    }
  }
  const double v = std::sin(kPi * static_cast<double>(r) / static_cast<double>(M));
  return v * v;
}

double exact_error(const MeanInstance& inst, const AngleSet& angles, std::int64_t j) {
  check_index(j, inst.M());
  const auto [minus, plus] = shifted_arguments(angles, j, inst.M());
  return std::abs(std::sin(minus) * std::sin(plus));
}

double exact_error(const MeanInstance& inst, std::int64_t j) {
  return exact_error(inst, derive_angles(inst), j);
}

Eigen::ArrayXd output_errors(const MeanInstance& inst) {
  const auto M = inst.M();
  const double a = inst.a();
  Eigen::ArrayXd err(M);
  for (std::int64_t j = 0; j < M; ++j) err(j) = std::abs(a - output_value(j, M));
  return err;
}

OutcomeDistribution outcome_distribution(const MeanInstance& inst, double integer_tol) {
  const auto M = inst.M();
  const AngleSet ang = derive_angles(inst, integer_tol);
  Eigen::ArrayXd p = Eigen::ArrayXd::Zero(M);

  if (ang.sigma_is_integer) {
    const std::int64_t m = ((ang.sigma_floor % M) + M) % M;
    const std::int64_t mirror = (M - m) % M;
    p(m) += 0.5;
    p(mirror) += 0.5;
    return {inst, ang, std::move(p), 0.0};
  }

  const double sin_s = std::sin(kPi * ang.s);
  const double prefactor = sin_s * sin_s / (2.0 * static_cast<double>(M) * static_cast<double>(M));
  for (std::int64_t j = 0; j < M; ++j) {
    const auto [minus, plus] = shifted_arguments(ang, j, M);
    const double sm = std::sin(minus);
    const double sp = std::sin(plus);
    const double value = prefactor * (1.0 / (sm * sm) + 1.0 / (sp * sp));
    if (!std::isfinite(value) || value < -1e-12) {
      std::ostringstream msg;
      msg << "outcome_distribution: p(" << j << ") = " << value << " for k=" << inst.k()
          << " N=" << inst.N() << " M=" << M << " (sigma=" << ang.sigma << ", s=" << ang.s
          << "); sigma is numerically integral but integer_tol=" << integer_tol
          << " did not flag it";
      throw ConsistencyError(msg.str());
    }
    p(j) = value;
  }

  const double total = p.sum();
  const double drift = std::abs(total - 1.0);
  if (!(drift < kNormalizationTolerance)) {
    std::ostringstream msg;
    msg << "outcome_distribution: normalization drift " << drift << " for k=" << inst.k()
        << " N=" << inst.N() << " M=" << M;
    throw ConsistencyError(msg.str());
  }
  p /= total;
  return {inst, ang, std::move(p), drift};
}

OutputDistribution collapse_outputs(const OutcomeDistribution& d) {
  const auto M = d.M();
  std::vector<double> alpha;
  std::vector<double> rho;
  alpha.reserve(M / 2 + 1);
  rho.reserve(M / 2 + 1);
  for (std::int64_t j = 0; 2 * j <= M; ++j) {
    const double a = output_value(j % M, M);
    const bool paired = j != 0 && 2 * j != M;
    const double r = d.p(j % M) + (paired ? d.p(M - j) : 0.0);
    if (r == 0.0) continue;  // outputs outside the support are not atoms
    if (!alpha.empty() && a <= alpha.back()) {
      rho.back() += r;  // ties only arise from rounding of sin^2
    } else {
      alpha.push_back(a);
      rho.push_back(r);
    }
  }

  OutputDistribution out;
  out.M = M;
  const auto n = static_cast<Eigen::Index>(alpha.size());
  out.alpha = Eigen::Map<const Eigen::ArrayXd>(alpha.data(), n);
  out.rho = Eigen::Map<const Eigen::ArrayXd>(rho.data(), n);
  out.cdf.resize(n);
  double running = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.cdf(i) = running;
    running += out.rho(i);
  }
  return out;
}

double event_probability(const OutcomeDistribution& d, std::span<const std::int64_t> indices) {
  std::vector<std::int64_t> unique(indices.begin(), indices.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  double total = 0.0;
  for (const auto j : unique) {
    check_index(j, d.M());
    total += d.p(j);
  }
  return std::min(total, 1.0);
}

}  // namespace qsum
