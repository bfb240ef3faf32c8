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

#include "qsum/model.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qsum {

MeanInstance::MeanInstance(std::int64_t k, std::int64_t n, std::int64_t m)
    : k_(k), n_(n), m_(m) {
  if (n < 1) throw std::invalid_argument("MeanInstance: N must be >= 1");
  if (k < 0 || k > n) throw std::invalid_argument("MeanInstance: need 0 <= k <= N");
  if (m < 1) throw std::invalid_argument("MeanInstance: M must be >= 1");
}

namespace {

// theta / pi as an exact fraction (num, den) when a is one of the rational
// means with a rational angle.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_angle(const MeanInstance& inst) {
  // Compare 4k against multiples of N to stay in integers.
  const std::int64_t four_k = 4 * inst.k();
  const std::int64_t n = inst.N();
  if (four_k == 0) return std::pair<std::int64_t, std::int64_t>{0, 1};
  if (four_k == n) return std::pair<std::int64_t, std::int64_t>{1, 6};
  if (four_k == 2 * n) return std::pair<std::int64_t, std::int64_t>{1, 4};
  if (four_k == 3 * n) return std::pair<std::int64_t, std::int64_t>{1, 3};
  if (four_k == 4 * n) return std::pair<std::int64_t, std::int64_t>{1, 2};
  return std::nullopt;
}

}  // namespace

AngleSet derive_angles(const MeanInstance& inst, double integer_tol) {
  AngleSet out;
  const auto m = inst.M();

  if (const auto frac = rational_angle(inst)) {
    const auto [num, den] = *frac;
    out.theta = std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    const std::int64_t scaled = m * num;  // sigma = scaled / den
    out.sigma_floor = scaled / den;
    const std::int64_t rem = scaled % den;
    if (rem == 0) {
      out.sigma = static_cast<double>(out.sigma_floor);
      out.sigma_is_integer = true;
      return out;
    }
    out.s_lo = static_cast<double>(rem) / static_cast<double>(den);
    out.s_hi = static_cast<double>(den - rem) / static_cast<double>(den);
    out.sigma = static_cast<double>(out.sigma_floor) + out.s_lo;
    out.s = std::min(out.s_lo, out.s_hi);
    return out;
  }

  out.theta = std::asin(std::sqrt(inst.a()));
  out.sigma = static_cast<double>(m) * out.theta / std::numbers::pi;
  const double fl = std::floor(out.sigma);
  out.sigma_floor = static_cast<std::int64_t>(fl);
  out.s_lo = out.sigma - fl;
  out.s_hi = 1.0 - out.s_lo;
  out.s = std::min(out.s_lo, out.s_hi);
  if (out.s <= integer_tol) {
    const double nearest = std::round(out.sigma);
    out.sigma = nearest;
    out.sigma_floor = static_cast<std::int64_t>(nearest);
    out.s = out.s_lo = out.s_hi = 0.0;
    out.sigma_is_integer = true;
  }
  return out;
}

}  // namespace qsum
