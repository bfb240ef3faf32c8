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

#ifndef QSUM_MODEL_HPP_
#define QSUM_MODEL_HPP_

#include <cstdint>

namespace qsum {

/// A Boolean mean a = k/N approximated with M outcomes (M - 1 queries).
///
/// The mean is carried as the exact pair (k, N); a() is derived on demand so
/// sweeps over k are reproducible bit for bit.
class MeanInstance {
 public:
  /// Throws std::invalid_argument unless 0 <= k <= N, N >= 1 and M >= 1.
  MeanInstance(std::int64_t k, std::int64_t n, std::int64_t m);

  std::int64_t k() const { return k_; }
  std::int64_t N() const { return n_; }
  std::int64_t M() const { return m_; }
  double a() const { return static_cast<double>(k_) / static_cast<double>(n_); }

  friend bool operator==(const MeanInstance&, const MeanInstance&) = default;

 private:
  std::int64_t k_;
  std::int64_t n_;
  std::int64_t m_;
};

inline constexpr double kDefaultIntegerTolerance = 1e-9;

/// Angle quantities of a mean instance.
///
///   theta = arcsin(sqrt(a)),   sigma = M theta / pi,
///   s_lo  = sigma - floor(sigma),   s_hi = ceil(sigma) - sigma,
///   s     = min(s_lo, s_hi) in [0, 1/2].
///
/// When sigma is (snapped to) an integer, sigma is exact and s = s_lo = s_hi = 0.
struct AngleSet {
  double theta = 0.0;
  double sigma = 0.0;
  std::int64_t sigma_floor = 0;
  double s = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  bool sigma_is_integer = false;
};

/// Means a in {0, 1/4, 1/2, 3/4, 1} have theta / pi rational and are resolved
/// symbolically; all others go through arcsin and are snapped to an integer
/// sigma when min(s_lo, s_hi) <= integer_tol.
AngleSet derive_angles(const MeanInstance& inst,
                       double integer_tol = kDefaultIntegerTolerance);

}  // namespace qsum

#endif  // QSUM_MODEL_HPP_
