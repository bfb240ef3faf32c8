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

#ifndef QSUM_NUMERICS_HPP_
#define QSUM_NUMERICS_HPP_

#include <cstdint>
#include <functional>
#include <optional>

namespace qsum {

/// Largest n accepted by regularized_incomplete_beta. Binomial coefficients
/// C(2n+1, k) stay far below the double overflow threshold up to here.
inline constexpr int kMaxMedianOrder = 64;

/// I_x(n+1, n+1): the CDF at x of the median of 2n+1 independent uniforms.
///
/// Evaluated as the binomial tail sum_{k=n+1}^{2n+1} C(2n+1,k) x^k (1-x)^(2n+1-k),
/// which is the integrated polynomial (2n+1) C(2n,n) int_0^x t^n (1-t)^n dt
/// written in a basis with nonnegative terms. Terms are accumulated smallest
/// first and x > 1/2 is reflected through I_x = 1 - I_{1-x}.
///
/// Throws std::domain_error if x is outside [0, 1] or n is outside
/// [0, kMaxMedianOrder].
double regularized_incomplete_beta(double x, int n);

/// int_0^pi sin(x)^p dx = sqrt(pi) Gamma((p+1)/2) / Gamma(p/2 + 1).
/// Throws std::domain_error for p <= -1, where the integral diverges.
double sin_power_integral(double p);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::int64_t evaluations = 0;
  bool converged = false;
};

/// Declares an integrable power-law endpoint singularity f(x) ~ |x - end|^power
/// with power > -1. power = -0.5, say, for f(x) = 1/sqrt(x) at x = 0.
///
/// Near an endpoint that is not the exact singular point (pi, say, is not a
/// double) f(x) cannot see distances below the spacing of doubles there. Set
/// `near` to the integrand as a function of the distance t = |x - end| to
/// evaluate that half without forming x.
struct EndpointSingularity {
  double power = -0.5;
  std::function<double(double)> near;
};

struct IntegrationOptions {
  std::optional<EndpointSingularity> at_lo;
  std::optional<EndpointSingularity> at_hi;
  std::int64_t max_evaluations = 1'000'000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
///
/// Singular endpoints are handled by splitting [lo, hi] at its midpoint and
/// substituting x = end +/- h u^m on the affected half, with m chosen so the
/// transformed integrand vanishes at u = 0. The substitution point itself is
/// never evaluated; distances too small to offset `end` by are extrapolated
/// with the declared power from the nearest double.
///
/// On budget exhaustion the best estimate is returned with converged = false.
/// Throws std::invalid_argument if lo >= hi, abs_tol <= 0, or a declared
/// singular power is <= -1.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    const IntegrationOptions& options = {});

/// Left-endpoint rectangle sum (b-a)/k * sum_{j<k} f(a + j(b-a)/k).
double rectangle_rule(const std::function<double(double)>& f, double a,
                      double b, int k);

}  // namespace qsum

#endif  // QSUM_NUMERICS_HPP_
