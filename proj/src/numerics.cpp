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

#include "qsum/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsum {

double regularized_incomplete_beta(double x, int n) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("regularized_incomplete_beta: x outside [0, 1]");
  }
  if (n < 0 || n > kMaxMedianOrder) {
    throw std::domain_error("regularized_incomplete_beta: n = " +
                            std::to_string(n) + " outside [0, " +
                            std::to_string(kMaxMedianOrder) + "]");
  }
  if (x > 0.5) return 1.0 - regularized_incomplete_beta(1.0 - x, n);
  if (x == 0.0) return 0.0;

  const int m = 2 * n + 1;
  const double y = 1.0 - x;
  // For x <= 1/2 the terms decrease in k, so walking k downward from m adds
  // the smallest contributions first.
  double binom = 1.0;  // C(m, k) for k = m
  double sum = 0.0;
  for (int k = m; k >= n + 1; --k) {
    sum += binom * std::pow(x, k) * std::pow(y, m - k);
    binom = binom * k / (m - k + 1);  // C(m, k-1)
  }
  return std::min(sum, 1.0);
}

double sin_power_integral(double p) {
  if (!(p > -1.0)) {
    throw std::domain_error("sin_power_integral: p <= -1 diverges");
  }
  if (p == 0.0) return std::numbers::pi;
  const double log_ratio = std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p + 1.0);
  return std::sqrt(std::numbers::pi) * std::exp(log_ratio);
}

namespace {

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (nonnegative half) and weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

constexpr int kEvaluationsPerPanel = 15;

// Adaptive integration of g over [lo, hi] with a shared evaluation budget.
QuadratureResult integrate_regular(const std::function<double(double)>& g,
                                   double lo, double hi, double abs_tol,
                                   std::int64_t budget) {
  std::vector<Panel> heap{kronrod_panel(g, lo, hi)};
  std::int64_t evaluations = kEvaluationsPerPanel;
  double error = heap.front().error;
  // Panels too narrow to bisect in floating point are retired here.
  std::vector<Panel> frozen;

  while (error > abs_tol && !heap.empty() &&
         evaluations + 2 * kEvaluationsPerPanel <= budget) {
    std::pop_heap(heap.begin(), heap.end());
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = kronrod_panel(g, worst.lo, mid);
    const Panel right = kronrod_panel(g, mid, worst.hi);
    evaluations += 2 * kEvaluationsPerPanel;
    error += left.error + right.error - worst.error;
    for (const Panel& p : {left, right}) {
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end());
    }
    if (error <= abs_tol) {
      // The running total may have drifted; confirm against a fresh sum.
      error = 0.0;
      for (const Panel& p : heap) error += p.error;
      for (const Panel& p : frozen) error += p.error;
    }
  }

  double value = 0.0;
  error = 0.0;
  for (const auto* set : {&heap, &frozen}) {
    for (const Panel& p : *set) {
      value += p.value;
      error += p.error;
    }
  }
  const bool finite = std::isfinite(value) && std::isfinite(error);
  return {value, error, evaluations, finite && error <= abs_tol};
}

// Integrand on u in [0, 1] after x = end + direction * d, d = width * u^m.
// f(x) is rescaled by (d / |x - end|)^power, which undoes the rounding of x for
// a power law; when x rounds onto end the nearest double inside is used.
std::function<double(double)> power_substitution(
    const std::function<double(double)>& f, double end, double direction,
    double width, const EndpointSingularity& sing) {
  const double power = sing.power;
  const double m = std::max(1.0, std::ceil(2.0 / (power + 1.0)));
  const double inward = direction > 0 ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
  const double nearest = std::nextafter(end, inward);
  const auto* near = sing.near ? &sing.near : nullptr;
  return [&f, near, end, direction, width, m, power, nearest](double u) {
    const double um1 = std::pow(u, m - 1.0);
    const double d = width * um1 * u;
    if (!(d > 0.0)) return 0.0;
    const double jacobian = m * width * um1;
    double v;
    if (near) {
      v = (*near)(d) * jacobian;
    } else {
      double x = end + direction * d;
      if (x == end) x = nearest;
      const double actual = std::abs(x - end);
      v = f(x) * std::pow(d / actual, power) * jacobian;
    }
    return std::isfinite(v) ? v : 0.0;
  };
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    const IntegrationOptions& options) {
  if (!(lo < hi)) throw std::invalid_argument("integrate_adaptive: need lo < hi");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: abs_tol must be > 0");
  for (const auto& s : {options.at_lo, options.at_hi}) {
    if (s && !(s->power > -1.0)) {
      throw std::invalid_argument("integrate_adaptive: singular power must be > -1");
    }
  }

  if (!options.at_lo && !options.at_hi) {
    return integrate_regular(f, lo, hi, abs_tol, options.max_evaluations);
  }

  // Each half gets its own substitution (or none); tolerance and budget are
  // split evenly.
  const double mid = 0.5 * (lo + hi);
  const double width = mid - lo;
  const std::int64_t half_budget = options.max_evaluations / 2;
  const double half_tol = 0.5 * abs_tol;

  const QuadratureResult left =
      options.at_lo
          ? integrate_regular(power_substitution(f, lo, +1.0, width, *options.at_lo),
                              0.0, 1.0, half_tol, half_budget)
          : integrate_regular(f, lo, mid, half_tol, half_budget);
  const QuadratureResult right =
      options.at_hi
          ? integrate_regular(power_substitution(f, hi, -1.0, hi - mid, *options.at_hi),
                              0.0, 1.0, half_tol, half_budget)
          : integrate_regular(f, mid, hi, half_tol, half_budget);

  return {left.value + right.value, left.error_estimate + right.error_estimate,
          left.evaluations + right.evaluations, left.converged && right.converged};
}

double rectangle_rule(const std::function<double(double)>& f, double a,
                      double b, int k) {
  if (!(a < b) || k < 1) {
    throw std::invalid_argument("rectangle_rule: need a < b and k >= 1");
  }
  const double h = (b - a) / k;
  double sum = 0.0;
  for (int j = 0; j < k; ++j) sum += f(a + j * h);
  return h * sum;
}

}  // namespace qsum
