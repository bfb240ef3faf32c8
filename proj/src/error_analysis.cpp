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

#include "qsum/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsum/numerics.hpp"

namespace qsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureTolerance = 1e-11;

void require_q_at_least_one(double q) {
  if (!(q >= 1.0)) throw std::domain_error("q must be >= 1");
}

void require_non_integer_sigma(const AngleSet& ang, const char* what) {
  if (ang.sigma_is_integer) {
    throw std::domain_error(std::string(what) + ": requires non-integer sigma");
  }
}

void require_m_at_least_three(const MeanInstance& inst, const char* what) {
  if (inst.M() < 3) throw std::domain_error(std::string(what) + ": requires M >= 3");
}

double cot(double x) { return std::cos(x) / std::sin(x); }

BoundReport make_report(const MeanInstance& inst, double q) {
  BoundReport r;
  r.k = inst.k();
  r.N = inst.N();
  r.M = inst.M();
  r.q = q;
  return r;
}

// int_lo^hi sin^(q-2)(x) |sin(x + 2 theta)|^q dx, split at the kink of the
// second factor. For q < 2 the outer ends carry the x^(q-2) behavior of the
// first factor near 0 and pi.
double integrate_shifted_sine(double theta, double q, double lo, double hi) {
  const auto h = [theta, q](double x) {
    return std::pow(std::sin(x), q - 2.0) * std::pow(std::abs(std::sin(x + 2.0 * theta)), q);
  };
  std::vector<double> cuts{lo};
  const double kink = kPi - 2.0 * theta;
  if (kink > lo && kink < hi) cuts.push_back(kink);
  cuts.push_back(hi);

  const bool singular = q < 2.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    IntegrationOptions opts;
    if (singular && i == 0) opts.at_lo = EndpointSingularity{q - 2.0, {}};
    if (singular && i + 2 == cuts.size()) opts.at_hi = EndpointSingularity{q - 2.0, {}};
    const auto res = integrate_adaptive(h, cuts[i], cuts[i + 1], kQuadratureTolerance, opts);
    if (!res.converged) {
      throw std::runtime_error("quadrature did not converge on [" + std::to_string(cuts[i]) +
                               ", " + std::to_string(cuts[i + 1]) + "] for q=" +
                               std::to_string(q));
    }
    total += res.value;
  }
  return total;
}

}  // namespace

double BoundReport::deviation() const {
  double dev = std::abs(observed - main_term);
  if (alt_main_term) dev = std::max(dev, std::abs(observed - *alt_main_term));
  return dev;
}

BoundReport finalize(BoundReport report) {
  report.satisfied = report.deviation() <= report.slack + kBoundGuard;
  return report;
}

double q1_slack_constant() { return (3.0 * kPi + 2.0 + std::log(kPi * kPi)) / kPi; }

double local_avg_error(const MeanInstance& inst, double q) {
  require_q_at_least_one(q);
  const auto d = outcome_distribution(inst);
  if (d.angles.sigma_is_integer) return 0.0;
  const Eigen::ArrayXd err = output_errors(inst);
  const double moment = (d.p * err.pow(q)).sum();
  return std::pow(moment, 1.0 / q);
}

double local_sup_error(const MeanInstance& inst, double support_tol) {
  const auto d = outcome_distribution(inst);
  if (d.angles.sigma_is_integer) return 0.0;
  const Eigen::ArrayXd err = output_errors(inst);
  return (d.p > support_tol).select(err, 0.0).maxCoeff();
}

double cot_sum(const MeanInstance& inst) {
  const auto ang = derive_angles(inst);
  require_non_integer_sigma(ang, "cot_sum");
  const double M = static_cast<double>(inst.M());
  double sum = 0.0;
  for (std::int64_t j = 0; j < inst.M(); ++j) {
    sum += std::abs(cot(reduced_angle(j, ang.s, inst.M())));
  }
  return sum / M;
}

BoundReport check_lemma_err_avg(const MeanInstance& inst) {
  const auto ang = derive_angles(inst);
  require_non_integer_sigma(ang, "check_lemma_err_avg");
  const double M = static_cast<double>(inst.M());
  const double sin2 = std::pow(std::sin(kPi * ang.s), 2);

  auto r = make_report(inst, 1.0);
  r.observed = local_avg_error(inst, 1.0);
  r.main_term = sin2 * std::sin(2.0 * ang.theta) * cot_sum(inst) / M;
  r.slack = sin2 * std::abs(std::cos(2.0 * ang.theta)) / M;
  return finalize(r);
}

BoundReport check_lemma_cot_rect(const MeanInstance& inst) {
  require_m_at_least_three(inst, "check_lemma_cot_rect");
  const auto ang = derive_angles(inst);
  require_non_integer_sigma(ang, "check_lemma_cot_rect");
  const double M = static_cast<double>(inst.M());
  const double s = ang.s;
  const double lo = kPi * (1.0 + s) / M;
  const double hi_mirror = kPi * (1.0 - s) / M;  // pi minus the upper limit

  // int |cot| over [lo, pi - hi_mirror] = -ln sin(lo) - ln sin(hi_mirror).
  const double abs_cot_integral = -std::log(std::sin(lo)) - std::log(std::sin(hi_mirror));
  // int 1/sin^2 over the same interval.
  const double inv_sin2_integral = cot(hi_mirror) + cot(lo);

  auto r = make_report(inst, 1.0);
  r.observed = cot_sum(inst);
  r.main_term = cot(kPi * s / M) / M + std::abs(cot(reduced_angle(M - 1, s, M))) / M +
                abs_cot_integral / kPi;
  r.slack = inv_sin2_integral / (kPi * M);
  return finalize(r);
}

BoundReport check_theorem_q1(const MeanInstance& inst) {
  require_m_at_least_three(inst, "check_theorem_q1");
  const auto ang = derive_angles(inst);
  const double M = static_cast<double>(inst.M());
  const double sin_s = std::sin(kPi * ang.s);

  auto r = make_report(inst, 1.0);
  r.observed = local_avg_error(inst, 1.0);
  r.main_term = 2.0 / kPi * sin_s * sin_s * std::sin(2.0 * ang.theta) * std::log(M) / M;
  r.slack = q1_slack_constant() * sin_s / M;
  return finalize(r);
}

BoundReport check_theorem_qgt1(const MeanInstance& inst, double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw std::domain_error("check_theorem_qgt1: requires 1 < q < inf");
  }
  const auto ang = derive_angles(inst);
  require_non_integer_sigma(ang, "check_theorem_qgt1");
  const double M = static_cast<double>(inst.M());
  const double sin_s = std::sin(kPi * ang.s);
  const double sin2 = sin_s * sin_s;
  const double not_two = q == 2.0 ? 0.0 : 1.0;

  auto r = make_report(inst, q);
  r.observed = std::pow(local_avg_error(inst, q), q);

  const double scale = sin2 / (M * kPi);
  r.main_term = scale * integrate_shifted_sine(ang.theta, q, kPi * ang.s_hi / M,
                                               kPi - kPi * ang.s_lo / M);
  r.alt_main_term = scale * integrate_shifted_sine(ang.theta, q, kPi * ang.s_lo / M,
                                                   kPi - kPi * ang.s_hi / M);
  r.slack = (1.0 + 2.0 * not_two) * std::pow(kPi, q - 1.0) * sin_s / std::pow(M, q) +
            sin2 / (M * M) * (2.0 * not_two + q * sin_power_integral(q - 2.0));
  return finalize(r);
}

double corollary_main_term(const MeanInstance& inst, double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw std::domain_error("corollary_main_term: requires 1 < q < inf");
  }
  const auto ang = derive_angles(inst);
  require_non_integer_sigma(ang, "corollary_main_term");
  const double M = static_cast<double>(inst.M());
  const double sin2 = std::pow(std::sin(kPi * ang.s), 2);
  const double integral = integrate_shifted_sine(ang.theta, q, 0.0, kPi);
  return std::pow(M, -1.0 / q) * std::pow(sin2 / kPi * integral, 1.0 / q);
}

}  // namespace qsum
