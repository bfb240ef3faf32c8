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

#include "qsum/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace qsum {

namespace {

using nlohmann::json;

// JSON has no infinity; q = inf is written as the string "inf".
json real_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json report_json(const BoundReport& r) {
  return {{"k", r.k},          {"N", r.N},
          {"M", r.M},          {"q", real_json(r.q)},
          {"observed", r.observed}, {"main_term", r.main_term},
          {"slack", r.slack},  {"satisfied", r.satisfied}};
}

json sweep_json(const SweepResult& r) {
  return {{"M", r.M},
          {"q", real_json(r.q)},
          {"n_reps", r.n_reps},
          {"worst_error", r.worst_error},
          {"argmax_k", r.argmax_k},
          {"argmax_N", r.argmax_N},
          {"normalized_constant", normalized_constant(r.worst_error, r.M, r.q, r.n_reps)},
          {"grid", r.grid_spec}};
}

}  // namespace

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const OutcomeDistribution& d) {
  out << "j,p,alpha\n";
  for (std::int64_t j = 0; j < d.M(); ++j) {
    out << j << ',' << format_real(d.p(j)) << ',' << format_real(output_value(j, d.M())) << '\n';
  }
}

std::string to_json(const OutcomeDistribution& d) {
  json j = {{"M", d.M()}, {"k", d.instance.k()}, {"N", d.instance.N()}};
  j["p"] = std::vector<double>(d.p.data(), d.p.data() + d.p.size());
  return j.dump();
}

void write_csv(std::ostream& out, std::span<const BoundReport> reports) {
  out << "k,N,M,q,observed,main_term,slack,satisfied\n";
  for (const auto& r : reports) {
    out << r.k << ',' << r.N << ',' << r.M << ',' << format_real(r.q) << ','
        << format_real(r.observed) << ',' << format_real(r.main_term) << ','
        << format_real(r.slack) << ',' << (r.satisfied ? "true" : "false") << '\n';
  }
}

std::string to_json(std::span<const BoundReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump();
}

void write_csv(std::ostream& out, std::span<const SweepResult> results) {
  out << "M,q,n_reps,worst_error,argmax_k,argmax_N,normalized_constant\n";
  for (const auto& r : results) {
    out << r.M << ',' << format_real(r.q) << ',' << r.n_reps << ',' << format_real(r.worst_error)
        << ',' << r.argmax_k << ',' << r.argmax_N << ','
        << format_real(normalized_constant(r.worst_error, r.M, r.q, r.n_reps)) << '\n';
  }
}

std::string to_json(std::span<const SweepResult> results) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(sweep_json(r));
  return arr.dump();
}

void write_csv(std::ostream& out, const MedianDistribution& med) {
  out << "alpha,rho,rho_n\n";
  for (Eigen::Index i = 0; i < med.alpha.size(); ++i) {
    out << format_real(med.alpha(i)) << ',' << format_real(med.base.rho(i)) << ','
        << format_real(med.rho(i)) << '\n';
  }
}

std::string to_json(const MeanInstance& inst, double q, const MedianDistribution& med,
                    double error) {
  json atoms = json::array();
  for (Eigen::Index i = 0; i < med.alpha.size(); ++i) {
    atoms.push_back({{"alpha", med.alpha(i)}, {"rho", med.base.rho(i)}, {"rho_n", med.rho(i)}});
  }
  json j = {{"k", inst.k()}, {"N", inst.N()}, {"M", inst.M()}, {"q", real_json(q)},
            {"n", med.n},    {"atoms", atoms},  {"error", error}};
  return j.dump();
}

void write_csv(std::ostream& out, const SampleRun& run) {
  out << "seed,draws,empirical_error_q,standard_error,mean_power\n";
  out << run.seed << ',' << run.draws << ',' << format_real(run.empirical_error_q) << ','
      << format_real(run.standard_error) << ',' << format_real(run.mean_power) << '\n';
}

std::string to_json(const SampleRun& run) {
  json j = {{"seed", run.seed},
            {"draws", run.draws},
            {"empirical_error_q", run.empirical_error_q},
            {"standard_error", run.standard_error},
            {"mean_power", run.mean_power}};
  return j.dump();
}

}  // namespace qsum
