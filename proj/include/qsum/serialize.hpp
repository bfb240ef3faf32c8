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

#ifndef QSUM_SERIALIZE_HPP_
#define QSUM_SERIALIZE_HPP_

#include <ostream>
#include <span>
#include <string>

#include "qsum/distribution.hpp"
#include "qsum/error_analysis.hpp"
#include "qsum/repetitions.hpp"
#include "qsum/sampler.hpp"
#include "qsum/sweep.hpp"

// CSV output is comma separated with LF line ends, a fixed header per table and
// reals printed with 17 significant digits. JSON mirrors the CSV field names.

namespace qsum {

/// "%.17g", with infinities spelled "inf" / "-inf".
std::string format_real(double v);

// Columns: j,p,alpha
void write_csv(std::ostream& out, const OutcomeDistribution& d);
// {"M":..,"k":..,"N":..,"p":[..]}
std::string to_json(const OutcomeDistribution& d);

// Columns: k,N,M,q,observed,main_term,slack,satisfied
void write_csv(std::ostream& out, std::span<const BoundReport> reports);
std::string to_json(std::span<const BoundReport> reports);

// Columns: M,q,n_reps,worst_error,argmax_k,argmax_N,normalized_constant
void write_csv(std::ostream& out, std::span<const SweepResult> results);
std::string to_json(std::span<const SweepResult> results);

// Columns: alpha,rho,rho_n
void write_csv(std::ostream& out, const MedianDistribution& med);
std::string to_json(const MeanInstance& inst, double q, const MedianDistribution& med,
                    double error);

// Columns: seed,draws,empirical_error_q,standard_error,mean_power
void write_csv(std::ostream& out, const SampleRun& run);
std::string to_json(const SampleRun& run);

}  // namespace qsum

#endif  // QSUM_SERIALIZE_HPP_
