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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qsum/distribution.hpp"
#include "qsum/numerics.hpp"
#include "qsum/repetitions.hpp"
#include "qsum/sampler.hpp"
#include "qsum/serialize.hpp"
#include "qsum/sweep.hpp"

namespace qsum::cli {

namespace {

const std::vector<std::int64_t> kWorstMList = {6, 22, 86, 342, 1366};
const std::vector<std::int64_t> kRepsMList = {6, 22, 86, 342};
constexpr double kRateRelaxation = 1.25;
constexpr double kBoundedFactor = 2.0;
constexpr double kGrowthTolerance = 0.3;
constexpr double kMonteCarloSigmas = 4.0;

// Portable draw in [0, n) from the raw 64-bit output.
std::int64_t below(Engine& engine, std::int64_t n) {
  return static_cast<std::int64_t>(engine() % static_cast<std::uint64_t>(n));
}

enum class Format { kCsv, kJson };

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  throw std::invalid_argument("--format must be csv or json");
}

std::vector<std::int64_t> parse_m_list(const std::vector<std::string>& items) {
  std::vector<std::int64_t> out;
  for (const auto& item : items) out.push_back(parse_integer(item));
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw std::invalid_argument("--M-list must be increasing");
  }
  return out;
}

std::vector<BoundReport> reports_from_random(
    const std::vector<MeanInstance>& instances,
    const std::function<BoundReport(const MeanInstance&, std::size_t)>& check) {
  std::vector<BoundReport> out;
  out.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) out.push_back(check(instances[i], i));
  return out;
}

BoundReport envelope_report(std::int64_t M, double q, double observed, double lower,
                            double upper, std::int64_t k = 0, std::int64_t N = 0) {
  BoundReport r;
  r.k = k;
  r.N = N;
  r.M = M;
  r.q = q;
  r.observed = observed;
  r.main_term = 0.5 * (lower + upper);
  r.slack = 0.5 * (upper - lower);
  return finalize(r);
}

std::vector<BoundReport> worst_suite(const SuiteOptions& opt) {
  GridSpec grid;
  grid.N = opt.grid_N;
  grid.points = opt.grid_points;
  std::vector<BoundReport> out;

  const double c = q1_slack_constant();
  for (const auto& row : asymptotic_table(1.0, kWorstMList, grid)) {
    const double log_m = std::log(static_cast<double>(row.M));
    out.push_back(envelope_report(row.M, 1.0, row.normalized, q1_rate_constant() - c / log_m,
                                  q1_rate_constant() + c / log_m, row.argmax_k, row.argmax_N));
  }
  const double q = opt.q.value_or(2.0);
  if (q > 1.0 && std::isfinite(q)) {
    const auto rc = worst_avg_rate_constants(q);
    for (const auto& row : asymptotic_table(q, kWorstMList, grid)) {
      out.push_back(envelope_report(row.M, q, row.normalized, rc.lower / kRateRelaxation,
                                    rc.upper * kRateRelaxation, row.argmax_k, row.argmax_N));
    }
  }
  return out;
}

std::vector<BoundReport> reps_suite(const SuiteOptions& opt) {
  GridSpec grid;
  grid.N = opt.grid_N;
  grid.points = opt.grid_points;
  std::vector<BoundReport> out;
  const std::vector<double> qs = opt.q ? std::vector<double>{*opt.q} : std::vector<double>{2.0, 1.0};
  for (const double q : qs) {
    const auto table = check_repetition_theorem(q, kRepsMList, grid);
    const double median = table.median_repeated_scaled();
    for (std::size_t i = table.rows.size() / 2; i < table.rows.size(); ++i) {
      const auto& row = table.rows[i];
      out.push_back(envelope_report(row.M, q, row.repeated_scaled, 0.0, kBoundedFactor * median));
    }
    const auto ratios = table.plain_growth_ratios();
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      out.push_back(envelope_report(table.rows[i + 1].M, q, ratios[i], 1.0 - kGrowthTolerance,
                                    1.0 + kGrowthTolerance));
    }
  }
  return out;
}

std::vector<BoundReport> mc_suite(const SuiteOptions& opt) {
  Engine engine(opt.seed);
  std::vector<BoundReport> out;
  constexpr double kQs[] = {1.0, 1.5, 2.0, 3.0};
  for (std::int64_t t = 0; t < opt.trials; ++t) {
    const std::int64_t N = std::int64_t{1} << (10 + below(engine, 7));
    const std::int64_t M = 3 + below(engine, 62);
    const std::int64_t k = below(engine, N + 1);
    const double q = opt.q.value_or(kQs[below(engine, 4)]);
    const int n = static_cast<int>(below(engine, 3));
    const MeanInstance inst(k, N, M);

    const double exact = std::pow(repetition_error(inst, q, n), q);
    const auto run = empirical_repetition_error(inst, q, n, opt.runs, opt.seed + 1000 * (t + 1));
    BoundReport r;
    r.k = k;
    r.N = N;
    r.M = M;
    r.q = q;
    r.observed = run.mean_power;
    r.main_term = exact;
    r.slack = kMonteCarloSigmas *
              std::max(run.standard_error, exact_standard_error(inst, q, n, opt.runs));
    out.push_back(finalize(r));
  }
  return out;
}

double random_q(Engine& engine) {
  constexpr double kQs[] = {1.2, 1.5, 2.0, 3.0, 5.0};
  return kQs[below(engine, 5)];
}

void emit_reports(std::ostream& out, const std::vector<BoundReport>& reports, Format format) {
  if (format == Format::kJson) {
    out << to_json(reports) << '\n';
  } else {
    write_csv(out, reports);
  }
}

}  // namespace

std::int64_t parse_integer(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v) || v != std::floor(v) ||
      std::abs(v) > 9.0e15) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return static_cast<std::int64_t>(v);
}

double parse_q(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return kInfiniteQ;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size() || !(v >= 1.0)) {
    throw std::invalid_argument("q must be a real >= 1 or 'inf', got '" + text + "'");
  }
  return v;
}

std::vector<MeanInstance> random_instances(std::int64_t count, std::uint64_t seed,
                                           bool non_integer_sigma) {
  Engine engine(seed);
  std::vector<MeanInstance> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<std::int64_t>(out.size()) < count) {
    const std::int64_t N = std::int64_t{1} << (13 + below(engine, 8));
    const std::int64_t max_m = std::min<std::int64_t>(4096, N - 1);
    const std::int64_t M = 3 + below(engine, max_m - 2);
    const std::int64_t k = below(engine, N + 1);
    MeanInstance inst(k, N, M);
    if (non_integer_sigma && derive_angles(inst).sigma_is_integer) continue;
    out.push_back(inst);
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"q1",    "qgt1", "lemma-avg",    "lemma-rect",
                                                 "worst", "reps", "mc-crosscheck"};
  return names;
}

std::vector<BoundReport> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "q1") {
    return reports_from_random(random_instances(opt.trials, opt.seed, false),
                               [](const MeanInstance& inst, std::size_t) {
                                 return check_theorem_q1(inst);
                               });
  }
  if (name == "qgt1") {
    Engine q_engine(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<double> qs;
    for (std::int64_t i = 0; i < opt.trials; ++i) qs.push_back(opt.q.value_or(random_q(q_engine)));
    return reports_from_random(random_instances(opt.trials, opt.seed, true),
                               [&qs](const MeanInstance& inst, std::size_t i) {
                                 return check_theorem_qgt1(inst, qs[i]);
                               });
  }
  if (name == "lemma-avg") {
    return reports_from_random(random_instances(opt.trials, opt.seed, true),
                               [](const MeanInstance& inst, std::size_t) {
                                 return check_lemma_err_avg(inst);
                               });
  }
  if (name == "lemma-rect") {
    return reports_from_random(random_instances(opt.trials, opt.seed, true),
                               [](const MeanInstance& inst, std::size_t) {
                                 return check_lemma_cot_rect(inst);
                               });
  }
  if (name == "worst") return worst_suite(opt);
  if (name == "reps") return reps_suite(opt);
  if (name == "mc-crosscheck") return mc_suite(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact error analysis of quantum Boolean summation", "qsum"};
  app.require_subcommand(1);

  std::string format_text;  // empty: csv, except json for reps and mc
  std::string k_text, n_text, m_text, q_text = "1", reps_text = "0", runs_text = "100000";
  std::string seed_text, trials_text = "500", points_text = "10000";
  std::string grid_n_text = std::to_string(std::int64_t{1} << 20);
  std::vector<std::string> m_list_text;
  std::string theorem;
  bool dense = false;
  bool all = false;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--k", k_text, "number of ones")->required();
    sub->add_option("--N", n_text, "domain size")->required();
    sub->add_option("--M", m_text, "number of outcomes")->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* dist = app.add_subcommand("dist", "outcome distribution p(j)");
  add_instance(dist);
  add_format(dist);

  auto* error = app.add_subcommand("error", "local L_q error (q may be inf)");
  add_instance(error);
  error->add_option("--q", q_text, "norm exponent");
  add_format(error);

  auto* sweep = app.add_subcommand("sweep", "worst-average error over a grid of means");
  sweep->add_option("--M-list", m_list_text, "comma-separated increasing M values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--q", q_text, "norm exponent");
  sweep->add_option("--N", grid_n_text, "grid denominator");
  sweep->add_option("--points", points_text, "evenly spaced k values");
  sweep->add_flag("--dense", dense, "use every k in [0, N]");
  sweep->add_option("--reps", reps_text, "median of 2n+1 repetitions");
  add_format(sweep);

  auto* reps = app.add_subcommand("reps", "median-of-repetitions distribution");
  add_instance(reps);
  reps->add_option("--q", q_text, "norm exponent");
  reps->add_option("--n", reps_text, "2n+1 repetitions")->required();
  add_format(reps);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the repetition error");
  add_instance(mc);
  mc->add_option("--q", q_text, "norm exponent");
  mc->add_option("--n", reps_text, "2n+1 repetitions");
  mc->add_option("--runs", runs_text, "number of median experiments");
  mc->add_option("--seed", seed_text, "generator seed")->required();
  add_format(mc);

  auto* verify = app.add_subcommand("verify", "check bounds; exit 1 on any violation");
  auto* theorem_opt =
      verify->add_option("--theorem", theorem, "suite name")->check(CLI::IsMember(suite_names()));
  auto* all_opt = verify->add_flag("--all", all, "run every suite");
  theorem_opt->excludes(all_opt);
  verify->add_option("--trials", trials_text, "random instances per suite");
  verify->add_option("--seed", seed_text, "generator seed")->required();
  verify->add_option("--q", q_text, "fixed q for qgt1, worst, reps and mc-crosscheck");
  verify->add_option("--runs", runs_text, "Monte Carlo runs per configuration");
  verify->add_option("--N", grid_n_text, "sweep grid denominator");
  verify->add_option("--points", points_text, "sweep grid points");
  add_format(verify);


  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (format_text.empty()) {
      format_text = app.got_subcommand(reps) || app.got_subcommand(mc) ? "json" : "csv";
    }
    if (app.got_subcommand(verify) && !all && theorem.empty()) {
      throw CLI::ValidationError("verify", "one of --theorem or --all is required");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Flag values are validated before any computation.
  Format format = Format::kCsv;
  std::optional<MeanInstance> inst;
  double q = 1.0;
  std::int64_t n_reps = 0;
  try {
    format = parse_format(format_text);
    q = parse_q(q_text);
    n_reps = parse_integer(reps_text);
    if (n_reps < 0 || n_reps > kMaxMedianOrder) {
      throw std::invalid_argument("--n/--reps must be in [0, " + std::to_string(kMaxMedianOrder) +
                                  "]");
    }
    if (!k_text.empty()) {
      inst.emplace(parse_integer(k_text), parse_integer(n_text), parse_integer(m_text));
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(dist)) {
      const auto d = outcome_distribution(*inst);
      if (format == Format::kJson) {
        out << to_json(d) << '\n';
      } else {
        write_csv(out, d);
      }
      return kExitOk;
    }

    if (app.got_subcommand(error)) {
      const double e = std::isinf(q) ? local_sup_error(*inst) : local_avg_error(*inst, q);
      if (format == Format::kJson) {
        std::ostringstream j;
        j << "{\"k\":" << inst->k() << ",\"N\":" << inst->N() << ",\"M\":" << inst->M()
          << ",\"q\":" << (std::isinf(q) ? std::string("\"inf\"") : format_real(q))
          << ",\"error\":" << format_real(e) << "}";
        out << j.str() << '\n';
      } else {
        out << "k,N,M,q,error\n"
            << inst->k() << ',' << inst->N() << ',' << inst->M() << ',' << format_real(q) << ','
            << format_real(e) << '\n';
      }
      return kExitOk;
    }

    if (app.got_subcommand(sweep)) {
      std::vector<std::int64_t> m_list;
      GridSpec grid;
      try {
        m_list = parse_m_list(m_list_text);
        grid.N = parse_integer(grid_n_text);
        grid.points = parse_integer(points_text);
        grid.dense = dense;
        for (const auto M : m_list) {
          if (M < 3) throw std::invalid_argument("--M-list values must be >= 3");
          if (grid.N <= M) throw std::invalid_argument("--N must exceed every M");
        }
        if (grid.points < 1 && !dense) throw std::invalid_argument("--points must be >= 1");
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      std::vector<SweepResult> results;
      for (const auto M : m_list) {
        results.push_back(worst_avg_error(M, q, grid, static_cast<int>(n_reps)));
      }
      if (format == Format::kJson) {
        out << to_json(results) << '\n';
      } else {
        write_csv(out, results);
      }
      return kExitOk;
    }

    if (app.got_subcommand(reps)) {
      if (std::isinf(q)) {
        err << "error: reps requires finite q\n";
        return kExitUsage;
      }
      const auto d = outcome_distribution(*inst);
      const auto med = median_distribution(collapse_outputs(d), static_cast<int>(n_reps));
      const double e = repetition_error(*inst, q, static_cast<int>(n_reps));
      if (format == Format::kJson) {
        out << to_json(*inst, q, med, e) << '\n';
      } else {
        write_csv(out, med);
      }
      return kExitOk;
    }

    if (app.got_subcommand(mc)) {
      std::int64_t runs = 0;
      std::int64_t seed = 0;
      try {
        runs = parse_integer(runs_text);
        seed = parse_integer(seed_text);
        if (runs < 1) throw std::invalid_argument("--runs must be >= 1");
        if (std::isinf(q)) throw std::invalid_argument("mc requires finite q");
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      const auto run = empirical_repetition_error(*inst, q, static_cast<int>(n_reps), runs,
                                                  static_cast<std::uint64_t>(seed));
      if (format == Format::kJson) {
        out << to_json(run) << '\n';
      } else {
        write_csv(out, run);
      }
      return kExitOk;
    }

    if (app.got_subcommand(verify)) {
      SuiteOptions opt;
      try {
        opt.seed = static_cast<std::uint64_t>(parse_integer(seed_text));
        opt.trials = parse_integer(trials_text);
        opt.runs = parse_integer(runs_text);
        opt.grid_N = parse_integer(grid_n_text);
        opt.grid_points = parse_integer(points_text);
        if (verify->count("--q") > 0) opt.q = q;
        if (opt.q && std::isinf(*opt.q)) throw std::invalid_argument("verify requires finite q");
        if (opt.trials < 1 || opt.runs < 1 || opt.grid_points < 1) {
          throw std::invalid_argument("--trials, --runs and --points must be >= 1");
        }
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      std::vector<BoundReport> reports;
      const std::vector<std::string> names = all ? suite_names() : std::vector{theorem};
      for (const auto& name : names) {
        auto part = run_suite(name, opt);
        const auto failed = std::count_if(part.begin(), part.end(),
                                          [](const BoundReport& r) { return !r.satisfied; });
        err << name << ": " << part.size() - static_cast<std::size_t>(failed) << '/'
            << part.size() << " satisfied\n";
        reports.insert(reports.end(), part.begin(), part.end());
      }
      emit_reports(out, reports, format);
      const bool ok = std::all_of(reports.begin(), reports.end(),
                                  [](const BoundReport& r) { return r.satisfied; });
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace qsum::cli
