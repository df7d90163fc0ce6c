// Copyright 2026 The restartkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESTARTKIT_TOOLS_EXPERIMENT_HPP_
#define RESTARTKIT_TOOLS_EXPERIMENT_HPP_

#include <cstdint>
#include <memory>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "restartkit/core.hpp"
#include "restartkit/linops.hpp"
#include "restartkit/problems.hpp"
#include "restartkit/restart.hpp"
#include "restartkit/solvers.hpp"

namespace restartkit::tools {

enum class Experiment { kQcbpGaussian, kQcbpFourier, kTvFourier, kSrLasso };
enum class Scheme { kNone, kFixed, kGridAlpha, kGridBeta, kGridBoth, kRanges };
enum class SolverKind { kPrimalDual, kNesta };

// Flat JSON document; absent optionals fall back to per-experiment defaults.
struct ExperimentConfig {
  Experiment experiment = Experiment::kQcbpGaussian;
  Scheme scheme = Scheme::kGridAlpha;
  std::optional<SolverKind> solver;
  std::uint64_t seed = 1;
  std::string output_path;

  // Problem.
  std::optional<Index> n;
  std::optional<Index> m;
  std::optional<Index> s;
  std::optional<double> noise;
  std::optional<double> kappa;
  Index side = 64;
  std::optional<MaskKind> mask;
  double rate = 0.125;
  double density_exponent = 1.0;
  std::optional<int> radial_lines;
  std::string dataset_path;
  std::string dataset_format = "csv";
  std::string dataset_name;
  std::optional<double> lambda;
  // Known optimal value f + g_Q, reported as the objective error column.
  std::optional<double> reference_optimum;

  // Restart scheme.
  std::int64_t t = 2000;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> r;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> alpha0;
  std::optional<double> beta0;
  std::optional<double> eps0;
  std::optional<double> alpha;  // fixed scheme
  std::optional<double> beta;
  std::optional<IndexRanges> ranges;
  std::optional<std::int64_t> checkpoint_stride;
  StartPolicy start_policy = StartPolicy::kGlobalBest;
  int workers = 1;

  // Non-restarted baselines.
  std::optional<double> mu;     // NESTA smoothing
  std::optional<double> delta;  // primal-dual step balance

  void validate() const;
};

std::string_view to_string(Experiment e);
std::string_view to_string(Scheme s);

// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

// `key=value` overrides; value is read as JSON when it parses, else as text.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Problem, solver and start point after defaults are resolved.
struct BuiltExperiment {
  ProblemInstance problem;
  SolverContract contract;
  SolverKind solver = SolverKind::kPrimalDual;
  std::shared_ptr<const PrimalDualProblem> primal_dual;  // kPrimalDual
  std::optional<SmoothableProblem> smoothable;           // kNesta
  Vec x0;
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double noise = 0.0;
};

BuiltExperiment build_experiment(const ExperimentConfig& config);

// Resolved restart parameters for the grid and fixed schemes.
RestartConfig restart_config(const ExperimentConfig& config,
                             const BuiltExperiment& built);

struct RunSummary {
  double objective = 0.0;
  double gap = 0.0;
  std::optional<double> objective_error;
  std::optional<double> reconstruction_error;
  std::int64_t inner_iterations = 0;
  std::int64_t restarts = 0;
  // First t with error <= 10^-p, for p = 0, 1, ...; error is the
  // reconstruction error when known, else the objective error, else f + g_Q.
  std::vector<std::optional<std::int64_t>> iterations_to_decade;
};

RunSummary summarize(const std::vector<TraceRecord>& trace,
                     std::int64_t inner_iterations, std::int64_t restarts);
nlohmann::json to_json(const RunSummary& summary);

struct ExperimentResult {
  RestartOutcome outcome;
  RunSummary summary;
};

// Writes the trace CSV and `<output>.summary.json` when output_path is set.
// Solver failures flush the partial trace before rethrowing.
ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kSweepParameters[] = {"alpha", "beta", "noise",
                                                   "lambda", "mu"};

struct SweepEntry {
  double value = 0.0;
  std::string output_path;
  RunSummary summary;
};

// One run per value with a shared seed, executed on up to `workers` threads.
std::vector<SweepEntry> sweep(const ExperimentConfig& config,
                              const std::string& parameter,
                              const std::vector<double>& values, int workers);

void write_sweep_table(std::ostream& out, const std::string& parameter,
                       const std::vector<SweepEntry>& entries);

// Long grid-restarted run on the configured problem.
ReferenceOptimum run_oracle(const ExperimentConfig& config, std::int64_t budget);

}  // namespace restartkit::tools

#endif  // RESTARTKIT_TOOLS_EXPERIMENT_HPP_
