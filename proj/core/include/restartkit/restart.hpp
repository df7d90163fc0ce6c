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

// Restart engines. restart_known drives an inner solver with known sharpness
// constants; restart_grid searches a logarithmic grid of (alpha, beta)
// estimates in the order fixed by a ScheduleCriterion.

#ifndef RESTARTKIT_RESTART_HPP_
#define RESTARTKIT_RESTART_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "restartkit/core.hpp"
#include "restartkit/schedule.hpp"

namespace restartkit {

enum class StartPolicy {
  // Every inner run starts from the best point found so far.
  kGlobalBest,
  // Each (i, j) instance restarts from its own best point. Required by the
  // parallel engine.
  kInstanceLocal,
};

struct RestartConfig {
  double a = 7.38905609893065;  // e^2
  double b = 2.718281828459045;
  double r = 0.36787944117144233;  // e^-1
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double eps0 = 1.0;
  // Number of schedule steps t; the inner iterations consumed never exceed it.
  std::int64_t total_inner_iterations = 1000;
  ScheduleCriterion criterion;
  double eps_floor = 10.0 * kMachineEpsilon;
  // Emit a trace row every this many inner iterations inside a solver run;
  // zero records completed restarts only.
  std::int64_t checkpoint_stride = 0;
  StartPolicy start_policy = StartPolicy::kGlobalBest;

  void validate() const;
};

struct InstanceState {
  std::int64_t restarts = 0;      // U
  std::int64_t iterations = 0;    // V, charged at the cost bound
  double eps_current = 0.0;
  WarmState warm_state;
  std::int64_t max_k = 0;         // largest k emitted for this pair
  std::optional<Vec> local_best;  // kInstanceLocal only
};

using InstanceKey = std::pair<int, int>;

struct RestartOutcome {
  Vec final_point;
  std::vector<TraceRecord> trace;
  std::map<InstanceKey, InstanceState> per_instance;
  std::int64_t inner_iterations = 0;
  std::int64_t restarts = 0;
};

// Non-finite objective values abort the run; the trace up to that point is
// kept.
class AbortedRun : public std::runtime_error {
 public:
  AbortedRun(const std::string& what, std::vector<TraceRecord> partial)
      : std::runtime_error(what), partial_trace(std::move(partial)) {}
  std::vector<TraceRecord> partial_trace;
};

// delta for the next restart at grid point (alpha_i, beta_j).
double delta_update(double alpha_i, double beta_j, double beta0, double b,
                    double eps_prev);

struct KnownOptions {
  std::int64_t checkpoint_stride = 0;
};

RestartOutcome restart_known(const ProblemInstance& problem,
                             const SolverContract& contract, const Vec& x0,
                             double eps0, double alpha, double beta, double r,
                             std::int64_t restarts, KnownOptions options = {});

RestartOutcome restart_grid(const ProblemInstance& problem,
                            const SolverContract& contract, const Vec& x0,
                            const RestartConfig& config);

// Runs the (i, j) instances of a kInstanceLocal grid search in parallel and
// merges them so the result equals restart_grid's. Checkpoint rows are not
// produced.
RestartOutcome restart_grid_parallel(const ProblemInstance& problem,
                                     const SolverContract& contract,
                                     const Vec& x0, const RestartConfig& config,
                                     int workers);

struct DefaultParameters {
  double r;
  double a;
  double b;
  double c1;
  double c2;
};

DefaultParameters default_parameters(double d1, double d2,
                                     std::optional<double> beta_hint,
                                     ScheduleMode mode);

// b = 1 + 1/log(1/eps).
double epsilon_dependent_base(double eps);

// Schedule clamps derived from the grid bases.
ScheduleCriterion clamped_criterion(ScheduleCriterion criterion, double a,
                                    double b);

}  // namespace restartkit

#endif  // RESTARTKIT_RESTART_HPP_
