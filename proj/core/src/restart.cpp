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

#include "restartkit/restart.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

namespace restartkit {
namespace {

struct Metrics {
  double total = 0.0;
  double objective = 0.0;
  double gap = 0.0;
  std::optional<double> objective_error;
  std::optional<double> reconstruction_error;
};

Metrics evaluate(const ProblemInstance& problem, const Vec& x) {
  Metrics m;
  m.objective = problem.objective(x);
  m.gap = problem.gap(x);
  m.total = m.objective + m.gap;
  if (problem.reference_optimum) {
    m.objective_error = m.total - *problem.reference_optimum;
  }
  if (problem.reference_point) {
    m.reconstruction_error = problem.distance(x, *problem.reference_point);
  }
  return m;
}

// Builds the trace. Rows report the best point seen so far, including inner
// iterates observed at checkpoints, so the reported f + g_Q never increases.
class TraceRecorder {
 public:
  TraceRecorder(const ProblemInstance& problem, std::int64_t stride)
      : problem_(problem), stride_(stride) {}

  void start(const Metrics& x0) {
    reported_ = x0;
    push(0, 0, {0, 0, 0});
  }

  bool wants_checkpoints() const { return stride_ > 0; }

  void checkpoint(std::int64_t t, std::int64_t restart, const GridPoint& g,
                  const Vec& candidate) {
    if (stride_ <= 0 || t % stride_ != 0) return;
    const Metrics m = checked(candidate);
    if (m.total < reported_.total) reported_ = m;
    push(t, restart, g);
  }

  void restart_done(std::int64_t t, std::int64_t restart, const GridPoint& g,
                    const Metrics& best) {
    if (best.total < reported_.total) reported_ = best;
    push(t, restart, g);
  }

  Metrics checked(const Vec& x) {
    Metrics m = evaluate(problem_, x);
    if (!std::isfinite(m.total)) {
      throw AbortedRun("non-finite objective value in restart engine", rows_);
    }
    return m;
  }

  std::vector<TraceRecord>& rows() { return rows_; }

 private:
  void push(std::int64_t t, std::int64_t restart, const GridPoint& g) {
    TraceRecord rec{t,
                    restart,
                    g.i,
                    g.j,
                    g.k,
                    reported_.objective,
                    reported_.objective_error,
                    reported_.gap,
                    reported_.reconstruction_error};
    if (!rows_.empty() && rows_.back().inner_iteration == t) {
      rows_.back() = rec;
    } else {
      rows_.push_back(rec);
    }
  }

  const ProblemInstance& problem_;
  std::int64_t stride_;
  Metrics reported_;
  std::vector<TraceRecord> rows_;
};

SolverStep run_checked(const SolverContract& contract, double delta, double eps,
                       const Vec& start, const WarmState& warm,
                       const InnerObserver& observer, std::int64_t cost) {
  SolverStep step = contract.run(delta, eps, start, warm, observer);
  if (step.iterations > cost) {
    throw DivergedError("inner solver used " + std::to_string(step.iterations) +
                        " iterations, above its cost bound " +
                        std::to_string(cost));
  }
  return step;
}

struct Tick {
  std::int64_t step;
  std::int64_t k;
};

struct RestartEvent {
  std::int64_t step;
  std::int64_t iterations;
  GridPoint point;
  Metrics metrics;
};

struct InstanceRun {
  InstanceKey key;
  std::vector<Tick> ticks;
  InstanceState state;
  Metrics best;
  std::int64_t best_step = -1;
  std::vector<RestartEvent> events;
  std::exception_ptr error;
};

}  // namespace

void RestartConfig::validate() const {
  if (!(a > 1.0) || !(b > 1.0)) throw ConfigError("grid bases a, b must exceed 1");
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("r must lie in (0, 1)");
  if (!(alpha0 > 0.0)) throw ConfigError("alpha0 must be positive");
  if (!(beta0 >= 1.0)) throw ConfigError("beta0 must be >= 1");
  if (!(eps0 > 0.0)) throw ConfigError("eps0 must be positive");
  if (!(eps_floor > 0.0)) throw ConfigError("eps_floor must be positive");
  if (total_inner_iterations < 0) throw ConfigError("budget t must be >= 0");
  if (checkpoint_stride < 0) throw ConfigError("checkpoint stride must be >= 0");
  try {
    criterion.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

double delta_update(double alpha_i, double beta_j, double beta0, double b,
                    double eps_prev) {
  const double ratio = 2.0 * eps_prev / alpha_i;
  if (ratio > 1.0) return std::pow(ratio, std::min(b / beta_j, 1.0 / beta0));
  return std::pow(ratio, 1.0 / beta_j);
}

RestartOutcome restart_known(const ProblemInstance& problem,
                             const SolverContract& contract, const Vec& x0,
                             double eps0, double alpha, double beta, double r,
                             std::int64_t restarts, KnownOptions options) {
  SharpnessEstimate{alpha, beta, 0.0}.validate();
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("r must lie in (0, 1)");
  if (!(eps0 > 0.0)) throw InvalidArgument("eps0 must be positive");
  problem.check_dimension(x0);

  TraceRecorder recorder(problem, options.checkpoint_stride);
  RestartOutcome out;
  Vec best = x0;
  Metrics best_metrics = recorder.checked(x0);
  recorder.start(best_metrics);
  InstanceState& inst = out.per_instance[{0, 0}];
  inst.eps_current = eps0;

  for (std::int64_t k = 0; k < restarts; ++k) {
    const GridPoint g{0, 0, k + 1};
    const double eps_next = r * inst.eps_current;
    const double delta = std::pow(2.0 * inst.eps_current / alpha, 1.0 / beta);
    const std::int64_t cost = contract.cost_bound(delta, eps_next);
    const std::int64_t offset = out.inner_iterations;
    InnerObserver observer;
    if (recorder.wants_checkpoints()) {
      observer = [&](std::int64_t j, const Vec& candidate) {
        recorder.checkpoint(offset + j, k + 1, g, candidate);
      };
    }
    SolverStep step =
        run_checked(contract, delta, eps_next, best, inst.warm_state, observer, cost);
    out.inner_iterations += step.iterations;
    const Metrics z = recorder.checked(step.point);
    if (z.total < best_metrics.total) {
      best = std::move(step.point);
      best_metrics = z;
    }
    inst.restarts += 1;
    inst.iterations = add_counts(inst.iterations, step.iterations);
    inst.eps_current = eps_next;
    inst.warm_state = std::move(step.state);
    inst.max_k = k + 1;
    out.restarts += 1;
    recorder.restart_done(out.inner_iterations, out.restarts, g, best_metrics);
  }
  out.final_point = std::move(best);
  out.trace = std::move(recorder.rows());
  return out;
}

RestartOutcome restart_grid(const ProblemInstance& problem,
                            const SolverContract& contract, const Vec& x0,
                            const RestartConfig& config) {
  config.validate();
  problem.check_dimension(x0);
  const bool local = config.start_policy == StartPolicy::kInstanceLocal;

  AssignmentEnumerator enumerator(config.criterion);
  TraceRecorder recorder(problem, config.checkpoint_stride);
  RestartOutcome out;
  Vec best = x0;
  Metrics best_metrics = recorder.checked(x0);
  const double start_total = best_metrics.total;
  recorder.start(best_metrics);
  std::map<InstanceKey, double> local_totals;

  for (std::int64_t m = 0; m < config.total_inner_iterations; ++m) {
    const GridPoint g = enumerator.next_point();
    const InstanceKey key{g.i, g.j};
    auto [it, inserted] = out.per_instance.try_emplace(key);
    InstanceState& inst = it->second;
    if (inserted) {
      inst.eps_current = config.eps0;
      if (local) {
        inst.local_best = x0;
        local_totals[key] = start_total;
      }
    }
    inst.max_k = g.k;

    const double alpha_i = config.alpha0 * std::pow(config.a, g.i);
    const double beta_j = config.beta0 * std::pow(config.b, g.j);
    const double eps_next = std::max(config.r * inst.eps_current, config.eps_floor);
    const double delta =
        std::max(delta_update(alpha_i, beta_j, config.beta0, config.b,
                              inst.eps_current),
                 config.eps_floor);
    const std::int64_t cost = contract.cost_bound(delta, eps_next);
    if (cost > g.k - inst.iterations) continue;

    const std::int64_t offset = out.inner_iterations;
    const std::int64_t restart_no = out.restarts + 1;
    InnerObserver observer;
    if (recorder.wants_checkpoints()) {
      observer = [&](std::int64_t j, const Vec& candidate) {
        recorder.checkpoint(offset + j, restart_no, g, candidate);
      };
    }
    const Vec& start = local ? *inst.local_best : best;
    SolverStep step =
        run_checked(contract, delta, eps_next, start, inst.warm_state, observer, cost);
    out.inner_iterations += step.iterations;
    const Metrics z = recorder.checked(step.point);
    if (local && z.total < local_totals[key]) {
      local_totals[key] = z.total;
      inst.local_best = step.point;
    }
    if (z.total < best_metrics.total) {
      best = std::move(step.point);
      best_metrics = z;
    }
    inst.iterations += cost;
    inst.restarts += 1;
    inst.eps_current = eps_next;
    inst.warm_state = std::move(step.state);
    out.restarts += 1;
    recorder.restart_done(out.inner_iterations, out.restarts, g, best_metrics);
  }
  out.final_point = std::move(best);
  out.trace = std::move(recorder.rows());
  return out;
}

RestartOutcome restart_grid_parallel(const ProblemInstance& problem,
                                     const SolverContract& contract,
                                     const Vec& x0, const RestartConfig& config,
                                     int workers) {
  config.validate();
  problem.check_dimension(x0);
  if (config.start_policy != StartPolicy::kInstanceLocal) {
    throw ConfigError("parallel grid search needs the instance_local start policy");
  }

  // The schedule prefix fixes every instance's ticks up front.
  std::vector<InstanceRun> runs;
  {
    AssignmentEnumerator enumerator(config.criterion);
    std::map<InstanceKey, std::size_t> index;
    for (std::int64_t m = 0; m < config.total_inner_iterations; ++m) {
      const GridPoint g = enumerator.next_point();
      const InstanceKey key{g.i, g.j};
      auto [it, inserted] = index.try_emplace(key, runs.size());
      if (inserted) runs.push_back(InstanceRun{key, {}, {}, {}, -1, {}, nullptr});
      runs[it->second].ticks.push_back({m, g.k});
    }
  }

  const Metrics start_metrics = evaluate(problem, x0);
  if (!std::isfinite(start_metrics.total)) {
    throw AbortedRun("non-finite objective value at the starting point", {});
  }

  auto run_instance = [&](InstanceRun& run) {
    InstanceState& inst = run.state;
    inst.eps_current = config.eps0;
    inst.local_best = x0;
    run.best = start_metrics;
    const double alpha_i = config.alpha0 * std::pow(config.a, run.key.first);
    const double beta_j = config.beta0 * std::pow(config.b, run.key.second);
    for (const Tick& tick : run.ticks) {
      inst.max_k = tick.k;
      const double eps_next = std::max(config.r * inst.eps_current, config.eps_floor);
      const double delta =
          std::max(delta_update(alpha_i, beta_j, config.beta0, config.b,
                                inst.eps_current),
                   config.eps_floor);
      const std::int64_t cost = contract.cost_bound(delta, eps_next);
      if (cost > tick.k - inst.iterations) continue;
      SolverStep step = run_checked(contract, delta, eps_next, *inst.local_best,
                                    inst.warm_state, {}, cost);
      const Metrics z = evaluate(problem, step.point);
      if (!std::isfinite(z.total)) {
        throw AbortedRun("non-finite objective value in restart engine", {});
      }
      run.events.push_back(
          {tick.step, step.iterations, {run.key.first, run.key.second, tick.k}, z});
      if (z.total < run.best.total) {
        run.best = z;
        run.best_step = tick.step;
        inst.local_best = std::move(step.point);
      }
      inst.iterations += cost;
      inst.restarts += 1;
      inst.eps_current = eps_next;
      inst.warm_state = std::move(step.state);
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < runs.size(); idx = next++) {
      try {
        run_instance(runs[idx]);
      } catch (...) {
        runs[idx].error = std::current_exception();
      }
    }
  };
  const int count = std::max(1, std::min<int>(workers, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const InstanceRun& run : runs) {
    if (run.error) std::rethrow_exception(run.error);
  }

  // Replay restart events in schedule order to rebuild the sequential trace.
  std::vector<const RestartEvent*> events;
  for (const InstanceRun& run : runs) {
    for (const RestartEvent& e : run.events) events.push_back(&e);
  }
  std::sort(events.begin(), events.end(),
            [](const RestartEvent* x, const RestartEvent* y) { return x->step < y->step; });

  TraceRecorder recorder(problem, 0);
  RestartOutcome out;
  Metrics best = start_metrics;
  recorder.start(best);
  for (const RestartEvent* e : events) {
    out.inner_iterations += e->iterations;
    out.restarts += 1;
    if (e->metrics.total < best.total) best = e->metrics;
    recorder.restart_done(out.inner_iterations, out.restarts, e->point, best);
  }

  const InstanceRun* winner = nullptr;
  for (const InstanceRun& run : runs) {
    if (run.best_step < 0) continue;
    if (winner == nullptr || run.best.total < winner->best.total ||
        (run.best.total == winner->best.total && run.best_step < winner->best_step)) {
      winner = &run;
    }
  }
  out.final_point = winner ? *winner->state.local_best : x0;
  for (InstanceRun& run : runs) out.per_instance.emplace(run.key, std::move(run.state));
  out.trace = std::move(recorder.rows());
  return out;
}

DefaultParameters default_parameters(double d1, double d2,
                                     std::optional<double> beta_hint,
                                     ScheduleMode mode) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw InvalidArgument("d1, d2 must be positive");
  DefaultParameters p{};
  p.r = std::exp(-1.0 / d2);
  p.c1 = 2.0;
  p.c2 = 2.0;
  p.b = std::numbers::e;
  const bool use_beta = beta_hint.has_value() && (mode == ScheduleMode::kBetaKnown ||
                                                  mode == ScheduleMode::kBothKnown ||
                                                  mode == ScheduleMode::kRangesKnown);
  p.a = use_beta ? std::exp(p.c1 * *beta_hint / d1) : std::exp(p.c1 / d1);
  return p;
}

double epsilon_dependent_base(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InvalidArgument("epsilon_dependent_base needs eps in (0, 1)");
  }
  return 1.0 + 1.0 / std::log(1.0 / eps);
}

ScheduleCriterion clamped_criterion(ScheduleCriterion criterion, double a,
                                    double b) {
  criterion.clamp_i = std::min(criterion.clamp_i, default_clamp(a));
  criterion.clamp_j = std::min(criterion.clamp_j, default_clamp(b));
  return criterion;
}

}  // namespace restartkit
