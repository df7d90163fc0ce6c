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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "designated_problems.hpp"
#include "restartkit/problems.hpp"
#include "restartkit/restart.hpp"
#include "restartkit/solvers.hpp"
#include "test_support.hpp"

namespace restartkit {
namespace {

using testing::real_vec;

constexpr double kE = std::numbers::e;

struct Setup {
  ProblemInstance problem;
  SolverContract contract;
};

Setup sharp_identity(Index n) {
  auto p = testing::sharp_operator_problem(Eigen::MatrixXcd::Identity(n, n));
  return {primal_dual_instance(p, n), primal_dual_contract(p)};
}

RestartConfig grid_config(ScheduleMode mode, std::int64_t t) {
  RestartConfig c;
  c.criterion.mode = mode;
  c.total_inner_iterations = t;
  c.criterion = clamped_criterion(c.criterion, c.a, c.b);
  return c;
}

double trace_total(const TraceRecord& r) { return r.objective_value + r.feasibility_gap; }

void expect_monotone(const std::vector<TraceRecord>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_LT(trace[i - 1].inner_iteration, trace[i].inner_iteration);
    EXPECT_LE(trace_total(trace[i]), trace_total(trace[i - 1]));
  }
}

TEST(DeltaUpdate, Examples) {
  for (double beta : {1.0, 2.0, 5.0}) {
    EXPECT_DOUBLE_EQ(delta_update(2.0, beta, 1.0, kE, 1.0), 1.0);
  }
  EXPECT_DOUBLE_EQ(delta_update(1.0, 1.0, 1.0, kE, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(delta_update(8.0, 2.0, 1.0, kE, 1.0), 0.5);
}

TEST(DeltaUpdate, LargeRatioUsesSmallerExponent) {
  // 2 eps / alpha = 4 > 1; min(b / beta_j, 1 / beta0) = min(e / 4, 1/2) = 1/2.
  EXPECT_DOUBLE_EQ(delta_update(0.5, 4.0, 2.0, kE, 1.0), 2.0);
}

TEST(RestartKnown, SharpNormThreeRestarts) {
  const auto p = testing::sharp_norm_problem(2);
  const auto problem = primal_dual_instance(p, 2);
  const auto contract = primal_dual_contract(p);
  const Vec x0 = real_vec({0.6, 0.8});
  const auto out = restart_known(problem, contract, x0, 1.0, 1.0, 1.0, 1.0 / kE, 3);
  EXPECT_LE(problem.total(out.final_point), std::exp(-3.0));
  EXPECT_EQ(out.restarts, 3);
}

TEST(RestartKnown, ZeroRestartsReturnsStart) {
  const auto s = sharp_identity(3);
  const Vec x0 = real_vec({0.1, -0.2, 0.3});
  const auto out = restart_known(s.problem, s.contract, x0, 1.0, 1.0, 1.0, 0.5, 0);
  EXPECT_EQ(out.final_point, x0);
  ASSERT_EQ(out.trace.size(), 1U);
  EXPECT_EQ(out.trace[0].inner_iteration, 0);
  EXPECT_EQ(out.inner_iterations, 0);
}

TEST(RestartKnown, MeetsGuaranteeOnSharpOperator) {
  const auto s = sharp_identity(4);
  const Vec x0 = real_vec({0.5, -0.5, 0.5, 0.4});
  const double eps0 = s.problem.total(x0);
  for (std::int64_t t : {1, 4, 10}) {
    const auto out = restart_known(s.problem, s.contract, x0, eps0, 1.0, 1.0, 1.0 / kE, t);
    EXPECT_LE(s.problem.total(out.final_point),
              eps0 * std::pow(1.0 / kE, static_cast<double>(t)) * (1.0 + 1e-9));
    expect_monotone(out.trace);
  }
}

TEST(RestartKnown, RejectsBadConstants) {
  const auto s = sharp_identity(2);
  const Vec x0 = real_vec({0.1, 0.1});
  EXPECT_THROW(restart_known(s.problem, s.contract, x0, 1.0, 0.0, 1.0, 0.5, 1),
               InvalidArgument);
  EXPECT_THROW(restart_known(s.problem, s.contract, x0, 1.0, 1.0, 1.0, 1.5, 1),
               InvalidArgument);
}

TEST(RestartKnown, NonFiniteObjectiveAborts) {
  auto s = sharp_identity(2);
  const auto base = s.problem.objective;
  s.problem.objective = [base](const Vec& x) {
    const double v = base(x);
    return v < 0.05 ? std::nan("") : v;
  };
  const Vec x0 = real_vec({0.6, 0.8});
  try {
    restart_known(s.problem, s.contract, x0, 1.0, 1.0, 1.0, 1.0 / kE, 30);
    FAIL() << "expected an aborted run";
  } catch (const AbortedRun& e) {
    EXPECT_FALSE(e.partial_trace.empty());
  }
}

TEST(RestartGrid, FirstTripleIdlesWhenCostExceedsOne) {
  const auto s = sharp_identity(3);
  const Vec x0 = real_vec({0.3, 0.2, 0.1});
  RestartConfig c = grid_config(ScheduleMode::kBothUnknown, 1);
  c.eps0 = s.problem.total(x0);
  ASSERT_GT(s.contract.cost_bound(delta_update(1.0, 1.0, 1.0, c.b, c.eps0), c.r * c.eps0), 1);
  const auto out = restart_grid(s.problem, s.contract, x0, c);
  EXPECT_EQ(out.restarts, 0);
  EXPECT_EQ(out.final_point, x0);
}

TEST(RestartGrid, BothKnownMatchesKnownScheme) {
  const auto p = testing::sharp_norm_problem(2);
  const auto problem = primal_dual_instance(p, 2);
  const auto contract = primal_dual_contract(p);
  const Vec x0 = real_vec({0.6, 0.8});
  RestartConfig c = grid_config(ScheduleMode::kBothKnown, 60);
  c.eps0 = 1.0;
  c.checkpoint_stride = 0;
  const auto grid = restart_grid(problem, contract, x0, c);
  ASSERT_GT(grid.restarts, 0);
  const auto known =
      restart_known(problem, contract, x0, 1.0, 1.0, 1.0, c.r, grid.restarts);
  EXPECT_EQ(problem.total(grid.final_point), problem.total(known.final_point));
  EXPECT_EQ(grid.inner_iterations, known.inner_iterations);
}

TEST(RestartGrid, BudgetAndInstanceCounters) {
  const auto inst = gen_gaussian_qcbp(64, 32, 4, 1e-4, 5);
  const auto setup = qcbp_problem(inst);
  const auto contract = primal_dual_contract(setup.solver);
  RestartConfig c = grid_config(ScheduleMode::kBothUnknown, 1500);
  c.alpha0 = setup.alpha0;
  c.eps0 = setup.problem.total(setup.initial_point);
  c.checkpoint_stride = 7;
  const auto out = restart_grid(setup.problem, contract, setup.initial_point, c);
  EXPECT_LE(out.inner_iterations, c.total_inner_iterations);
  for (const auto& [key, state] : out.per_instance) {
    EXPECT_LE(state.iterations, state.max_k);
    EXPECT_GT(state.eps_current, 0.0);
    EXPECT_NEAR(state.eps_current,
                std::max(c.eps0 * std::pow(c.r, static_cast<double>(state.restarts)),
                         c.eps_floor),
                1e-12 * c.eps0);
  }
  expect_monotone(out.trace);
}

TEST(RestartGrid, ReplayIsBitIdentical) {
  const auto inst = gen_gaussian_qcbp(64, 32, 4, 1e-4, 9);
  const auto setup = qcbp_problem(inst);
  const auto contract = primal_dual_contract(setup.solver);
  RestartConfig c = grid_config(ScheduleMode::kBetaKnown, 800);
  c.alpha0 = setup.alpha0;
  c.eps0 = setup.problem.total(setup.initial_point);
  c.checkpoint_stride = 1;
  const auto a = restart_grid(setup.problem, contract, setup.initial_point, c);
  const auto b = restart_grid(setup.problem, contract, setup.initial_point, c);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.final_point, b.final_point);
}

TEST(RestartGrid, ParallelMatchesSequentialInstanceLocal) {
  const auto inst = gen_gaussian_qcbp(64, 32, 4, 1e-4, 11);
  const auto setup = qcbp_problem(inst);
  const auto contract = primal_dual_contract(setup.solver);
  RestartConfig c = grid_config(ScheduleMode::kBothUnknown, 1200);
  c.alpha0 = setup.alpha0;
  c.eps0 = setup.problem.total(setup.initial_point);
  c.start_policy = StartPolicy::kInstanceLocal;
  c.checkpoint_stride = 0;
  const auto seq = restart_grid(setup.problem, contract, setup.initial_point, c);
  for (int workers : {1, 2, 4}) {
    const auto par =
        restart_grid_parallel(setup.problem, contract, setup.initial_point, c, workers);
    EXPECT_EQ(setup.problem.total(par.final_point), setup.problem.total(seq.final_point));
    EXPECT_EQ(par.final_point, seq.final_point);
    EXPECT_EQ(par.inner_iterations, seq.inner_iterations);
    EXPECT_EQ(par.restarts, seq.restarts);
    EXPECT_EQ(par.trace, seq.trace);
  }
}

TEST(RestartGrid, ParallelNeedsInstanceLocal) {
  const auto s = sharp_identity(2);
  RestartConfig c = grid_config(ScheduleMode::kBothUnknown, 10);
  EXPECT_THROW(restart_grid_parallel(s.problem, s.contract, real_vec({0.1, 0.1}), c, 2),
               ConfigError);
}

TEST(RestartGrid, InvalidConfigurations) {
  const auto s = sharp_identity(2);
  const Vec x0 = real_vec({0.1, 0.1});
  RestartConfig c = grid_config(ScheduleMode::kRangesKnown, 10);
  EXPECT_THROW(restart_grid(s.problem, s.contract, x0, c), ConfigError);
  c = grid_config(ScheduleMode::kBothUnknown, 10);
  c.a = 1.0;
  EXPECT_THROW(restart_grid(s.problem, s.contract, x0, c), ConfigError);
  c = grid_config(ScheduleMode::kBothUnknown, 10);
  c.beta0 = 0.5;
  EXPECT_THROW(restart_grid(s.problem, s.contract, x0, c), ConfigError);
}

TEST(RestartGrid, ReachesTargetWithinCountingBudget) {
  // alpha = alpha0 = 1 lies on the grid; the budget is 8 tau with tau = K(eps).
  const auto s = sharp_identity(4);
  const Vec x0 = real_vec({0.5, -0.5, 0.5, 0.4});
  RestartConfig c = grid_config(ScheduleMode::kBothUnknown, 0);
  c.eps0 = s.problem.total(x0);
  const double eps = 1e-6;
  const auto k_eps = predict_total_cost(s.contract, 1.0, 1.0, 1.0, c.b, c.r, c.eps0, eps);
  c.total_inner_iterations = 8 * k_eps;
  const auto out = restart_grid(s.problem, s.contract, x0, c);
  EXPECT_LE(s.problem.total(out.final_point), eps);
}

TEST(DefaultParameters, Examples) {
  const auto p = default_parameters(1.0, 1.0, 1.0, ScheduleMode::kBetaKnown);
  EXPECT_DOUBLE_EQ(p.r, std::exp(-1.0));
  EXPECT_DOUBLE_EQ(p.a, std::exp(2.0));
  EXPECT_DOUBLE_EQ(p.b, kE);
  EXPECT_EQ(p.c1, 2.0);
  EXPECT_EQ(p.c2, 2.0);
  EXPECT_DOUBLE_EQ(default_parameters(1.0, 0.5, std::nullopt, ScheduleMode::kBothUnknown).r,
                   std::exp(-2.0));
  EXPECT_DOUBLE_EQ(default_parameters(2.0, 1.0, 3.0, ScheduleMode::kBetaKnown).a,
                   std::exp(3.0));
  EXPECT_DOUBLE_EQ(default_parameters(2.0, 1.0, 3.0, ScheduleMode::kBothUnknown).a, kE);
}

TEST(EpsilonDependentBase, Examples) {
  EXPECT_NEAR(epsilon_dependent_base(std::exp(-1.0)), 2.0, 1e-12);
  EXPECT_NEAR(epsilon_dependent_base(std::exp(-10.0)), 1.1, 1e-12);
  double prev = epsilon_dependent_base(0.5);
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const double b = epsilon_dependent_base(eps);
    EXPECT_LT(b, prev);
    EXPECT_GT(b, 1.0);
    prev = b;
  }
  EXPECT_THROW(epsilon_dependent_base(1.0), InvalidArgument);
  EXPECT_THROW(epsilon_dependent_base(0.0), InvalidArgument);
}

}  // namespace
}  // namespace restartkit
