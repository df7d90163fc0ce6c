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

// First-order inner solvers. Each takes a radius delta >= d(x0, X*) and a
// target accuracy eps, runs a fixed iteration count N(delta, eps), and is
// exposed as a SolverContract for the restart engines. Gradients on C^n are
// taken with respect to the real inner product Re<., .>.

#ifndef RESTARTKIT_SOLVERS_HPP_
#define RESTARTKIT_SOLVERS_HPP_

#include <cstdint>
#include <functional>
#include <memory>

#include "restartkit/core.hpp"
#include "restartkit/linops.hpp"

namespace restartkit {

using ValueFn = std::function<double(const Vec&)>;
using MapFn = std::function<Vec(const Vec&)>;
// (point, t) -> argmin_z t g(z) + 1/2 |z - point|^2.
using ProxFn = std::function<Vec(const Vec&, double)>;

// Nesterov's accelerated method on an L-smooth f over a convex set Q.

struct SmoothProblem {
  ValueFn value;
  MapFn gradient;
  double lipschitz = 1.0;
  MapFn project;  // P_Q; empty means Q is the whole space
};

std::int64_t nesterov_iterations(double lipschitz, double delta, double eps);

// N iterations from x0. The observer sees x_j for j = 1..N.
SolverStep nesterov_fixed(const SmoothProblem& problem, std::int64_t iterations,
                          const Vec& x0, const InnerObserver& observer = {});

SolverStep nesterov(const SmoothProblem& problem, double delta, double eps,
                    const Vec& x0, const InnerObserver& observer = {});

SolverContract nesterov_contract(SmoothProblem problem);

// Nesterov's method on the smoothing f_mu of a (u, v)-smoothable f: f_mu is
// (u/mu)-smooth and f_mu <= f <= f_mu + v mu.

struct SmoothableProblem {
  // (x, mu) -> gradient of f_mu at x.
  std::function<Vec(const Vec&, double)> smoothed_gradient;
  std::function<double(const Vec&, double)> smoothed_value;  // optional
  double u = 1.0;
  double v = 1.0;
  MapFn project;

  SmoothProblem at(double mu) const;
};

struct SmoothingPlan {
  double mu;
  double lipschitz;
  std::int64_t iterations;
};

// mu = eps/(2v), L = u/mu, N = ceil(2 sqrt(2uv) delta/eps).
SmoothingPlan smoothing_plan(double u, double v, double delta, double eps);

SolverStep nesterov_smoothed(const SmoothableProblem& problem, double delta,
                             double eps, const Vec& x0,
                             const InnerObserver& observer = {});

SolverContract nesterov_smoothed_contract(SmoothableProblem problem);

// Universal fast gradient method for q + g with a nu-Hoelder gradient of q.

struct CompositeProblem {
  ValueFn q_value;
  MapFn q_gradient;
  ValueFn g_value;  // optional; empty means g = 0
  // argmin over Q of t g(z) + 1/2 |z - point|^2; empty means identity.
  ProxFn g_prox;
  double holder_exponent = 1.0;  // nu in [0, 1]
  double holder_constant = 1.0;  // M_nu
  double initial_lipschitz = 1.0;
  int doubling_cap = 60;

  double objective(const Vec& x) const;
};

std::int64_t ufgm_iterations(double holder_exponent, double holder_constant,
                             double delta, double eps);

struct UfgmStats {
  double max_accepted_lipschitz = 0.0;
  std::int64_t backtracking_steps = 0;
};

// Returns the aggregated point y_N.
SolverStep ufgm(const CompositeProblem& problem, double delta, double eps,
                const Vec& x0, const InnerObserver& observer = {},
                UfgmStats* stats = nullptr);

SolverContract ufgm_contract(CompositeProblem problem);

// Primal-dual iteration for f = q + g + h(B .) over Q = {x : A x in C}. The
// h(B .) block and the constraint block are optional.

struct PrimalDualProblem {
  ValueFn g_value;
  ProxFn g_prox;

  ValueFn q_value;  // optional
  MapFn q_gradient;
  double lipschitz_q = 0.0;

  LinearOperatorPtr B;  // optional
  ValueFn h_value;
  ProxFn h_conjugate_prox;   // (w, sigma) -> prox_{sigma h*}(w)
  ValueFn h_conjugate_value;  // optional; used to pick the dual output
  double lipschitz_h = 0.0;
  double norm_B = 0.0;

  LinearOperatorPtr A;  // optional
  MapFn project_C;
  ValueFn support_C;  // optional; sup_{z in C} Re<z, w>
  double norm_A = 0.0;
  double kappa = 0.0;

  bool has_h() const { return B != nullptr; }
  bool has_q() const { return static_cast<bool>(q_gradient); }
  bool constrained() const { return A != nullptr; }

  double objective(const Vec& x) const;
  // kappa * dist(A x, C).
  double gap(const Vec& x) const;
  void validate() const;
};

struct PdSteps {
  double tau = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  std::int64_t iterations = 0;
};

// tau = delta/(kappa L_A + L_h L_B + delta L_q), sigma1 = L_h/(delta L_B),
// sigma2 = kappa/(delta L_A), N = ceil(delta(2 kappa L_A + 2 L_h L_B +
// delta L_q)/eps). A vanishing factor leaves its dual block at zero.
PdSteps pd_step_sizes(const PrimalDualProblem& problem, double delta, double eps);

struct PdState {
  Vec primal;
  Vec dual_1;
  Vec dual_2;  // empty when unconstrained
  Vec ergodic_primal;
  Vec ergodic_dual_1;
  Vec ergodic_dual_2;
  Vec best_primal;
  Vec best_dual_1;
  Vec best_dual_2;
  double best_value = 0.0;
  std::int64_t iteration = 0;
};

using PdObserver = std::function<void(const PdState&)>;

// Runs N iterations with the given step sizes. Warm duals are (y1, y2); empty
// entries start at zero.
PdState pd_iterate(const PrimalDualProblem& problem, const PdSteps& steps,
                   const Vec& x0, const WarmState& warm,
                   const PdObserver& observer = {});

// Sizes steps from (delta, eps) and returns the best ergodic primal average
// with the matching dual as warm state.
SolverStep primal_dual(const PrimalDualProblem& problem, double delta, double eps,
                       const Vec& x0, const WarmState& warm,
                       const InnerObserver& observer = {});

SolverStep pd_unconstrained(const PrimalDualProblem& problem, double delta,
                            double eps, const Vec& x0, const WarmState& warm,
                            const InnerObserver& observer = {});
SolverStep pd_constrained(const PrimalDualProblem& problem, double delta,
                          double eps, const Vec& x0, const WarmState& warm,
                          const InnerObserver& observer = {});

SolverContract primal_dual_contract(std::shared_ptr<const PrimalDualProblem> problem);

// Objective f + g_Q of a primal-dual problem as a ProblemInstance.
ProblemInstance primal_dual_instance(std::shared_ptr<const PrimalDualProblem> problem,
                                     Index dimension);

}  // namespace restartkit

#endif  // RESTARTKIT_SOLVERS_HPP_
