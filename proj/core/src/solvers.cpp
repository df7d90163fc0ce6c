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

#include "restartkit/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace restartkit {
namespace {

void check_tolerances(double delta, double eps) {
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be nonnegative");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
}

Vec project_or_keep(const MapFn& project, Vec x) {
  return project ? project(x) : x;
}

}  // namespace

std::int64_t nesterov_iterations(double lipschitz, double delta, double eps) {
  check_tolerances(delta, eps);
  return ceil_count(delta * std::sqrt(2.0 * lipschitz) / std::sqrt(eps));
}

SolverStep nesterov_fixed(const SmoothProblem& problem, std::int64_t iterations,
                          const Vec& x0, const InnerObserver& observer) {
  if (!problem.gradient) throw ConfigError("Nesterov's method needs a gradient oracle");
  if (!(problem.lipschitz > 0.0)) throw ConfigError("Lipschitz constant must be positive");
  const double inv_l = 1.0 / problem.lipschitz;
  Vec x = x0;
  Vec z = x0;
  Vec weighted = Vec::Zero(x0.size());
  for (std::int64_t j = 0; j < iterations; ++j) {
    const Vec g = problem.gradient(z);
    weighted += (0.5 * static_cast<double>(j + 1)) * g;
    x = project_or_keep(problem.project, z - inv_l * g);
    const Vec v = project_or_keep(problem.project, x0 - inv_l * weighted);
    const double tau = 2.0 / static_cast<double>(j + 3);
    z = tau * v + (1.0 - tau) * x;
    if (observer) observer(j + 1, x);
  }
  return {std::move(x), {}, iterations};
}

SolverStep nesterov(const SmoothProblem& problem, double delta, double eps,
                    const Vec& x0, const InnerObserver& observer) {
  return nesterov_fixed(problem, nesterov_iterations(problem.lipschitz, delta, eps),
                        x0, observer);
}

SolverContract nesterov_contract(SmoothProblem problem) {
  SolverContract c;
  const double lipschitz = problem.lipschitz;
  c.run = [problem = std::move(problem)](double delta, double eps, const Vec& x0,
                                         const WarmState&, const InnerObserver& obs) {
    return nesterov(problem, delta, eps, x0, obs);
  };
  c.cost_bound = [lipschitz](double delta, double eps) {
    return nesterov_iterations(lipschitz, delta, eps);
  };
  c.cost_exponents = CostExponents{std::sqrt(2.0 * lipschitz), 1.0, 0.5};
  return c;
}

SmoothProblem SmoothableProblem::at(double mu) const {
  SmoothProblem p;
  auto grad = smoothed_gradient;
  p.gradient = [grad, mu](const Vec& x) { return grad(x, mu); };
  if (smoothed_value) {
    auto value = smoothed_value;
    p.value = [value, mu](const Vec& x) { return value(x, mu); };
  }
  p.lipschitz = u / mu;
  p.project = project;
  return p;
}

SmoothingPlan smoothing_plan(double u, double v, double delta, double eps) {
  check_tolerances(delta, eps);
  if (!(u > 0.0) || !(v > 0.0)) throw ConfigError("smoothing constants u, v must be positive");
  const double mu = eps / (2.0 * v);
  return {mu, u / mu, ceil_count(2.0 * std::sqrt(2.0 * u * v) * delta / eps)};
}

SolverStep nesterov_smoothed(const SmoothableProblem& problem, double delta,
                             double eps, const Vec& x0,
                             const InnerObserver& observer) {
  if (!problem.smoothed_gradient) throw ConfigError("smoothing needs a gradient oracle");
  const SmoothingPlan plan = smoothing_plan(problem.u, problem.v, delta, eps);
  return nesterov_fixed(problem.at(plan.mu), plan.iterations, x0, observer);
}

SolverContract nesterov_smoothed_contract(SmoothableProblem problem) {
  SolverContract c;
  const double u = problem.u;
  const double v = problem.v;
  c.run = [problem = std::move(problem)](double delta, double eps, const Vec& x0,
                                         const WarmState&, const InnerObserver& obs) {
    return nesterov_smoothed(problem, delta, eps, x0, obs);
  };
  c.cost_bound = [u, v](double delta, double eps) {
    return smoothing_plan(u, v, delta, eps).iterations;
  };
  c.cost_exponents = CostExponents{2.0 * std::sqrt(2.0 * u * v), 1.0, 1.0};
  return c;
}

double CompositeProblem::objective(const Vec& x) const {
  return q_value(x) + (g_value ? g_value(x) : 0.0);
}

std::int64_t ufgm_iterations(double holder_exponent, double holder_constant,
                             double delta, double eps) {
  check_tolerances(delta, eps);
  const double nu = holder_exponent;
  if (!(nu >= 0.0 && nu <= 1.0)) throw ConfigError("Hoelder exponent must lie in [0, 1]");
  const double d = 1.0 + 3.0 * nu;
  return ceil_count(std::pow(2.0, (2.0 + 4.0 * nu) / d) *
                    std::pow(holder_constant, 2.0 / d) *
                    std::pow(delta, (2.0 + 2.0 * nu) / d) / std::pow(eps, 2.0 / d));
}

SolverStep ufgm(const CompositeProblem& problem, double delta, double eps,
                const Vec& x0, const InnerObserver& observer, UfgmStats* stats) {
  if (!problem.q_value || !problem.q_gradient) {
    throw ConfigError("UFGM needs value and gradient oracles for q");
  }
  if (!(problem.initial_lipschitz > 0.0)) throw ConfigError("initial Lipschitz guess must be positive");
  const std::int64_t iterations =
      ufgm_iterations(problem.holder_exponent, problem.holder_constant, delta, eps);
  auto prox = [&](const Vec& point, double t) {
    return problem.g_prox ? problem.g_prox(point, t) : point;
  };

  double big_a = 0.0;
  double lipschitz = problem.initial_lipschitz;
  Vec y = x0;
  Vec v = prox(x0, 0.0);
  Vec accumulated = Vec::Zero(x0.size());
  for (std::int64_t k = 0; k < iterations; ++k) {
    int doubling = -1;
    double trial = 0.0;
    double a = 0.0;
    Vec x;
    Vec gx;
    Vec y_next;
    while (true) {
      ++doubling;
      if (doubling > problem.doubling_cap) {
        throw DivergedError("UFGM backtracking exceeded " +
                            std::to_string(problem.doubling_cap) + " doublings");
      }
      trial = std::ldexp(lipschitz, doubling);
      a = (1.0 + std::sqrt(1.0 + 4.0 * trial * big_a)) / (2.0 * trial);
      const double tau = a / (big_a + a);
      x = tau * v + (1.0 - tau) * y;
      gx = problem.q_gradient(x);
      const double qx = problem.q_value(x);
      const Vec x_hat = prox(v - a * gx, a);
      y_next = tau * x_hat + (1.0 - tau) * y;
      const Vec step = y_next - x;
      const double model = qx + real_inner(gx, step) + 0.5 * trial * step.squaredNorm() +
                           0.5 * eps * tau;
      if (stats) ++stats->backtracking_steps;
      if (problem.q_value(y_next) <= model) break;
    }
    if (stats && trial > stats->max_accepted_lipschitz) {
      stats->max_accepted_lipschitz = trial;
    }
    accumulated += a * gx;
    big_a += a;
    y = std::move(y_next);
    lipschitz = 0.5 * trial;
    v = prox(x0 - accumulated, big_a);
    if (observer) observer(k + 1, y);
  }
  return {std::move(y), {}, iterations};
}

SolverContract ufgm_contract(CompositeProblem problem) {
  SolverContract c;
  const double nu = problem.holder_exponent;
  const double m = problem.holder_constant;
  c.run = [problem = std::move(problem)](double delta, double eps, const Vec& x0,
                                         const WarmState&, const InnerObserver& obs) {
    return ufgm(problem, delta, eps, x0, obs);
  };
  c.cost_bound = [nu, m](double delta, double eps) {
    return ufgm_iterations(nu, m, delta, eps);
  };
  const double d = 1.0 + 3.0 * nu;
  c.cost_exponents = CostExponents{
      std::pow(2.0, (2.0 + 4.0 * nu) / d) * std::pow(m, 2.0 / d),
      (2.0 + 2.0 * nu) / d, 2.0 / d};
  return c;
}

double PrimalDualProblem::objective(const Vec& x) const {
  double value = g_value(x);
  if (has_q()) value += q_value(x);
  if (has_h()) value += h_value(B->apply(x));
  return value;
}

double PrimalDualProblem::gap(const Vec& x) const {
  if (!constrained()) return 0.0;
  const Vec ax = A->apply(x);
  return kappa * (ax - project_C(ax)).norm();
}

void PrimalDualProblem::validate() const {
  if (!g_value || !g_prox) throw ConfigError("primal-dual needs g and its prox");
  if (static_cast<bool>(q_gradient) != static_cast<bool>(q_value)) {
    throw ConfigError("q needs both value and gradient oracles");
  }
  if (has_q() && !(lipschitz_q >= 0.0)) throw ConfigError("L_q must be nonnegative");
  if (has_h()) {
    if (!h_value || !h_conjugate_prox) throw ConfigError("h needs value and conjugate prox oracles");
    if (!(norm_B > 0.0)) throw ConfigError("L_B = 0 with a nonzero h block");
    if (!(lipschitz_h >= 0.0)) throw ConfigError("L_h must be nonnegative");
  }
  if (constrained()) {
    if (!project_C) throw ConfigError("constraint needs a projection onto C");
    if (!(kappa > 0.0)) throw ConfigError("feasibility weight kappa must be positive");
    if (!(norm_A >= 0.0)) throw ConfigError("L_A must be nonnegative");
  }
}

PdSteps pd_step_sizes(const PrimalDualProblem& problem, double delta, double eps) {
  check_tolerances(delta, eps);
  const double fa = problem.constrained() ? problem.kappa * problem.norm_A : 0.0;
  const double fh = problem.has_h() ? problem.lipschitz_h * problem.norm_B : 0.0;
  const double fq = problem.has_q() ? delta * problem.lipschitz_q : 0.0;
  const double denom = fa + fh + fq;
  PdSteps s;
  if (delta == 0.0 || denom == 0.0) return s;
  s.tau = delta / denom;
  s.sigma1 = fh > 0.0 ? problem.lipschitz_h / (delta * problem.norm_B) : 0.0;
  s.sigma2 = fa > 0.0 ? problem.kappa / (delta * problem.norm_A) : 0.0;
  s.iterations = ceil_count(delta * (2.0 * fa + 2.0 * fh + fq) / eps);
  return s;
}

PdState pd_iterate(const PrimalDualProblem& problem, const PdSteps& steps,
                   const Vec& x0, const WarmState& warm, const PdObserver& observer) {
  problem.validate();
  const bool h_active = problem.has_h() && steps.sigma1 > 0.0;
  const bool c_active = problem.constrained() && steps.sigma2 > 0.0;

  PdState s;
  s.primal = x0;
  if (problem.has_h()) {
    const bool use_warm = h_active && !warm.empty() && warm[0].size() == problem.B->out_dim();
    s.dual_1 = use_warm ? warm[0] : Vec::Zero(problem.B->out_dim());
  }
  if (problem.constrained()) {
    const bool use_warm = c_active && warm.size() > 1 && warm[1].size() == problem.A->out_dim();
    s.dual_2 = use_warm ? warm[1] : Vec::Zero(problem.A->out_dim());
  }
  s.ergodic_primal = Vec::Zero(x0.size());
  s.ergodic_dual_1 = Vec::Zero(s.dual_1.size());
  s.ergodic_dual_2 = Vec::Zero(s.dual_2.size());
  s.best_primal = x0;
  s.best_dual_1 = s.dual_1;
  s.best_dual_2 = s.dual_2;
  s.best_value = std::numeric_limits<double>::infinity();

  // The dual output maximizes the Lagrangian at the best primal average; it
  // needs h* and the support function of C for the active blocks.
  const bool score_duals = (!h_active || problem.h_conjugate_value) &&
                           (!c_active || problem.support_C);
  Vec best_b;  // B X~
  Vec best_a;  // A X~
  auto dual_score = [&](const Vec& y1, const Vec& y2) {
    double score = 0.0;
    if (h_active) score += real_inner(best_b, y1) - problem.h_conjugate_value(y1);
    if (c_active) score += real_inner(best_a, y2) - problem.support_C(y2);
    return score;
  };

  const double tau = steps.tau;
  for (std::int64_t j = 1; j <= steps.iterations; ++j) {
    Vec w = s.primal;
    if (h_active) w -= tau * problem.B->adjoint(s.dual_1);
    if (c_active) w -= tau * problem.A->adjoint(s.dual_2);
    if (problem.has_q()) w -= tau * problem.q_gradient(s.primal);
    Vec next = problem.g_prox(w, tau);
    const Vec extrapolated = 2.0 * next - s.primal;
    if (h_active) {
      s.dual_1 = problem.h_conjugate_prox(
          s.dual_1 + steps.sigma1 * problem.B->apply(extrapolated), steps.sigma1);
    }
    if (c_active) {
      const Vec u = problem.A->apply(extrapolated);
      const double sigma = steps.sigma2;
      s.dual_2 = s.dual_2 + sigma * u - sigma * problem.project_C(s.dual_2 / sigma + u);
    }
    s.primal = std::move(next);
    s.iteration = j;

    const double inv = 1.0 / static_cast<double>(j);
    s.ergodic_primal += inv * (s.primal - s.ergodic_primal);
    if (problem.has_h()) s.ergodic_dual_1 += inv * (s.dual_1 - s.ergodic_dual_1);
    if (problem.constrained()) s.ergodic_dual_2 += inv * (s.dual_2 - s.ergodic_dual_2);

    const Vec& avg = s.ergodic_primal;
    double value = problem.g_value(avg);
    if (problem.has_q()) value += problem.q_value(avg);
    Vec b_avg;
    Vec a_avg;
    if (problem.has_h()) {
      b_avg = problem.B->apply(avg);
      value += problem.h_value(b_avg);
    }
    if (problem.constrained()) {
      a_avg = problem.A->apply(avg);
      value += problem.kappa * (a_avg - problem.project_C(a_avg)).norm();
    }
    const bool improved = value < s.best_value;
    if (improved) {
      s.best_value = value;
      s.best_primal = avg;
      best_b = std::move(b_avg);
      best_a = std::move(a_avg);
    }
    if (score_duals) {
      if (j == 1 || dual_score(s.ergodic_dual_1, s.ergodic_dual_2) >
                        dual_score(s.best_dual_1, s.best_dual_2)) {
        s.best_dual_1 = s.ergodic_dual_1;
        s.best_dual_2 = s.ergodic_dual_2;
      }
    } else if (improved) {
      s.best_dual_1 = s.ergodic_dual_1;
      s.best_dual_2 = s.ergodic_dual_2;
    }
    if (observer) observer(s);
  }
  return s;
}

SolverStep primal_dual(const PrimalDualProblem& problem, double delta, double eps,
                       const Vec& x0, const WarmState& warm,
                       const InnerObserver& observer) {
  const PdSteps steps = pd_step_sizes(problem, delta, eps);
  if (steps.iterations == 0) {
    problem.validate();
    return {x0, warm, 0};
  }
  PdObserver bridge;
  if (observer) {
    bridge = [&](const PdState& s) { observer(s.iteration, s.best_primal); };
  }
  PdState s = pd_iterate(problem, steps, x0, warm, bridge);
  WarmState duals{std::move(s.best_dual_1), std::move(s.best_dual_2)};
  return {std::move(s.best_primal), std::move(duals), steps.iterations};
}

SolverStep pd_unconstrained(const PrimalDualProblem& problem, double delta,
                            double eps, const Vec& x0, const WarmState& warm,
                            const InnerObserver& observer) {
  if (problem.constrained()) throw ConfigError("pd_unconstrained got a constrained problem");
  return primal_dual(problem, delta, eps, x0, warm, observer);
}

SolverStep pd_constrained(const PrimalDualProblem& problem, double delta,
                          double eps, const Vec& x0, const WarmState& warm,
                          const InnerObserver& observer) {
  if (!problem.constrained()) throw ConfigError("pd_constrained needs a constraint block");
  return primal_dual(problem, delta, eps, x0, warm, observer);
}

SolverContract primal_dual_contract(std::shared_ptr<const PrimalDualProblem> problem) {
  problem->validate();
  SolverContract c;
  c.run = [problem](double delta, double eps, const Vec& x0, const WarmState& warm,
                    const InnerObserver& obs) {
    return primal_dual(*problem, delta, eps, x0, warm, obs);
  };
  c.cost_bound = [problem](double delta, double eps) {
    return pd_step_sizes(*problem, delta, eps).iterations;
  };
  if (!problem->has_q() || problem->lipschitz_q == 0.0) {
    const double fa = problem->constrained() ? problem->kappa * problem->norm_A : 0.0;
    const double fh = problem->has_h() ? problem->lipschitz_h * problem->norm_B : 0.0;
    c.cost_exponents = CostExponents{2.0 * (fa + fh), 1.0, 1.0};
  }
  return c;
}

ProblemInstance primal_dual_instance(std::shared_ptr<const PrimalDualProblem> problem,
                                     Index dimension) {
  ProblemInstance p;
  p.dimension = dimension;
  p.objective = [problem](const Vec& x) { return problem->objective(x); };
  if (problem->constrained()) {
    p.feasibility_gap = [problem](const Vec& x) { return problem->gap(x); };
  }
  return p;
}

}  // namespace restartkit
