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

// End-to-end acceptance checks. `restartkit_acceptance --criterion N` runs one
// check; without arguments all ten run. Each prints one PASS/FAIL line and the
// exit status is nonzero if any check failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "designated_problems.hpp"
#include "experiment.hpp"
#include "restartkit/linops.hpp"
#include "restartkit/problems.hpp"
#include "restartkit/prox.hpp"
#include "restartkit/restart.hpp"
#include "restartkit/schedule.hpp"
#include "restartkit/solvers.hpp"
#include "test_support.hpp"

namespace restartkit {
namespace {

using testing::TestRng;
using tools::ExperimentConfig;
using tools::Scheme;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

double log_uniform(TestRng& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

// First trace row whose f + g_Q is at most target, or -1.
std::int64_t first_below(const std::vector<TraceRecord>& trace, double target) {
  for (const auto& row : trace) {
    if (row.objective_value + row.feasibility_gap <= target) return row.inner_iteration;
  }
  return -1;
}

// 1. Accelerated gradient envelope on 1/2 |x|^2.
Verdict nesterov_envelope() {
  Verdict v;
  SmoothProblem p;
  p.value = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  p.gradient = [](const Vec& x) { return x; };
  p.lipschitz = 1.0;
  TestRng rng(1);
  double worst = -1.0;
  for (int trial = 0; trial < 5; ++trial) {
    Vec x0 = rng.real_vector(10);
    x0 /= x0.norm();
    nesterov_fixed(p, 200, x0, [&](std::int64_t k, const Vec& x) {
      const double kd = static_cast<double>(k);
      worst = std::max(worst, p.value(x) - (2.0 / (kd * (kd + 1.0)) + 1e-12));
    });
  }
  v.require(worst <= 0.0, "envelope exceeded by " + fmt(worst));
  v.detail += (v.detail.empty() ? "" : "; ") + std::string("max excess ") + fmt(worst);
  return v;
}

// 2. Each solver meets its accuracy guarantee with the exact iteration count.
Verdict solver_contracts() {
  Verdict v;
  TestRng rng(2);
  int checked = 0;
  auto check = [&](const std::string& name, double gap, double eps, std::int64_t got,
                   std::int64_t expected) {
    ++checked;
    if (gap > eps) v.require(false, name + " missed eps " + fmt(eps) + " by " + fmt(gap - eps));
    if (got != expected) {
      v.require(false, name + " ran " + std::to_string(got) + " iterations, formula " +
                           std::to_string(expected));
    }
  };

  for (int trial = 0; trial < 50; ++trial) {
    const auto q = testing::diagonal_quadratic(10, 1000 + trial, trial % 2 == 1);
    const double delta = rng.uniform(0.1, 2.0);
    const double eps = log_uniform(rng, 1e-4, 1.0);
    const Vec x0 = q.solution.minimizer + rng.in_ball(10, delta, true);
    const auto step = nesterov(q.problem, delta, eps, x0);
    check("nesterov", q.problem.value(step.point) - q.solution.optimum, eps, step.iterations,
          static_cast<std::int64_t>(std::ceil(delta * std::sqrt(2.0) / std::sqrt(eps))));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::shifted_l1(8, 2000 + trial);
    const double delta = rng.uniform(0.1, 2.0);
    const double eps = log_uniform(rng, 1e-3, 1.0);
    const Vec x0 = c.solution.minimizer + rng.in_ball(8, delta, true);
    const auto step = nesterov_smoothed(c.problem, delta, eps, x0);
    check("smoothing", c.objective(step.point) - c.solution.optimum, eps, step.iterations,
          static_cast<std::int64_t>(std::ceil(2.0 * std::sqrt(2.0 * 1.0 * 4.0) * delta / eps)));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::holder_three_halves(3, 3000 + trial);
    const double delta = rng.uniform(0.1, 2.0);
    const double eps = log_uniform(rng, 1e-4, 1.0);
    const Vec x0 = c.solution.minimizer + rng.in_ball(3, delta, false);
    const auto step = ufgm(c.problem, delta, eps, x0);
    // nu = 1/2: exponents (2 + 4 nu)/(1 + 3 nu) = 1.6, 2/(1 + 3 nu) = 0.8,
    // (2 + 2 nu)/(1 + 3 nu) = 1.2.
    const double n = std::pow(2.0, 1.6) * std::pow(std::sqrt(2.0), 0.8) *
                     std::pow(delta, 1.2) / std::pow(eps, 0.8);
    check("ufgm", c.problem.objective(step.point) - c.solution.optimum, eps, step.iterations,
          static_cast<std::int64_t>(std::ceil(n)));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::pd_unconstrained_case(20, 10, 4000 + trial);
    const double delta = rng.uniform(0.1, 2.0);
    const double eps = log_uniform(rng, 1e-3, 1.0);
    const Vec x0 = c.solution.minimizer + rng.in_ball(20, delta, true);
    const auto step = pd_unconstrained(*c.problem, delta, eps, x0, {});
    const double lb = c.problem->norm_B;
    check("primal-dual", c.problem->objective(step.point) - c.solution.optimum, eps,
          step.iterations,
          static_cast<std::int64_t>(std::ceil(delta * (2.0 * lb + delta) / eps)));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::pd_constrained_case(16, rng.uniform(0.2, 2.0), 5000 + trial);
    const double delta = rng.uniform(0.1, 2.0);
    const double eps = log_uniform(rng, 1e-3, 1.0);
    const Vec x0 = c.solution.minimizer + rng.in_ball(16, delta, true);
    const auto step = pd_constrained(*c.problem, delta, eps, x0, {});
    const double total = c.problem->objective(step.point) + c.problem->gap(step.point);
    check("constrained primal-dual", total - c.solution.optimum, eps, step.iterations,
          static_cast<std::int64_t>(std::ceil(delta * 2.0 * 4.0 / eps)));
  }
  if (v.pass) v.detail = std::to_string(checked) + " triples";
  return v;
}

// 3. Known-constant restarts on the exactly sharp f = |x|_2.
Verdict known_constants() {
  Verdict v;
  const Index n = 6;
  const auto p = testing::sharp_norm_problem(n);
  const auto problem = primal_dual_instance(p, n);
  const auto contract = primal_dual_contract(p);
  TestRng rng(3);
  Vec x0 = rng.complex_vector(n);
  x0 /= x0.norm();
  const double eps0 = problem.total(x0);
  const double r = std::exp(-1.0);
  const std::int64_t t = 20;
  const auto out = restart_known(problem, contract, x0, eps0, 1.0, 1.0, r, t);
  const double final_value = problem.total(out.final_point);
  v.require(final_value <= std::exp(-20.0) * eps0 * (1.0 + 1e-6),
            "f(x_t) = " + fmt(final_value));
  // d2 = d1/beta: T <= s + C 2^{d1/beta} / (alpha^{d1/beta} r^{d2}) s.
  const double c = contract.cost_exponents->constant;
  const double s = std::ceil(std::log(eps0 / (std::exp(-20.0) * eps0)) / std::log(1.0 / r) -
                             1e-12);
  const double bound = s + c * 2.0 / r * s;
  v.require(static_cast<double>(out.inner_iterations) <= bound,
            "iterations " + std::to_string(out.inner_iterations) + " > bound " + fmt(bound));
  if (v.pass) {
    v.detail = "f = " + fmt(final_value) + ", iterations " +
               std::to_string(out.inner_iterations) + " <= " + fmt(bound);
  }
  return v;
}

// 4. Schedule counting bound and prefix properties of phi.
Verdict schedule_combinatorics() {
  Verdict v;
  ScheduleCriterion crit;
  crit.mode = ScheduleMode::kBothUnknown;
  crit.c1 = 2.0;
  crit.c2 = 2.0;
  for (double tau : {1e2, 1e3, 1e4}) {
    // Brute force over |i| + 1 <= sqrt(tau), j + 1 <= sqrt(tau).
    std::int64_t count = 0;
    const int reach = static_cast<int>(std::sqrt(tau)) + 1;
    for (int i = -reach; i <= reach; ++i) {
      for (int j = 0; j <= reach; ++j) {
        const double w = (std::abs(i) + 1.0) * (std::abs(i) + 1.0) * (j + 1.0) * (j + 1.0);
        if (w <= tau) count += static_cast<std::int64_t>(std::floor(tau / w));
      }
    }
    v.require(count <= static_cast<std::int64_t>(8.0 * tau),
              "tau " + fmt(tau) + ": count " + std::to_string(count) + " > 8 tau");
    v.require(sublevel_count(crit, tau) == count,
              "sublevel_count disagrees with brute force at tau " + fmt(tau));
  }
  AssignmentEnumerator phi(crit);
  std::set<GridPoint> seen;
  double previous = 0.0;
  for (int step = 0; step < 10000; ++step) {
    const GridPoint p = phi.next_point();
    const double h = h_value(crit, p);
    if (!seen.insert(p).second) {
      v.require(false, "phi repeats a point at step " + std::to_string(step + 1));
      break;
    }
    if (h < previous) {
      v.require(false, "h decreases at step " + std::to_string(step + 1));
      break;
    }
    previous = h;
  }
  if (v.pass) v.detail = "10^4 prefix injective, h-monotone; counts <= 8 tau";
  return v;
}

// 5. Grid-search cost grows like log(1/eps) on a sharp beta = 1 problem.
Verdict logarithmic_scaling() {
  Verdict v;
  const Index n = 8;
  const auto p = testing::sharp_operator_problem(Eigen::MatrixXcd::Identity(n, n));
  const auto problem = primal_dual_instance(p, n);
  const auto contract = primal_dual_contract(p);
  TestRng rng(5);
  Vec x0 = rng.complex_vector(n);
  x0 *= 10.0 / x0.norm();

  RestartConfig c;
  c.criterion.mode = ScheduleMode::kBothUnknown;
  c.criterion = clamped_criterion(c.criterion, c.a, c.b);
  c.eps0 = problem.total(x0);
  c.checkpoint_stride = 1;
  const std::int64_t k_eps =
      predict_total_cost(contract, 1.0, 1.0, c.beta0, c.b, c.r, c.eps0, 1e-6);
  c.total_inner_iterations = 8 * k_eps;
  const auto out = restart_grid(problem, contract, x0, c);

  std::vector<double> costs;
  for (int e = 1; e <= 6; ++e) {
    const std::int64_t hit = first_below(out.trace, std::pow(10.0, -e));
    if (hit < 0) {
      v.require(false, "eps 1e-" + std::to_string(e) + " not reached");
      return v;
    }
    costs.push_back(static_cast<double>(hit));
  }
  const double fitted = std::max(costs[0] / std::log(10.0), costs[1] / std::log(100.0));
  std::string ratios;
  for (int e = 3; e <= 6; ++e) {
    const double model = fitted * std::log(std::pow(10.0, e));
    const double ratio = costs[static_cast<std::size_t>(e - 1)] / model;
    ratios += (ratios.empty() ? "" : ",") + fmt(ratio);
    v.require(ratio <= 3.0, "eps 1e-" + std::to_string(e) + " cost/model " + fmt(ratio));
  }
  if (v.pass) v.detail = "C = " + fmt(fitted) + ", cost/model for 1e-3..1e-6: " + ratios;
  return v;
}

nlohmann::json load_fixture(const std::string& name) {
  std::ifstream in(std::string(RESTARTKIT_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(in);
}

ExperimentConfig qcbp_config(const nlohmann::json& fx, Scheme scheme) {
  ExperimentConfig c;
  c.experiment = tools::Experiment::kQcbpGaussian;
  c.scheme = scheme;
  c.seed = fx["seed"].get<std::uint64_t>();
  c.n = fx["n"].get<Index>();
  c.m = fx["m"].get<Index>();
  c.s = fx["s"].get<Index>();
  c.noise = fx["noise"].get<double>();
  c.t = fx["budget"].get<std::int64_t>();
  c.validate();
  return c;
}

double final_reconstruction(const ExperimentConfig& c) {
  const auto r = tools::run_experiment(c);
  return r.summary.reconstruction_error.value_or(std::numeric_limits<double>::infinity());
}

// 6. QCBP with Gaussian measurements, thresholds from the calibration fixture.
Verdict qcbp_behavior() {
  Verdict v;
  const auto fx = load_fixture("qcbp_gaussian_calibration.json");
  const double noise = fx["noise"].get<double>();
  const double plateau_cap = fx["plateau_factor"].get<double>() * noise;
  const double same_plateau = fx["same_plateau_factor"].get<double>();
  const double baseline_gap = fx["baseline_gap_factor"].get<double>();

  ExperimentConfig fixed = qcbp_config(fx, Scheme::kFixed);
  fixed.alpha = std::sqrt(static_cast<double>(*fixed.m));
  fixed.beta = 1.0;
  const double e_fixed = final_reconstruction(fixed);
  v.require(e_fixed <= plateau_cap, "(a) fixed error " + fmt(e_fixed));

  std::string grid;
  for (Scheme s : {Scheme::kGridAlpha, Scheme::kGridBeta, Scheme::kGridBoth}) {
    const double e = final_reconstruction(qcbp_config(fx, s));
    grid += (grid.empty() ? "" : ",") + fmt(e);
    v.require(e <= plateau_cap && e <= same_plateau * e_fixed && e_fixed <= same_plateau * e,
              std::string("(b) ") + std::string(tools::to_string(s)) + " error " + fmt(e));
  }

  const double e_none = final_reconstruction(qcbp_config(fx, Scheme::kNone));
  v.require(e_none >= baseline_gap * e_fixed, "(c) baseline error " + fmt(e_none));
  if (v.pass) {
    v.detail = "fixed " + fmt(e_fixed) + ", grid " + grid + ", no restart " + fmt(e_none);
  }
  return v;
}

// 7. The plateau tracks the noise level.
Verdict noise_plateau() {
  Verdict v;
  const auto fx = load_fixture("qcbp_gaussian_calibration.json");
  std::string errors;
  for (double noise : {1e-2, 1e-4, 1e-6}) {
    ExperimentConfig c = qcbp_config(fx, Scheme::kGridAlpha);
    c.noise = noise;
    const double e = final_reconstruction(c);
    errors += (errors.empty() ? "" : ",") + fmt(e / noise);
    v.require(e <= 10.0 * noise && e >= 0.1 * noise,
              "noise " + fmt(noise) + " plateau " + fmt(e));
  }
  if (v.pass) v.detail = "error/noise = " + errors;
  return v;
}

// 8. Total variation reconstruction with restarted and fixed-mu NESTA.
Verdict tv_reconstruction() {
  Verdict v;
  ExperimentConfig c;
  c.experiment = tools::Experiment::kTvFourier;
  c.scheme = Scheme::kGridAlpha;
  c.side = 64;
  c.mask = MaskKind::kPowerDensity;
  c.rate = 0.125;
  c.noise = 1e-5;
  c.t = 10000;
  c.seed = 1;
  c.validate();
  const double restarted = final_reconstruction(c);
  v.require(restarted < 1e3 * *c.noise, "restarted error " + fmt(restarted));
  std::string baselines;
  for (double factor : {0.1, 1.0, 10.0}) {
    ExperimentConfig b = c;
    b.scheme = Scheme::kNone;
    b.mu = factor * *c.noise;
    const double e = final_reconstruction(b);
    baselines += (baselines.empty() ? "" : ",") + fmt(e);
    v.require(restarted < e, "mu = " + fmt(*b.mu) + " baseline " + fmt(e) +
                                 " not beaten by " + fmt(restarted));
  }
  if (v.pass) v.detail = "restarted " + fmt(restarted) + ", fixed mu " + baselines;
  return v;
}

// 9. SR-LASSO: iterations to a relative objective error of 1e-6.
Verdict srlasso_speedup() {
  Verdict v;
  ExperimentConfig c;
  c.experiment = tools::Experiment::kSrLasso;
  c.scheme = Scheme::kGridBoth;
  c.lambda = 2.0;
  c.seed = 1;
  c.t = 200000;
  c.validate();
  const auto ref = tools::run_oracle(c, 200000);
  const double target = ref.value * (1.0 + 1e-6);

  c.t = 20000;
  c.reference_optimum = ref.value;
  const auto restarted = tools::run_experiment(c);
  const std::int64_t hit = first_below(restarted.outcome.trace, target);
  if (hit < 0) {
    v.require(false, "restarted run did not reach 1e-6 within " + std::to_string(c.t));
    return v;
  }
  ExperimentConfig b = c;
  b.scheme = Scheme::kNone;
  b.t = 4 * hit;
  const auto baseline = tools::run_experiment(b);
  const std::int64_t base_hit = first_below(baseline.outcome.trace, target);
  v.require(base_hit < 0 || base_hit >= 4 * hit,
            "baseline reached 1e-6 at " + std::to_string(base_hit) + " vs restarted " +
                std::to_string(hit));
  if (v.pass) {
    v.detail = "f_hat = " + fmt(ref.value) + " (+/- " + fmt(ref.uncertainty) +
               "), restarted " + std::to_string(hit) + ", no restart " +
               (base_hit < 0 ? "> " + std::to_string(b.t) : std::to_string(base_hit));
  }
  return v;
}

// 10. Adjoint identities and prox optimality.
Verdict oracle_suite() {
  Verdict v;
  TestRng rng(10);
  std::vector<std::pair<std::string, LinearOperatorPtr>> ops;
  Eigen::MatrixXcd dense(9, 6);
  for (Index j = 0; j < 6; ++j) {
    for (Index i = 0; i < 9; ++i) dense(i, j) = Complex(rng.normal(), rng.normal());
  }
  ops.emplace_back("dense", std::make_shared<DenseOperator>(dense));
  ops.emplace_back("identity", std::make_shared<IdentityOperator>(7));
  ops.emplace_back("fourier-1d",
                   make_fourier_operator(128, sample_mask(128, 60, MaskKind::kBernoulliUniform, 1)));
  ops.emplace_back("fourier-1d-odd",
                   make_fourier_operator(90, sample_mask(90, 30, MaskKind::kBernoulliUniform, 2)));
  for (MaskKind kind : {MaskKind::kRadial, MaskKind::kPowerDensity}) {
    ops.emplace_back(std::string("fourier-2d-") + std::string(to_string(kind)),
                     make_fourier_operator_2d(32, sample_mask(1024, 128, kind, 3)));
  }
  ops.emplace_back("tv-gradient", std::make_shared<TvGradientOperator>(16));
  double worst_adjoint = 0.0;
  for (const auto& [name, op] : ops) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = rng.complex_vector(op->in_dim());
      const Vec y = rng.complex_vector(op->out_dim());
      const double err = std::abs(op->apply(x).dot(y) - x.dot(op->adjoint(y))) /
                         std::max(1.0, x.norm() * y.norm());
      worst_adjoint = std::max(worst_adjoint, err);
      if (err > 1e-10) {
        v.require(false, name + " adjoint mismatch " + fmt(err));
        break;
      }
    }
  }

  // prox_t(x) = argmin_z t g(z) + 1/2 |z - x|^2: no random perturbation of
  // the returned point may lower the objective.
  struct ProxCase {
    std::string name;
    std::function<double(const Vec&)> g;  // +inf outside the domain
    std::function<Vec(const Vec&, double)> prox;
    Index dim;
  };
  const Vec center = rng.complex_vector(5);
  const auto fourier = make_fourier_operator(64, sample_mask(64, 24, MaskKind::kBernoulliUniform, 4));
  const Vec fy = rng.complex_vector(fourier->out_dim());
  const auto sr = srlasso_problem(gen_synthetic_srlasso(12, 8, 1.0, 5));
  const auto inf = std::numeric_limits<double>::infinity();
  std::vector<ProxCase> cases = {
      {"l1", [](const Vec& z) { return l1_norm(z); }, prox_l1, 6},
      {"l2", [](const Vec& z) { return z.norm(); }, prox_l2, 6},
      {"ball",
       [&](const Vec& z) { return (z - center).norm() <= 1.5 * (1.0 + 1e-12) ? 0.0 : inf; },
       [&](const Vec& x, double) { return project_l2_ball(x, center, 1.5); }, 5},
      {"fourier-constraint",
       [&](const Vec& z) {
         return (fourier->apply(z) - fy).norm() <= 0.5 * (1.0 + 1e-10) ? 0.0 : inf;
       },
       [&](const Vec& x, double) { return nesta_q_projection(x, *fourier, fy, 0.5); }, 64},
      {"srlasso-dual",
       [&](const Vec& w) { return sr.solver->h_conjugate_value(w); },
       [&](const Vec& w, double s) { return sr.solver->h_conjugate_prox(w, s); }, 12},
  };
  double worst_prox = 0.0;
  for (const auto& pc : cases) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = rng.complex_vector(pc.dim) * 2.0;
      const double t = rng.uniform(0.05, 2.0);
      const Vec z = pc.prox(x, t);
      const double base = t * pc.g(z) + 0.5 * (z - x).squaredNorm();
      if (!std::isfinite(base)) {
        v.require(false, pc.name + " returned a point outside the domain");
        break;
      }
      for (int probe = 0; probe < 20; ++probe) {
        const Vec w = z + rng.complex_vector(pc.dim) * log_uniform(rng, 1e-6, 1e-1);
        const double val = t * pc.g(w) + 0.5 * (w - x).squaredNorm();
        const double excess = (base - val) / std::max(1.0, std::abs(base));
        worst_prox = std::max(worst_prox, excess);
      }
    }
    if (worst_prox > 1e-8) {
      v.require(false, pc.name + " prox beaten by " + fmt(worst_prox));
      break;
    }
  }
  if (v.pass) {
    v.detail = std::to_string(ops.size()) + " operators (worst " + fmt(worst_adjoint) + "), " +
               std::to_string(cases.size()) + " prox maps (worst " + fmt(worst_prox) + ")";
  }
  return v;
}

struct Criterion {
  std::function<Verdict()> run;
  double seconds;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {nesterov_envelope, 1.0},     {solver_contracts, 60.0},  {known_constants, 5.0},
      {schedule_combinatorics, 5.0}, {logarithmic_scaling, 60.0}, {qcbp_behavior, 120.0},
      {noise_plateau, 300.0},       {tv_reconstruction, 300.0}, {srlasso_speedup, 120.0},
      {oracle_suite, 10.0},
  };
  return list;
}

bool run_criterion(int index) {
  const auto& c = criteria()[static_cast<std::size_t>(index - 1)];
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = c.run();
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(elapsed <= c.seconds,
            "took " + fmt(elapsed) + " s, limit " + fmt(c.seconds) + " s");
  std::printf("criterion %d: %s (%s; %.2f s)\n", index, v.pass ? "PASS" : "FAIL",
              v.detail.c_str(), elapsed);
  std::fflush(stdout);
  return v.pass;
}

}  // namespace
}  // namespace restartkit

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--criterion" && a + 1 < argc) {
      selected.push_back(std::atoi(argv[++a]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty()) {
    for (int i = 1; i <= 10; ++i) selected.push_back(i);
  }
  bool ok = true;
  for (int index : selected) {
    if (index < 1 || index > 10) {
      std::fprintf(stderr, "criterion must be in 1..10\n");
      return 2;
    }
    ok = restartkit::run_criterion(index) && ok;
  }
  return ok ? 0 : 1;
}
