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

#include "restartkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace restartkit {

double real_inner(const Vec& a, const Vec& b) {
  return a.dot(b).real();
}

std::int64_t ceil_count(double x) {
  if (std::isnan(x)) throw InvalidArgument("iteration count is NaN");
  if (x <= 0.0) return 0;
  const double c = std::ceil(x * (1.0 - 1e-11));
  if (c >= static_cast<double>(kCountLimit)) return kCountLimit;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
}

std::int64_t add_counts(std::int64_t a, std::int64_t b) {
  if (a >= kCountLimit - b) return kCountLimit;
  return a + b;
}

double ProblemInstance::gap(const Vec& x) const {
  return feasibility_gap ? feasibility_gap(x) : 0.0;
}

double ProblemInstance::total(const Vec& x) const {
  return objective(x) + gap(x);
}

double ProblemInstance::distance(const Vec& x, const Vec& y) const {
  if (metric) return metric(x, y);
  return (x - y).norm();
}

void ProblemInstance::check_dimension(const Vec& x) const {
  if (x.size() != dimension) {
    throw InvalidArgument("point has " + std::to_string(x.size()) +
                          " entries, problem dimension is " +
                          std::to_string(dimension));
  }
}

void SharpnessEstimate::validate() const {
  if (!(alpha > 0.0)) throw InvalidArgument("sharpness alpha must be positive");
  if (!(beta >= 1.0)) throw InvalidArgument("sharpness beta must be >= 1");
  if (!(eta >= 0.0)) throw InvalidArgument("sharpness eta must be >= 0");
}

const Vec& best_of(const ProblemInstance& problem, const Vec& x, const Vec& z) {
  problem.check_dimension(x);
  problem.check_dimension(z);
  return problem.total(z) < problem.total(x) ? z : x;
}

std::int64_t required_restarts(double eps0, double eps, double r) {
  if (!(eps > 0.0) || !(eps0 > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("r must lie in (0, 1)");
  if (eps >= eps0) return 0;
  return ceil_count(std::log(eps0 / eps) / std::log(1.0 / r));
}

std::int64_t predict_total_cost(const SolverContract& contract,
                                double alpha_star, double beta_star,
                                double beta0, double b, double r, double eps0,
                                double eps) {
  if (!(eps < eps0)) throw InvalidArgument("predict_total_cost needs eps < eps0");
  if (!(alpha_star > 0.0) || !(beta_star >= 1.0) || !(beta0 >= 1.0) ||
      !(b > 1.0)) {
    throw InvalidArgument("invalid sharpness grid parameters");
  }
  const std::int64_t restarts = required_restarts(eps0, eps, r);
  const double large_exponent = std::min(b / beta_star, 1.0 / beta0);
  std::int64_t total = 0;
  for (std::int64_t q = 1; q <= restarts; ++q) {
    const double ratio =
        2.0 * std::pow(r, static_cast<double>(q - 1)) * eps0 / alpha_star;
    const double delta = std::pow(std::max(1.0, ratio), large_exponent) *
                         std::pow(std::min(1.0, ratio), 1.0 / beta_star);
    const double target = std::pow(r, static_cast<double>(q)) * eps0;
    total = add_counts(total, contract.cost_bound(delta, target));
  }
  return total;
}

int worker_limit() {
  const int hardware =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("RESTARTKIT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) {
      return static_cast<int>(std::min<long>(cap, hardware));
    }
  }
  return hardware;
}

}  // namespace restartkit
