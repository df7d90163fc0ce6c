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

// Problem abstraction, the inner-solver contract and best-iterate selection.

#ifndef RESTARTKIT_CORE_HPP_
#define RESTARTKIT_CORE_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace restartkit {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kMachineEpsilon = 0x1p-52;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised for inconsistent configurations; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an inner solver cannot make progress; the CLI maps it to exit
// code 3.
class DivergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Re<a, b>, the real inner product on C^n.
double real_inner(const Vec& a, const Vec& b);

// Ceiling of a nonnegative iteration count. Values within a relative 1e-11 of
// an integer from above are rounded down so representation noise does not add
// an iteration; results saturate at kCountLimit.
inline constexpr std::int64_t kCountLimit = std::int64_t{1} << 62;
std::int64_t ceil_count(double x);

// Saturating addition for iteration counters.
std::int64_t add_counts(std::int64_t a, std::int64_t b);

struct ProblemInstance {
  Index dimension = 0;
  std::function<double(const Vec&)> objective;
  // g_Q; an empty callable means the problem has no feasibility gap.
  std::function<double(const Vec&)> feasibility_gap;
  // d; an empty callable means the Euclidean distance.
  std::function<double(const Vec&, const Vec&)> metric;
  std::optional<double> reference_optimum;
  // Ground truth used for reconstruction errors in traces.
  std::optional<Vec> reference_point;

  double gap(const Vec& x) const;
  double total(const Vec& x) const;
  double distance(const Vec& x, const Vec& y) const;
  void check_dimension(const Vec& x) const;
};

struct SharpnessEstimate {
  double alpha = 1.0;
  double beta = 1.0;
  double eta = 0.0;

  void validate() const;
};

// Dual variables carried between calls of a primal-dual solver. Empty means a
// cold start; solvers without dual state ignore it.
using WarmState = std::vector<Vec>;

// Called after each inner iteration with the iterate the solver would return
// if stopped there.
using InnerObserver = std::function<void(std::int64_t, const Vec&)>;

struct SolverStep {
  Vec point;
  WarmState state;
  std::int64_t iterations = 0;
};

struct CostExponents {
  double constant = 1.0;
  double d1 = 1.0;
  double d2 = 1.0;
};

struct SolverContract {
  using RunFn = std::function<SolverStep(double delta, double eps, const Vec& x0,
                                         const WarmState& warm,
                                         const InnerObserver& observer)>;
  using CostFn = std::function<std::int64_t(double delta, double eps)>;

  RunFn run;
  CostFn cost_bound;
  std::optional<CostExponents> cost_exponents;
};

struct TraceRecord {
  std::int64_t inner_iteration = 0;
  std::int64_t restart_index = 0;
  int grid_i = 0;
  int grid_j = 0;
  std::int64_t grid_k = 0;
  double objective_value = 0.0;
  std::optional<double> objective_error;
  double feasibility_gap = 0.0;
  std::optional<double> reconstruction_error;

  bool operator==(const TraceRecord&) const = default;
};

// Returns whichever of x, z has the smaller f + g_Q; ties keep x.
const Vec& best_of(const ProblemInstance& problem, const Vec& x, const Vec& z);

// Sum over q = 1..ceil(log(eps0/eps)/log(1/r)) of
// cost_bound(delta_q, r^q eps0), the total cost of the restarts at the grid
// point closest to the true sharpness constants.
std::int64_t predict_total_cost(const SolverContract& contract,
                                double alpha_star, double beta_star,
                                double beta0, double b, double r, double eps0,
                                double eps);

// Number of restarts needed to drive eps0 down to eps with factor r.
std::int64_t required_restarts(double eps0, double eps, double r);

// Worker cap from RESTARTKIT_THREADS, bounded by the hardware concurrency.
int worker_limit();

}  // namespace restartkit

#endif  // RESTARTKIT_CORE_HPP_
