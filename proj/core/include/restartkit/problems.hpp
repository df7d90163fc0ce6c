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

// Experiment builders: l1 recovery under a noise constraint (QCBP), total
// variation reconstruction from Fourier samples, and the square-root LASSO.

#ifndef RESTARTKIT_PROBLEMS_HPP_
#define RESTARTKIT_PROBLEMS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "restartkit/core.hpp"
#include "restartkit/linops.hpp"
#include "restartkit/restart.hpp"
#include "restartkit/solvers.hpp"

namespace restartkit {

// min |z|_1 subject to |A z - y| <= noise.
struct QcbpInstance {
  LinearOperatorPtr A;
  Vec y;
  double noise = 0.0;
  std::optional<Vec> ground_truth;
  Index sparsity = 0;
  double kappa = 1.0;
};

// Gaussian A with variance 1/m, s-sparse standard normal x, noise uniform on
// the sphere of radius `noise`.
QcbpInstance gen_gaussian_qcbp(Index n = 128, Index m = 60, Index s = 10,
                               double noise = 1e-6, std::uint64_t seed = 1);

// A = m^{-1/2} P_Omega F with a Bernoulli mask of expected size m.
QcbpInstance gen_fourier_qcbp(Index n = 128, Index m = 60, Index s = 15,
                              double noise = 1e-6, std::uint64_t seed = 1);

struct PdSetup {
  ProblemInstance problem;
  std::shared_ptr<PrimalDualProblem> solver;
  Vec initial_point;
  double alpha0 = 1.0;
  double beta0 = 1.0;
};

struct NestaSetup {
  ProblemInstance problem;
  SmoothableProblem solver;
  Vec initial_point;  // feasible
  double alpha0 = 1.0;
  double beta0 = 1.0;
};

// Constrained primal-dual form: g = |.|_1, C = ball(y, noise), kappa = sqrt(m).
PdSetup qcbp_problem(const QcbpInstance& instance);

// Smoothed form over the feasible set; needs A A* = nu I.
NestaSetup qcbp_nesta_problem(const QcbpInstance& instance);

struct TvInstance {
  Index side = 64;
  std::shared_ptr<const FourierOperator> A;
  std::shared_ptr<const TvGradientOperator> V;
  Vec y;
  double noise = 1e-5;
  Vec ground_truth;
};

TvInstance gen_tv_instance(Index side = 64, MaskKind kind = MaskKind::kPowerDensity,
                           double rate = 0.125, double noise = 1e-5,
                           std::uint64_t seed = 1, const MaskOptions& options = {});

// f(z) = |V z|_1 smoothed with u = |V|^2 = 8 and v = side^2.
NestaSetup tv_problem(const TvInstance& instance);

// Piecewise-constant test image with values in [0, 1]: nested rectangles and
// an ellipse, row-major.
Vec gen_phantom(Index side);

// Portable graymap (P2) of the real part clamped to [0, 1].
void write_pgm(std::ostream& out, const Vec& image, Index side);

// min |A z - y|_2 + lambda |z|_1 where A carries a trailing column of ones.
struct SrLassoInstance {
  Eigen::MatrixXcd A;
  Vec y;
  double lambda = 2.0;
  std::optional<double> reference_optimum;
  std::optional<Vec> planted;
};

SrLassoInstance make_srlasso(const Eigen::MatrixXd& features,
                             const Eigen::VectorXd& labels, double lambda);

// Gaussian features with planted sparse weights; used when no dataset file
// is available.
SrLassoInstance gen_synthetic_srlasso(Index m = 50, Index n = 100,
                                      double lambda = 2.0, std::uint64_t seed = 1);

PdSetup srlasso_problem(const SrLassoInstance& instance);

// Entries with magnitude above threshold.
Index count_nonzeros(const Vec& x, double threshold = 1e-5);

enum class TabularFormat { kCsv, kSvmlight };

TabularFormat parse_tabular_format(const std::string& name);

struct TabularData {
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;
};

// CSV rows hold features followed by the label, separated by ',' or ';', with
// an optional header line. svmlight rows read `label idx:val ...` with 1-based
// indices. Declaring "wine", "cc" or "leu" checks the known shape.
TabularData load_tabular_dataset(const std::string& path, TabularFormat format,
                                 const std::string& dataset_name = "");

struct ReferenceOptimum {
  double value = 0.0;
  // Size of the last improvement between restart plateaus.
  double uncertainty = 0.0;
  std::int64_t inner_iterations = 0;
};

// Long grid-restarted run; value is the smallest f + g_Q observed.
ReferenceOptimum reference_optimum(const ProblemInstance& problem,
                                   const SolverContract& contract, const Vec& x0,
                                   std::int64_t budget, RestartConfig config);

}  // namespace restartkit

#endif  // RESTARTKIT_PROBLEMS_HPP_
