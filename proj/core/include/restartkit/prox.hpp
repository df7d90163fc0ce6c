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

// Proximal maps, projections and the Huber smoothing of the l1 norm.

#ifndef RESTARTKIT_PROX_HPP_
#define RESTARTKIT_PROX_HPP_

#include <optional>

#include <Eigen/Core>

#include "restartkit/core.hpp"
#include "restartkit/linops.hpp"

namespace restartkit {

// Complex soft-thresholding: argmin_z t |z|_1 + 1/2 |z - x|^2.
Vec prox_l1(const Vec& x, double threshold);

// Block soft-thresholding: argmin_z t |z|_2 + 1/2 |z - x|^2.
Vec prox_l2(const Vec& x, double threshold);

Vec project_l2_ball(const Vec& y, const Vec& center, double radius);

// Projection onto {w : |A w - y| <= noise} for A A* = nu I.
Vec nesta_q_projection(const Vec& z, const LinearOperator& A, const Vec& y,
                       double noise);

// Huber function |w|_mu: |w|^2/(2 mu) if |w| <= mu, else |w| - mu/2.
double huber(Complex w, double mu);
Complex huber_gradient(Complex w, double mu);

// sum_i weight_i |w_i|_mu, a smooth lower bound on the weighted l1 norm with
// 0 <= |w|_1 - |w|_{1,mu} <= mu * (sum of weights) / 2.
struct SmoothedL1 {
  double mu = 1.0;
  std::optional<Eigen::VectorXd> weights;

  double value(const Vec& w) const;
  Vec gradient(const Vec& w) const;
};

double l1_norm(const Vec& x);

}  // namespace restartkit

#endif  // RESTARTKIT_PROX_HPP_
