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

#include "restartkit/prox.hpp"

#include <cmath>

namespace restartkit {

Vec prox_l1(const Vec& x, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be nonnegative");
  Vec out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]);
    out[i] = mag > threshold ? x[i] * ((mag - threshold) / mag) : Complex(0.0);
  }
  return out;
}

Vec prox_l2(const Vec& x, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be nonnegative");
  const double norm = x.norm();
  if (norm <= threshold) return Vec::Zero(x.size());
  return x * ((norm - threshold) / norm);
}

Vec project_l2_ball(const Vec& y, const Vec& center, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgument("ball radius must be nonnegative");
  if (y.size() != center.size()) throw InvalidArgument("ball center has wrong size");
  const Vec diff = y - center;
  const double dist = diff.norm();
  if (dist <= radius) return y;
  return center + diff * (radius / dist);
}

Vec nesta_q_projection(const Vec& z, const LinearOperator& A, const Vec& y,
                       double noise) {
  const auto nu = A.row_orthonormal_constant();
  if (!nu) throw ConfigError("Q-projection needs an operator with A A* = nu I");
  const Vec residual = A.apply(z) - y;
  const double norm = residual.norm();
  if (norm <= noise) return z;
  return z - ((1.0 - noise / norm) / *nu) * A.adjoint(residual);
}

double huber(Complex w, double mu) {
  const double mag = std::abs(w);
  return mag <= mu ? mag * mag / (2.0 * mu) : mag - 0.5 * mu;
}

Complex huber_gradient(Complex w, double mu) {
  const double mag = std::abs(w);
  return mag <= mu ? w / mu : w / mag;
}

double SmoothedL1::value(const Vec& w) const {
  double s = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    const double h = huber(w[i], mu);
    s += weights ? (*weights)[i] * h : h;
  }
  return s;
}

Vec SmoothedL1::gradient(const Vec& w) const {
  Vec g(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    const Complex d = huber_gradient(w[i], mu);
    g[i] = weights ? (*weights)[i] * d : d;
  }
  return g;
}

double l1_norm(const Vec& x) { return x.cwiseAbs().sum(); }

}  // namespace restartkit
