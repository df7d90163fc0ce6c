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

#ifndef RESTARTKIT_RNG_HPP_
#define RESTARTKIT_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "restartkit/core.hpp"

namespace restartkit {

// Seeded generator whose variates do not depend on the standard library's
// distribution implementations, so a seed reproduces the same data everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller.
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

  Vec normal_vector(Index n);
  Vec complex_normal_vector(Index n);
  // k distinct indices from [0, n) in increasing order.
  std::vector<Index> sample_without_replacement(Index n, Index k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace restartkit

#endif  // RESTARTKIT_RNG_HPP_
