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

// Search order over grid triples (i, j, k). The alpha estimate a^i alpha0 is
// indexed by i, the beta estimate b^j beta0 by j, and k caps the inner
// iterations spent on (i, j). Triples are visited in increasing order of a
// schedule weight h(i, j, k); within a tie the key (|i|, i, j, k) decides.

#ifndef RESTARTKIT_SCHEDULE_HPP_
#define RESTARTKIT_SCHEDULE_HPP_

#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace restartkit {

enum class ScheduleMode {
  kBothUnknown,  // h = (|i|+1)^c1 (j+1)^c2 k
  kAlphaKnown,   // i = 0, h = (j+1)^c2 k
  kBetaKnown,    // j = 0, h = (|i|+1)^c1 k
  kBothKnown,    // i = j = 0, h = k
  kRangesKnown,  // (i, j) in a box, h = k
};

std::string_view to_string(ScheduleMode mode);
// Accepts the snake_case names, e.g. "both_unknown".
ScheduleMode parse_schedule_mode(std::string_view name);

struct IndexRanges {
  int i_min = 0;
  int i_max = 0;
  int j_min = 0;
  int j_max = 0;
};

struct GridPoint {
  int i = 0;
  int j = 0;
  std::int64_t k = 1;

  bool operator==(const GridPoint&) const = default;
  auto operator<=>(const GridPoint&) const = default;
};

inline constexpr int kUnclamped = std::numeric_limits<int>::max();

struct ScheduleCriterion {
  ScheduleMode mode = ScheduleMode::kBothUnknown;
  double c1 = 2.0;
  double c2 = 2.0;
  std::optional<IndexRanges> ranges;
  int clamp_i = kUnclamped;
  int clamp_j = kUnclamped;

  void validate() const;
  bool contains(const GridPoint& p) const;
  // True when the exponents the mode uses are integers, so the equivalence
  // classes of h are indexed by positive integers.
  bool integer_classes() const;
};

// floor(log_base(1/eps_mach)): the default bound on |i| (base a) or j (base b).
int default_clamp(double base);

double h_value(const ScheduleCriterion& criterion, const GridPoint& p);

// All points of S with h = m in (|i|, i, j, k) order. Needs integer exponents.
std::vector<GridPoint> class_members(const ScheduleCriterion& criterion,
                                     std::int64_t m);

// |{p in S : h(p) <= tau}|.
std::int64_t sublevel_count(const ScheduleCriterion& criterion, double tau);

// Lazily emits the bijection phi : N -> S, one point per call.
class AssignmentEnumerator {
 public:
  enum class Strategy { kAuto, kClasses, kMerge };

  explicit AssignmentEnumerator(ScheduleCriterion criterion,
                                Strategy strategy = Strategy::kAuto);

  GridPoint next_point();
  const ScheduleCriterion& criterion() const { return criterion_; }
  // Current class m in class mode; zero in merge mode.
  std::int64_t class_index() const { return class_index_; }

 private:
  struct Entry {
    double h;
    int abs_i;
    int i;
    int j;
    std::int64_t k;
    bool operator>(const Entry& o) const {
      if (h != o.h) return h > o.h;
      if (abs_i != o.abs_i) return abs_i > o.abs_i;
      if (i != o.i) return i > o.i;
      if (j != o.j) return j > o.j;
      return k > o.k;
    }
  };

  GridPoint next_from_classes();
  GridPoint next_from_merge();
  void activate(int abs_i, int j);

  ScheduleCriterion criterion_;
  bool use_classes_;
  std::int64_t class_index_ = 0;
  std::deque<GridPoint> buffer_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::set<std::pair<int, int>> activated_;
};

}  // namespace restartkit

#endif  // RESTARTKIT_SCHEDULE_HPP_
