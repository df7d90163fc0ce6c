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

#include "restartkit/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "restartkit/core.hpp"

namespace restartkit {
namespace {

bool uses_i(ScheduleMode mode) {
  return mode == ScheduleMode::kBothUnknown || mode == ScheduleMode::kBetaKnown;
}

bool uses_j(ScheduleMode mode) {
  return mode == ScheduleMode::kBothUnknown || mode == ScheduleMode::kAlphaKnown;
}

bool is_integer(double c) { return c == std::floor(c) && c < 64.0; }

// y^c for integer c, or nullopt once it exceeds limit.
std::optional<std::int64_t> bounded_power(std::int64_t y, int c,
                                          std::int64_t limit) {
  std::int64_t acc = 1;
  for (int e = 0; e < c; ++e) {
    if (acc > limit / y) return std::nullopt;
    acc *= y;
  }
  return acc <= limit ? std::optional<std::int64_t>(acc) : std::nullopt;
}

bool key_less(const GridPoint& a, const GridPoint& b) {
  const int aa = std::abs(a.i);
  const int ab = std::abs(b.i);
  if (aa != ab) return aa < ab;
  if (a.i != b.i) return a.i < b.i;
  if (a.j != b.j) return a.j < b.j;
  return a.k < b.k;
}

}  // namespace

std::string_view to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::kBothUnknown:
      return "both_unknown";
    case ScheduleMode::kAlphaKnown:
      return "alpha_known";
    case ScheduleMode::kBetaKnown:
      return "beta_known";
    case ScheduleMode::kBothKnown:
      return "both_known";
    case ScheduleMode::kRangesKnown:
      return "ranges_known";
  }
  return "unknown";
}

ScheduleMode parse_schedule_mode(std::string_view name) {
  for (ScheduleMode mode :
       {ScheduleMode::kBothUnknown, ScheduleMode::kAlphaKnown,
        ScheduleMode::kBetaKnown, ScheduleMode::kBothKnown,
        ScheduleMode::kRangesKnown}) {
    if (to_string(mode) == name) return mode;
  }
  throw InvalidArgument("unknown schedule mode '" + std::string(name) + "'");
}

void ScheduleCriterion::validate() const {
  if (!(c1 > 1.0) || !(c2 > 1.0)) {
    throw InvalidArgument("schedule exponents c1, c2 must exceed 1");
  }
  if (clamp_i < 0 || clamp_j < 0) {
    throw InvalidArgument("schedule clamps must be nonnegative");
  }
  if (mode == ScheduleMode::kRangesKnown) {
    if (!ranges) throw InvalidArgument("ranges_known mode needs index ranges");
    if (ranges->i_min > ranges->i_max || ranges->j_min < 0 ||
        ranges->j_min > ranges->j_max) {
      throw InvalidArgument("index ranges need i_min <= i_max, 0 <= j_min <= j_max");
    }
  }
}

bool ScheduleCriterion::contains(const GridPoint& p) const {
  if (p.k < 1 || p.j < 0) return false;
  if (std::abs(p.i) > clamp_i || p.j > clamp_j) return false;
  switch (mode) {
    case ScheduleMode::kBothUnknown:
      return true;
    case ScheduleMode::kAlphaKnown:
      return p.i == 0;
    case ScheduleMode::kBetaKnown:
      return p.j == 0;
    case ScheduleMode::kBothKnown:
      return p.i == 0 && p.j == 0;
    case ScheduleMode::kRangesKnown:
      return ranges && p.i >= ranges->i_min && p.i <= ranges->i_max &&
             p.j >= ranges->j_min && p.j <= ranges->j_max;
  }
  return false;
}

bool ScheduleCriterion::integer_classes() const {
  if (uses_i(mode) && !is_integer(c1)) return false;
  if (uses_j(mode) && !is_integer(c2)) return false;
  return true;
}

int default_clamp(double base) {
  if (!(base > 1.0)) throw InvalidArgument("grid base must exceed 1");
  return static_cast<int>(std::floor(std::log(1.0 / kMachineEpsilon) / std::log(base)));
}

double h_value(const ScheduleCriterion& criterion, const GridPoint& p) {
  if (!criterion.contains(p)) {
    throw InvalidArgument("grid point (" + std::to_string(p.i) + "," +
                          std::to_string(p.j) + "," + std::to_string(p.k) +
                          ") is outside the search set of mode " +
                          std::string(to_string(criterion.mode)));
  }
  const double k = static_cast<double>(p.k);
  const double wi = std::pow(std::abs(p.i) + 1.0, criterion.c1);
  const double wj = std::pow(p.j + 1.0, criterion.c2);
  switch (criterion.mode) {
    case ScheduleMode::kBothUnknown:
      return wi * wj * k;
    case ScheduleMode::kAlphaKnown:
      return wj * k;
    case ScheduleMode::kBetaKnown:
      return wi * k;
    case ScheduleMode::kBothKnown:
    case ScheduleMode::kRangesKnown:
      return k;
  }
  return k;
}

std::vector<GridPoint> class_members(const ScheduleCriterion& criterion,
                                     std::int64_t m) {
  if (m < 1) throw InvalidArgument("class index must be positive");
  if (!criterion.integer_classes()) {
    throw InvalidArgument("class_members needs integer exponents");
  }
  std::vector<GridPoint> out;
  if (criterion.mode == ScheduleMode::kRangesKnown) {
    const IndexRanges& r = *criterion.ranges;
    for (int i = r.i_min; i <= r.i_max; ++i) {
      for (int j = r.j_min; j <= r.j_max; ++j) {
        GridPoint p{i, j, m};
        if (criterion.contains(p)) out.push_back(p);
      }
    }
    std::sort(out.begin(), out.end(), key_less);
    return out;
  }
  const int c1 = static_cast<int>(criterion.c1);
  const int c2 = static_cast<int>(criterion.c2);
  const std::int64_t y1_max =
      uses_i(criterion.mode) ? std::int64_t{criterion.clamp_i} + 1 : 1;
  const std::int64_t y2_max =
      uses_j(criterion.mode) ? std::int64_t{criterion.clamp_j} + 1 : 1;
  // Solve m = y1^c1 * y2^c2 * y3; y3 is fixed by divisibility.
  for (std::int64_t y1 = 1; y1 <= y1_max; ++y1) {
    const auto p1 = uses_i(criterion.mode) ? bounded_power(y1, c1, m)
                                           : std::optional<std::int64_t>(1);
    if (!p1) break;
    for (std::int64_t y2 = 1; y2 <= y2_max; ++y2) {
      const auto p2 = uses_j(criterion.mode) ? bounded_power(y2, c2, m / *p1)
                                             : std::optional<std::int64_t>(1);
      if (!p2) break;
      const std::int64_t weight = *p1 * *p2;
      if (m % weight != 0) continue;
      const std::int64_t y3 = m / weight;
      const int j = static_cast<int>(y2 - 1);
      const int u = static_cast<int>(y1 - 1);
      out.push_back({u, j, y3});
      if (u > 0) out.push_back({-u, j, y3});
    }
  }
  std::erase_if(out, [&](const GridPoint& p) { return !criterion.contains(p); });
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::int64_t sublevel_count(const ScheduleCriterion& criterion, double tau) {
  criterion.validate();
  if (!(tau >= 1.0)) return 0;
  if (criterion.mode == ScheduleMode::kRangesKnown) {
    std::int64_t pairs = 0;
    const IndexRanges& r = *criterion.ranges;
    for (int i = r.i_min; i <= r.i_max; ++i) {
      for (int j = r.j_min; j <= r.j_max; ++j) {
        if (criterion.contains({i, j, 1})) ++pairs;
      }
    }
    return pairs * static_cast<std::int64_t>(std::floor(tau));
  }
  std::int64_t count = 0;
  for (int u = 0; u <= criterion.clamp_i; ++u) {
    if (u > 0 && !uses_i(criterion.mode)) break;
    const double wi = uses_i(criterion.mode) ? std::pow(u + 1.0, criterion.c1) : 1.0;
    if (wi > tau) break;
    for (int j = 0; j <= criterion.clamp_j; ++j) {
      if (j > 0 && !uses_j(criterion.mode)) break;
      const double wj = uses_j(criterion.mode) ? std::pow(j + 1.0, criterion.c2) : 1.0;
      if (wi * wj > tau) break;
      const auto ks = static_cast<std::int64_t>(std::floor(tau / (wi * wj)));
      count += (u > 0 ? 2 : 1) * ks;
    }
  }
  return count;
}

AssignmentEnumerator::AssignmentEnumerator(ScheduleCriterion criterion,
                                           Strategy strategy)
    : criterion_(std::move(criterion)) {
  criterion_.validate();
  switch (strategy) {
    case Strategy::kAuto:
      use_classes_ = criterion_.integer_classes();
      break;
    case Strategy::kClasses:
      if (!criterion_.integer_classes()) {
        throw InvalidArgument("class enumeration needs integer exponents");
      }
      use_classes_ = true;
      break;
    case Strategy::kMerge:
      use_classes_ = false;
      break;
  }
  if (!use_classes_) {
    if (criterion_.mode == ScheduleMode::kRangesKnown) {
      const IndexRanges& r = *criterion_.ranges;
      for (int i = r.i_min; i <= r.i_max; ++i) {
        for (int j = r.j_min; j <= r.j_max; ++j) {
          if (criterion_.contains({i, j, 1})) {
            heap_.push({1.0, std::abs(i), i, j, 1});
          }
        }
      }
    } else {
      activate(0, 0);
    }
  }
  bool empty = criterion_.mode == ScheduleMode::kRangesKnown
                   ? (use_classes_ ? class_members(criterion_, 1).empty()
                                   : heap_.empty())
                   : false;
  if (empty) throw InvalidArgument("index ranges are empty after clamping");
}

GridPoint AssignmentEnumerator::next_point() {
  return use_classes_ ? next_from_classes() : next_from_merge();
}

GridPoint AssignmentEnumerator::next_from_classes() {
  while (buffer_.empty()) {
    ++class_index_;
    for (const GridPoint& p : class_members(criterion_, class_index_)) {
      buffer_.push_back(p);
    }
  }
  GridPoint p = buffer_.front();
  buffer_.pop_front();
  return p;
}

void AssignmentEnumerator::activate(int abs_i, int j) {
  if (abs_i > criterion_.clamp_i || j > criterion_.clamp_j) return;
  if (!activated_.insert({abs_i, j}).second) return;
  for (int sign : {-1, 1}) {
    if (abs_i == 0 && sign < 0) continue;
    GridPoint p{sign * abs_i, j, 1};
    if (!criterion_.contains(p)) continue;
    heap_.push({h_value(criterion_, p), abs_i, p.i, j, 1});
  }
}

GridPoint AssignmentEnumerator::next_from_merge() {
  const Entry top = heap_.top();
  heap_.pop();
  GridPoint p{top.i, top.j, top.k};
  GridPoint succ{p.i, p.j, p.k + 1};
  heap_.push({h_value(criterion_, succ), top.abs_i, p.i, p.j, succ.k});
  // A pair's k = 1 entry is outweighed by its neighbours' k = 1 entries, so
  // activating neighbours on first visit keeps the merge exact.
  if (p.k == 1 && criterion_.mode != ScheduleMode::kRangesKnown) {
    if (uses_i(criterion_.mode)) activate(top.abs_i + 1, p.j);
    if (uses_j(criterion_.mode)) activate(top.abs_i, p.j + 1);
  }
  return p;
}

}  // namespace restartkit
