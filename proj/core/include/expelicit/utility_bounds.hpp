// Copyright 2026 The Expelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "expelicit/outcome_space.hpp"

namespace expelicit {

inline constexpr double kDefaultConvergenceWidth = 0.1;

struct UtilityInterval {
  Probability lo;
  Probability hi;

  Probability width() const { return {hi.ticks() - lo.ticks(), hi.divisions()}; }
  double midpoint() const { return 0.5 * (lo.value() + hi.value()); }
  bool contains(double u) const { return lo.value() <= u && u <= hi.value(); }

  friend bool operator==(const UtilityInterval&, const UtilityInterval&) = default;
};

// Response to the bound query "do you prefer SG(p) to o?".
enum class Answer { kPrefersGamble, kPrefersSure, kIndifferent };

std::string_view to_string(Answer answer);
Answer parse_answer(std::string_view text);

// How to resolve a response that contradicts an earlier one (lo > hi).
enum class ConflictPolicy { kTrustNew, kIgnoreNew, kCollapseToP };

std::string_view to_string(ConflictPolicy policy);
ConflictPolicy parse_conflict_policy(std::string_view text);

struct ConflictEvent {
  Outcome outcome;
  Probability p;
  Answer answer;
  UtilityInterval before;
  UtilityInterval after;
  ConflictPolicy policy;
};

struct BoundUpdate {
  UtilityInterval before;
  UtilityInterval after;
  std::optional<ConflictEvent> conflict;
};

// Point utilities per outcome, normalized so u(best) = 1 and u(worst) = 0.
class UtilityFunction {
 public:
  UtilityFunction(OutcomeSpace space, std::vector<double> values);

  const OutcomeSpace& space() const noexcept { return space_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double value(const Outcome& o) const { return values_[space_.index_of(o)]; }

  // Piecewise-linear in q between adjacent grid qualities, then in l between
  // adjacent grid lengths. `n` must be a grid level. Throws kOutOfHull.
  double interpolate(int n, int l, int q) const;

 private:
  OutcomeSpace space_;
  std::vector<double> values_;
};

inline double interpolate(const UtilityFunction& u, int n, int l, int q) {
  return u.interpolate(n, l, q);
}

// Feasible utility interval for every outcome. Anchors are pinned at [1,1]
// and [0,0]; interior outcomes start at [0,1].
class UtilityState {
 public:
  explicit UtilityState(OutcomeSpace space,
                        ConflictPolicy policy = ConflictPolicy::kTrustNew);

  const OutcomeSpace& space() const noexcept { return space_; }
  ConflictPolicy conflict_policy() const noexcept { return policy_; }

  const UtilityInterval& interval(const Outcome& o) const {
    return intervals_[space_.index_of(o)];
  }
  const std::vector<UtilityInterval>& intervals() const noexcept { return intervals_; }
  const std::vector<ConflictEvent>& conflicts() const noexcept { return conflicts_; }

  // prefers_gamble caps the interval at p, prefers_sure floors it at p and
  // indifferent pins it to [p, p]. Contradictions are resolved by the
  // conflict policy and recorded.
  BoundUpdate apply_response(const Outcome& o, Probability p, Answer answer);

  Probability width(const Outcome& o) const { return interval(o).width(); }
  bool converged(const Outcome& o, double threshold = kDefaultConvergenceWidth) const;
  bool all_converged(double threshold = kDefaultConvergenceWidth) const;

  UtilityFunction midpoint_utility() const;

 private:
  OutcomeSpace space_;
  ConflictPolicy policy_;
  std::vector<UtilityInterval> intervals_;
  std::vector<ConflictEvent> conflicts_;
};

inline UtilityState init(const OutcomeSpace& space,
                         ConflictPolicy policy = ConflictPolicy::kTrustNew) {
  return UtilityState(space, policy);
}

// True when a width (on the grid) is within `threshold`, tolerant of the
// decimal representation of the threshold.
bool width_within(Probability width, double threshold);

}  // namespace expelicit
