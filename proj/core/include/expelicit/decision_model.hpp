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

#include <map>
#include <optional>
#include <vector>

#include "expelicit/task_domain.hpp"
#include "expelicit/utility_bounds.hpp"

namespace expelicit {

struct GoalLibrary {
  std::vector<HighlightGoal> goals;
  std::vector<double> prior;

  // Uniform prior over `goals`.
  static GoalLibrary uniform(std::vector<HighlightGoal> goals);
  // Throws kInvalidConfig unless nonempty with a prior summing to 1.
  void validate() const;
};

class GoalBelief {
 public:
  explicit GoalBelief(const GoalLibrary& library);
  GoalBelief(std::vector<HighlightGoal> goals, std::vector<double> posterior);

  const std::vector<HighlightGoal>& goals() const noexcept { return goals_; }
  const std::vector<double>& posterior() const noexcept { return posterior_; }
  std::size_t size() const noexcept { return goals_.size(); }

 private:
  std::vector<HighlightGoal> goals_;
  std::vector<double> posterior_;
};

// The user set `feature` to `value`.
struct EventObservation {
  Feature feature = Feature::kBold;
  int value = 0;
};

// Bayes update with likelihood (1 - noise) when the goal's target has the
// observed value and `noise` otherwise. Throws kDegenerateBelief when every
// likelihood vanishes.
GoalBelief update_belief(const GoalBelief& belief, const EventObservation& event,
                         double noise);

// Utility of showing no toolbar, per neediness level.
struct NoSuggestionUtility {
  std::map<int, double> by_level;

  // Midpoint estimate of the shortest, lowest-quality toolbar at each level.
  static NoSuggestionUtility from_utility(const UtilityFunction& u);
  double at(int neediness) const;
};

// Sum over goals of belief * u(n, L(t), Q(t|g)) with off-grid qualities and
// lengths interpolated; nullopt toolbar means no suggestion.
double expected_utility(const std::optional<Toolbar>& toolbar, const GoalBelief& belief,
                        const UtilityFunction& u, int neediness,
                        const NoSuggestionUtility& none);

struct Decision {
  // Index into the candidate list; nullopt for no suggestion.
  std::optional<std::size_t> candidate;
  double expected_utility = 0.0;
  std::vector<double> candidate_utilities;
  double no_suggestion_utility = 0.0;
};

// Relative tolerance under which two expected utilities count as tied.
inline constexpr double kDecisionTieTolerance = 1e-9;

// Expected-utility maximizing action among the candidates and no
// suggestion. Ties favour no suggestion, then the shorter toolbar, then the
// lexicographically smaller icon list.
Decision choose_action(const std::vector<Toolbar>& candidates, const GoalBelief& belief,
                       const UtilityFunction& u, int neediness,
                       const NoSuggestionUtility& none);

}  // namespace expelicit
